/*
 * Copyright 2026 The AEO Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <numbers>

namespace aeo {

template <typename Scalar>
Scalar normal_pdf(Scalar z) {
  using std::exp;
  return exp(Scalar(-0.5) * z * z) / std::sqrt(Scalar(2) * std::numbers::pi_v<Scalar>);
}

template <typename Scalar>
Scalar normal_cdf(Scalar z) {
  using std::erfc;
  return Scalar(0.5) * erfc(-z / std::numbers::sqrt2_v<Scalar>);
}

// Below this point erfc underflows; the asymptotic series takes over.
inline constexpr double kNormalTailCutoff = -30.0;

/// ln Phi(z), accurate deep into the lower tail.
template <typename Scalar>
Scalar log_normal_cdf(Scalar z) {
  using std::log;
  if (z > Scalar(kNormalTailCutoff)) return log(normal_cdf(z));
  const Scalar inv2 = Scalar(1) / (z * z);
  const Scalar series = Scalar(1) - inv2 + Scalar(3) * inv2 * inv2;
  return Scalar(-0.5) * z * z - Scalar(0.5) * log(Scalar(2) * std::numbers::pi_v<Scalar>) -
         log(-z) + log(series);
}

/// phi(z) / Phi(z), the derivative of ln Phi.
template <typename Scalar>
Scalar normal_hazard(Scalar z) {
  if (z > Scalar(kNormalTailCutoff)) return normal_pdf(z) / normal_cdf(z);
  const Scalar inv = Scalar(1) / z;
  return -z - inv + Scalar(2) * inv * inv * inv;
}

}  // namespace aeo
