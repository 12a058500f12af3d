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

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "aeo/direct.hpp"
#include "aeo/gp.hpp"
#include "aeo/normal.hpp"
#include "aeo/space.hpp"

namespace aeo {

/// Expected improvement of a maximization objective whose posterior at a
/// point is N(mean, stddev^2), over the incumbent best_value.
template <typename Scalar>
Scalar expected_improvement(Scalar mean, Scalar stddev, Scalar best_value) {
  if (!(stddev > Scalar(0))) return Scalar(0);
  const Scalar gap = mean - best_value;
  const Scalar z = gap / stddev;
  const Scalar ei = gap * normal_cdf(z) + stddev * normal_pdf(z);
  return ei > Scalar(0) ? ei : Scalar(0);
}

/// EI for minimizing the modelled utility: the posterior is negated and the
/// incumbent is the best (lowest) utility found so far.
template <typename Scalar, typename Derived>
Scalar expected_improvement_for_min(const GPModel<Scalar>& model, const Eigen::MatrixBase<Derived>& x,
                                    Scalar best_utility) {
  const Posterior<Scalar> post = predict(model, x);
  return expected_improvement(-post.mean, post.stddev(), -best_utility);
}

using GridObjective = std::function<double(const DesignPoint&)>;

struct GridArgmax {
  DesignPoint point;
  double value = 0.0;
  std::size_t rank = 0;         // lexicographic rank of the winner
  std::size_t evaluations = 0;  // grid points scored
};

/// Scores every grid point, lowest lexicographic rank winning ties.
/// Points for which `skip` returns true are not considered unless every
/// point is skipped, in which case the result is empty.
std::optional<GridArgmax> exhaustive_argmax(const GridObjective& objective, const ParameterSpace& space,
                                            const std::function<bool(const DesignPoint&)>& skip = {});

struct AcquisitionResult {
  DesignPoint point;
  double acquisition_value = 0.0;
  std::size_t evaluations_used = 0;
  bool duplicate = false;  // the point repeats an already-observed setting
};

enum class AcquisitionMode { Auto, Exhaustive, Direct };

struct AcquisitionConfig {
  AcquisitionMode mode = AcquisitionMode::Auto;
  std::size_t direct_budget = 1000;
  // DIRECT candidates re-ranked after snapping when the best one repeats
  // an observed setting.
  std::size_t rerank_candidates = 10;

  friend bool operator==(const AcquisitionConfig&, const AcquisitionConfig&) = default;
};

/// Maximizes utility-minimizing EI over the space. `observed` holds the
/// settings already run; they are avoided when another candidate exists.
AcquisitionResult recommend_next(const GPModel<double>& model, const ParameterSpace& space,
                                 double best_utility, const AcquisitionConfig& config,
                                 const std::vector<DesignPoint>& observed = {});

}  // namespace aeo
