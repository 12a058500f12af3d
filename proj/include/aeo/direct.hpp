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

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <vector>

namespace aeo {

using UnitObjective = std::function<double(const Eigen::VectorXd&)>;

struct DirectOptions {
  std::size_t eval_budget = 1000;
  // Balance parameter in the potential-optimality test.
  double epsilon = 1e-4;
  // Rectangles trisected this many times along every side are not divided further.
  int max_depth = 30;
};

struct DirectSample {
  Eigen::VectorXd point;  // in the unit box
  double value;
};

struct DirectResult {
  Eigen::VectorXd point;
  double value = 0.0;
  std::size_t evaluations = 0;
  std::vector<DirectSample> samples;  // every evaluation, in order
};

/// Maximizes a black-box objective over [0,1]^dim by dividing rectangles.
/// Fully deterministic; never exceeds the evaluation budget. Throws
/// NumericalError if the objective returns a non-finite value.
DirectResult direct_search(const UnitObjective& objective, std::size_t dim,
                           const DirectOptions& options = {});

inline std::pair<Eigen::VectorXd, double> direct_maximize(const UnitObjective& objective,
                                                          std::size_t dim, std::size_t eval_budget) {
  DirectOptions options;
  options.eval_budget = eval_budget;
  DirectResult r = direct_search(objective, dim, options);
  return {std::move(r.point), r.value};
}

}  // namespace aeo
