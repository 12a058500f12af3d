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

#include <string>
#include <utility>
#include <vector>

#include "aeo/campaign.hpp"

namespace aeo {

struct FitReport {
  std::string parameter;
  std::string response;  // "length" or "diameter"
  double r = 0.0;        // sqrt of the coefficient of determination, in [0, 1]
  Eigen::VectorXd coefficients;  // c0 + c1 x + c2 x^2 (c2 absent for a linear fit)
  int degree = 2;
  std::size_t samples = 0;
};

/// Least-squares polynomial of the given degree through (x, y) samples,
/// minimal-norm where the design is rank deficient. A constant response
/// explains nothing and reports R = 0. Throws RankError with fewer than
/// degree + 1 distinct abscissae.
FitReport polynomial_fit_R(const std::vector<std::pair<double, double>>& samples, int degree = 2);

/// R of each process parameter against measured length and diameter.
/// Parameters observed at only two values fall back to a straight line.
std::vector<FitReport> sensitivity_analysis(const TraceTable& trace);

/// Parameters ordered by mean R over the two responses, strongest first.
std::vector<std::pair<std::string, double>> rank_parameters(const std::vector<FitReport>& reports);

}  // namespace aeo
