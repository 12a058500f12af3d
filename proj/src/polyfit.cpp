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

#include "aeo/polyfit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "aeo/error.hpp"

namespace aeo {

FitReport polynomial_fit_R(const std::vector<std::pair<double, double>>& samples, int degree) {
  if (degree < 1) throw ArgumentError("polynomial_fit_R: degree must be at least 1");
  std::set<double> distinct;
  for (const auto& [x, y] : samples) {
    if (!std::isfinite(x) || !std::isfinite(y)) throw ArgumentError("polynomial_fit_R: samples must be finite");
    distinct.insert(x);
  }
  if (distinct.size() < static_cast<std::size_t>(degree) + 1)
    throw RankError("polynomial_fit_R: need at least " + std::to_string(degree + 1) + " distinct parameter values, got " +
                    std::to_string(distinct.size()));

  const auto n = static_cast<Eigen::Index>(samples.size());
  // Centre and scale the abscissae for conditioning, then map back.
  double lo = *distinct.begin();
  double hi = *distinct.rbegin();
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  Eigen::MatrixXd design(n, degree + 1);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = (samples[static_cast<std::size_t>(i)].first - mid) / half;
    double power = 1.0;
    for (int k = 0; k <= degree; ++k) {
      design(i, k) = power;
      power *= t;
    }
    y(i) = samples[static_cast<std::size_t>(i)].second;
  }
  const Eigen::VectorXd scaled = design.completeOrthogonalDecomposition().solve(y);

  FitReport report;
  report.degree = degree;
  report.samples = samples.size();
  // Expand sum_k a_k ((x - mid)/half)^k into powers of x.
  report.coefficients = Eigen::VectorXd::Zero(degree + 1);
  for (int k = 0; k <= degree; ++k) {
    // ((x - mid)/half)^k = half^-k sum_j C(k,j) x^j (-mid)^(k-j)
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      report.coefficients(j) += scaled(k) * binom * std::pow(-mid, k - j) / std::pow(half, k);
      binom = binom * (k - j) / (j + 1);
    }
  }

  const Eigen::VectorXd fitted = design * scaled;
  const double mean = y.mean();
  const double ss_tot = (y.array() - mean).square().sum();
  const double ss_res = (y - fitted).squaredNorm();
  const double scale = std::max(1.0, y.cwiseAbs().maxCoeff());
  if (!(ss_tot > 1e-24 * scale * scale * static_cast<double>(n))) {
    report.r = 0.0;
    return report;
  }
  const double r2 = 1.0 - ss_res / ss_tot;
  report.r = std::sqrt(std::clamp(r2, 0.0, 1.0));
  return report;
}

std::vector<FitReport> sensitivity_analysis(const TraceTable& trace) {
  std::vector<FitReport> reports;
  for (std::size_t p = 0; p < trace.coordinate_names.size(); ++p) {
    for (const char* response : {"length", "diameter"}) {
      std::vector<std::pair<double, double>> samples;
      for (const TraceRow& row : trace.rows) {
        const double x = row.point[static_cast<Eigen::Index>(p)];
        const double value = std::string(response) == "length" ? row.measurement.median_length
                                                               : row.measurement.median_diameter;
        samples.emplace_back(x, value);
      }
      FitReport report;
      try {
        report = polynomial_fit_R(samples, 2);
      } catch (const RankError&) {
        try {
          report = polynomial_fit_R(samples, 1);
        } catch (const RankError&) {
          // A single value explains nothing.
          report.degree = 0;
          report.samples = samples.size();
          report.r = 0.0;
        }
      }
      report.parameter = trace.coordinate_names[p];
      report.response = response;
      reports.push_back(std::move(report));
    }
  }
  return reports;
}

std::vector<std::pair<std::string, double>> rank_parameters(const std::vector<FitReport>& reports) {
  std::map<std::string, std::pair<double, int>> sums;
  std::vector<std::string> order;
  for (const FitReport& r : reports) {
    if (!sums.count(r.parameter)) order.push_back(r.parameter);
    sums[r.parameter].first += r.r;
    sums[r.parameter].second += 1;
  }
  std::vector<std::pair<std::string, double>> ranked;
  for (const std::string& name : order) ranked.emplace_back(name, sums[name].first / sums[name].second);
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return ranked;
}

}  // namespace aeo
