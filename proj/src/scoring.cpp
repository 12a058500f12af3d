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

#include "aeo/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "aeo/error.hpp"

namespace aeo {

void Targets::validate() const {
  if (!(target_length > 0.0 && target_length < max_length))
    throw ArgumentError("targets: require 0 < target_length < max_length");
  if (!(target_diameter > 0.0 && target_diameter < max_diameter))
    throw ArgumentError("targets: require 0 < target_diameter < max_diameter");
  if (!std::isfinite(max_length) || !std::isfinite(max_diameter))
    throw ArgumentError("targets: bounds must be finite");
}

void Measurement::validate() const {
  if (!(median_length >= 0.0) || !std::isfinite(median_length))
    throw ArgumentError("measurement: median length must be finite and nonnegative");
  if (!(median_diameter >= 0.0) || !std::isfinite(median_diameter))
    throw ArgumentError("measurement: median diameter must be finite and nonnegative");
}

void Weights::validate() const {
  if (!(length >= 0.0 && diameter >= 0.0 && quality >= 0.0))
    throw ArgumentError("weights must be nonnegative");
  if (std::abs(length + diameter + quality - 1.0) > 1e-9) throw ArgumentError("weights must sum to 1");
}

namespace {

double capped_distance(double value, double target, double cap) {
  return std::abs(std::min(cap, value) - target) / (cap - target);
}

}  // namespace

double length_score(const Measurement& m, const Targets& t) {
  return capped_distance(m.median_length, t.target_length, t.max_length);
}

double diameter_score(const Measurement& m, const Targets& t) {
  return capped_distance(m.median_diameter, t.target_diameter, t.max_diameter);
}

double combined_utility(double f_length, double f_diameter, double f_quality, const Weights& w) {
  for (double c : {f_length, f_diameter, f_quality})
    if (!(c >= 0.0 && c <= 1.0)) throw ArgumentError("combined_utility: components must lie in [0, 1]");
  w.validate();
  const double y = w.length * f_length + w.diameter * f_diameter + w.quality * (1.0 - f_quality);
  return std::clamp(y, 0.0, 1.0);
}

std::vector<double> best_found_values(const std::vector<double>& utilities) {
  std::vector<double> out;
  out.reserve(utilities.size());
  for (double y : utilities) out.push_back(out.empty() ? y : std::min(out.back(), y));
  return out;
}

double length_deviation_pct(const Measurement& m, const Targets& t) {
  return 100.0 * std::abs(m.median_length - t.target_length) / t.target_length;
}

double diameter_deviation_pct(const Measurement& m, const Targets& t) {
  return 100.0 * std::abs(m.median_diameter - t.target_diameter) / t.target_diameter;
}

bool target_met(const Measurement& m, const Targets& t, double tolerance) {
  return std::abs(m.median_length - t.target_length) / t.target_length <= tolerance &&
         std::abs(m.median_diameter - t.target_diameter) / t.target_diameter <= tolerance;
}

}  // namespace aeo
