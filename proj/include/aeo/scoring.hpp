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

#include <vector>

namespace aeo {

/// Target median length/diameter (micrometres) and the bounds beyond which
/// fibers are useless. Bounds default to three times the target.
struct Targets {
  double target_length = 70.0;
  double target_diameter = 1.0;
  double max_length = 210.0;
  double max_diameter = 3.0;

  static Targets with_default_bounds(double length, double diameter) {
    return {length, diameter, 3.0 * length, 3.0 * diameter};
  }
  void validate() const;
  friend bool operator==(const Targets&, const Targets&) = default;
};

struct Measurement {
  double median_length = 0.0;
  double median_diameter = 0.0;

  void validate() const;
  friend bool operator==(const Measurement&, const Measurement&) = default;
};

struct Weights {
  double length = 1.0 / 3.0;
  double diameter = 1.0 / 3.0;
  double quality = 1.0 / 3.0;

  void validate() const;
  friend bool operator==(const Weights&, const Weights&) = default;
};

double length_score(const Measurement& m, const Targets& t);
double diameter_score(const Measurement& m, const Targets& t);

// 0 when every objective is met, 1 at worst. Quality enters as 1 - f_Q.
double combined_utility(double f_length, double f_diameter, double f_quality, const Weights& w = {});

std::vector<double> best_found_values(const std::vector<double>& utilities);

inline constexpr double kDefaultStopTolerance = 0.2;

bool target_met(const Measurement& m, const Targets& t, double tolerance = kDefaultStopTolerance);

// 100 |L - L_T| / L_T and the diameter counterpart.
double length_deviation_pct(const Measurement& m, const Targets& t);
double diameter_deviation_pct(const Measurement& m, const Targets& t);

}  // namespace aeo
