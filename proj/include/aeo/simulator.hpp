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
#include <vector>

#include "aeo/campaign.hpp"
#include "aeo/preference.hpp"
#include "aeo/random.hpp"
#include "aeo/scoring.hpp"
#include "aeo/serialization.hpp"
#include "aeo/space.hpp"

namespace aeo {

/// base * prod_i (1 + curvature_i (u_i - center_i)^2) over normalized u.
struct FactorResponse {
  double base = 1.0;
  Eigen::VectorXd center;
  Eigen::VectorXd curvature;

  double operator()(const Eigen::VectorXd& u) const;
};

/// exp(-sum_i weight_i (u_i - center_i)^2), in (0, 1].
struct QualityResponse {
  Eigen::VectorXd center;
  Eigen::VectorXd weight;

  double operator()(const Eigen::VectorXd& u) const;
};

/// Stand-in for the fiber rig: smooth length/diameter/quality surfaces over
/// the process grid plus relative Gaussian measurement noise.
struct SyntheticProcess {
  std::string name;
  ParameterSpace space = fiber_process_space();
  Targets targets;  // scenario the process was built for
  FactorResponse length;
  FactorResponse diameter;
  QualityResponse quality;
  double length_noise = 0.0;    // relative standard deviation
  double diameter_noise = 0.0;  // relative standard deviation
  double comparison_noise = 0.0;
  double tie_threshold = 0.0;

  void validate() const;
  Measurement noiseless(const DesignPoint& point) const;
  double quality_at(const DesignPoint& point) const;
};

/// Built-ins: "target1_achievable" (optimum planted on the grid) and
/// "target3_unachievable" (smallest diameter about twice the target).
SyntheticProcess builtin_process(const std::string& name);
std::vector<std::string> builtin_process_names();
SyntheticProcess process_from_json(const json& doc);
json process_to_json(const SyntheticProcess& process);

Measurement simulate_experiment(const SyntheticProcess& process, const DesignPoint& point, Rng& rng);

/// Judges `current` against `prior` from the latent quality plus noise.
ComparisonOutcome oracle_compare(const SyntheticProcess& process, const DesignPoint& current,
                                 const DesignPoint& prior, Rng& rng);

/// Uniform sampling of the grid without replacement, scored with the
/// campaign pipeline except that f_Q is the process quality itself.
TraceTable random_baseline_campaign(const SyntheticProcess& process, const Targets& targets, std::size_t iterations,
                                    Rng& rng, const Weights& weights = {});

}  // namespace aeo
