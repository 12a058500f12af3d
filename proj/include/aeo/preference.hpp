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
#include <vector>

#include "aeo/gp.hpp"
#include "aeo/random.hpp"

namespace aeo {

/// winner is preferred over loser; both are observation indices.
struct PreferencePair {
  std::size_t winner = 0;
  std::size_t loser = 0;
  friend bool operator==(const PreferencePair&, const PreferencePair&) = default;
};

// Multiset; a tie contributes one pair in each direction.
using PreferenceSet = std::vector<PreferencePair>;

enum class ComparisonOutcome { CurrentBetter, PriorBetter, DifficultToTell };

struct PrefConfig {
  double noise_sigma = 0.1;
  KernelConfig<double> kernel{0.2, 1.0};
  double jitter = 1e-6;
  double newton_tol = 1e-10;
  int newton_max_iter = 100;

  void validate() const;
  friend bool operator==(const PrefConfig&, const PrefConfig&) = default;
};

/// Number of earlier images the current one is compared with at observation
/// number t (1-based): floor(log2(t - 1)) + 1, or 0 for t = 1.
std::size_t comparison_count(std::size_t t);

/// Indices of earlier observations to compare observation t against, drawn
/// uniformly without replacement from [0, count_prior).
std::vector<std::size_t> schedule_comparisons(std::size_t t, std::size_t count_prior, Rng& rng);

void record_outcome(PreferenceSet& prefs, std::size_t current, std::size_t prior, ComparisonOutcome outcome);

struct LatentFit {
  Eigen::VectorXd latent;
  bool converged = false;
  int iterations = 0;
};

/// Negative log posterior S(f) = -sum ln Phi(z_m) + f' Sigma^-1 f / 2.
class PreferenceObjective {
 public:
  PreferenceObjective(const Eigen::MatrixXd& points, const PreferenceSet& prefs, const PrefConfig& config);

  std::size_t size() const { return static_cast<std::size_t>(sigma_.rows()); }
  const Eigen::MatrixXd& sigma() const { return sigma_; }

  double value(const Eigen::VectorXd& f) const;
  // Gradient of sum ln Phi(z_m); zero at the MAP estimate of f - Sigma beta.
  Eigen::VectorXd log_likelihood_gradient(const Eigen::VectorXd& f) const;
  // Negative Hessian of sum ln Phi(z_m); positive semidefinite.
  Eigen::MatrixXd neg_log_likelihood_hessian(const Eigen::VectorXd& f) const;

 private:
  double z(const PreferencePair& p, const Eigen::VectorXd& f) const;

  Eigen::MatrixXd sigma_;
  Eigen::LLT<Eigen::MatrixXd> sigma_llt_;
  PreferenceSet prefs_;
  double scale_;  // sqrt(2) * noise_sigma
};

/// MAP estimate of the latent quality at each point by damped Newton steps
/// from f = 0. On hitting newton_max_iter the best iterate is returned with
/// converged = false.
LatentFit fit_latent_map(const Eigen::MatrixXd& points, const PreferenceSet& prefs, const PrefConfig& config);

/// Shifts so that no score is negative and divides by the spread, but never
/// by less than 1, so a narrow spread is not stretched to fill [0, 1].
Eigen::VectorXd normalize_scores(const Eigen::VectorXd& latent);

struct QualityScores {
  Eigen::VectorXd latent;
  Eigen::VectorXd normalized;
  bool converged = true;
};

// Neutral 0.5 for every point while no preferences exist.
inline constexpr double kNeutralQuality = 0.5;

QualityScores quality_scores(const Eigen::MatrixXd& points, const PreferenceSet& prefs, const PrefConfig& config);

}  // namespace aeo
