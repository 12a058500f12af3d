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

#include "aeo/preference.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "aeo/error.hpp"
#include "aeo/normal.hpp"

namespace aeo {

void PrefConfig::validate() const {
  if (!(noise_sigma > 0.0)) throw ArgumentError("preference noise sigma must be positive");
  if (newton_max_iter < 1) throw ArgumentError("newton_max_iter must be at least 1");
  if (!(newton_tol > 0.0)) throw ArgumentError("newton_tol must be positive");
  if (!(jitter >= 0.0)) throw ArgumentError("preference jitter must be nonnegative");
  kernel.validate();
}

std::size_t comparison_count(std::size_t t) {
  if (t <= 1) return 0;
  return static_cast<std::size_t>(std::bit_width(t - 1));  // floor(log2(t-1)) + 1
}

std::vector<std::size_t> schedule_comparisons(std::size_t t, std::size_t count_prior, Rng& rng) {
  const std::size_t k = std::min(comparison_count(t), count_prior);
  if (k == 0) return {};
  return rng.sample_without_replacement(count_prior, k);
}

void record_outcome(PreferenceSet& prefs, std::size_t current, std::size_t prior, ComparisonOutcome outcome) {
  if (current == prior) throw ArgumentError("record_outcome: an observation cannot be compared with itself");
  switch (outcome) {
    case ComparisonOutcome::CurrentBetter:
      prefs.push_back({current, prior});
      break;
    case ComparisonOutcome::PriorBetter:
      prefs.push_back({prior, current});
      break;
    case ComparisonOutcome::DifficultToTell:
      prefs.push_back({current, prior});
      prefs.push_back({prior, current});
      break;
  }
}

PreferenceObjective::PreferenceObjective(const Eigen::MatrixXd& points, const PreferenceSet& prefs,
                                         const PrefConfig& config)
    : prefs_(prefs), scale_(std::numbers::sqrt2 * config.noise_sigma) {
  config.validate();
  const auto n = static_cast<std::size_t>(points.rows());
  if (n < 1) throw ArgumentError("fit_latent_map: at least one point is required");
  for (const PreferencePair& p : prefs) {
    if (p.winner >= n || p.loser >= n)
      throw ArgumentError("fit_latent_map: preference refers to an unknown observation");
    if (p.winner == p.loser) throw ArgumentError("fit_latent_map: self-preference");
  }
  sigma_ = kernel_matrix(points, points, config.kernel);
  sigma_.diagonal().array() += config.jitter;
  sigma_llt_.compute(sigma_);
  if (sigma_llt_.info() != Eigen::Success)
    throw NumericalError("fit_latent_map: prior covariance is not positive definite");
}

double PreferenceObjective::z(const PreferencePair& p, const Eigen::VectorXd& f) const {
  return (f(static_cast<Eigen::Index>(p.winner)) - f(static_cast<Eigen::Index>(p.loser))) / scale_;
}

double PreferenceObjective::value(const Eigen::VectorXd& f) const {
  double s = 0.5 * f.dot(sigma_llt_.solve(f));
  for (const PreferencePair& p : prefs_) s -= log_normal_cdf(z(p, f));
  return s;
}

Eigen::VectorXd PreferenceObjective::log_likelihood_gradient(const Eigen::VectorXd& f) const {
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(f.size());
  for (const PreferencePair& p : prefs_) {
    const double g = normal_hazard(z(p, f)) / scale_;
    beta(static_cast<Eigen::Index>(p.winner)) += g;
    beta(static_cast<Eigen::Index>(p.loser)) -= g;
  }
  return beta;
}

Eigen::MatrixXd PreferenceObjective::neg_log_likelihood_hessian(const Eigen::VectorXd& f) const {
  const auto n = f.size();
  Eigen::MatrixXd lambda = Eigen::MatrixXd::Zero(n, n);
  for (const PreferencePair& p : prefs_) {
    const double zm = z(p, f);
    const double r = normal_hazard(zm);
    const double h = r * (zm + r) / (scale_ * scale_);
    const auto u = static_cast<Eigen::Index>(p.winner);
    const auto v = static_cast<Eigen::Index>(p.loser);
    lambda(u, u) += h;
    lambda(v, v) += h;
    lambda(u, v) -= h;
    lambda(v, u) -= h;
  }
  return lambda;
}

LatentFit fit_latent_map(const Eigen::MatrixXd& points, const PreferenceSet& prefs, const PrefConfig& config) {
  const PreferenceObjective objective(points, prefs, config);
  const auto n = static_cast<Eigen::Index>(objective.size());
  const Eigen::MatrixXd& sigma = objective.sigma();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);

  LatentFit fit;
  fit.latent = Eigen::VectorXd::Zero(n);
  if (prefs.empty()) {
    fit.converged = true;
    return fit;
  }

  Eigen::VectorXd f = fit.latent;
  double s = objective.value(f);
  for (int iter = 1; iter <= config.newton_max_iter; ++iter) {
    fit.iterations = iter;
    const Eigen::VectorXd beta = objective.log_likelihood_gradient(f);
    const Eigen::MatrixXd lambda = objective.neg_log_likelihood_hessian(f);
    // (Sigma^-1 + Lambda)^-1 grad S == (I + Sigma Lambda)^-1 (f - Sigma beta),
    // which never forms Sigma^-1.
    const Eigen::VectorXd residual = f - sigma * beta;
    const Eigen::VectorXd step = -(identity + sigma * lambda).colPivHouseholderQr().solve(residual);
    if (!step.allFinite()) throw NumericalError("fit_latent_map: Newton step is not finite");

    double t = 1.0;
    Eigen::VectorXd trial = f + step;
    double s_trial = objective.value(trial);
    for (int halvings = 0; halvings < 60 && !(s_trial <= s); ++halvings) {
      t *= 0.5;
      trial = f + t * step;
      s_trial = objective.value(trial);
    }
    if (s_trial <= s) {
      f = std::move(trial);
      s = s_trial;
    }
    if ((t * step).lpNorm<Eigen::Infinity>() < config.newton_tol) {
      fit.converged = true;
      break;
    }
  }
  fit.latent = std::move(f);
  return fit;
}

Eigen::VectorXd normalize_scores(const Eigen::VectorXd& latent) {
  if (latent.size() == 0) throw ArgumentError("normalize_scores: empty score vector");
  if (!latent.allFinite()) throw ArgumentError("normalize_scores: scores must be finite");
  const double shift = std::min(0.0, latent.minCoeff());
  const double scale = std::max(latent.maxCoeff() - shift, 1.0);
  Eigen::VectorXd out = ((latent.array() - shift) / scale).matrix();
  // Guard the [0, 1] contract against the last rounding step.
  return out.cwiseMax(0.0).cwiseMin(1.0);
}

QualityScores quality_scores(const Eigen::MatrixXd& points, const PreferenceSet& prefs, const PrefConfig& config) {
  QualityScores scores;
  if (prefs.empty()) {
    scores.latent = Eigen::VectorXd::Zero(points.rows());
    scores.normalized = Eigen::VectorXd::Constant(points.rows(), kNeutralQuality);
    return scores;
  }
  LatentFit fit = fit_latent_map(points, prefs, config);
  scores.normalized = normalize_scores(fit.latent);
  scores.latent = std::move(fit.latent);
  scores.converged = fit.converged;
  return scores;
}

}  // namespace aeo
