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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "aeo/error.hpp"
#include "aeo/preference.hpp"
#include "oracles.hpp"

namespace aeo {
namespace {

Eigen::MatrixXd chain_points() {
  Eigen::MatrixXd x(3, 1);
  x << 0.1, 0.5, 0.9;
  return x;
}

PrefConfig chain_config() {
  PrefConfig cfg;
  cfg.noise_sigma = 0.1;
  cfg.kernel.lengthscale = 0.5;
  return cfg;
}

std::vector<oracle::Pair> to_oracle(const PreferenceSet& prefs) {
  std::vector<oracle::Pair> out;
  for (const auto& p : prefs) out.push_back({p.winner, p.loser});
  return out;
}

TEST(Schedule, CountsFollowLogRule) {
  EXPECT_EQ(comparison_count(1), 0u);
  EXPECT_EQ(comparison_count(2), 1u);
  EXPECT_EQ(comparison_count(3), 2u);
  EXPECT_EQ(comparison_count(4), 2u);
  EXPECT_EQ(comparison_count(5), 3u);
  EXPECT_EQ(comparison_count(9), 4u);
  EXPECT_EQ(comparison_count(17), 5u);
  for (std::size_t t = 2; t < 2000; ++t)
    ASSERT_EQ(comparison_count(t), static_cast<std::size_t>(std::floor(std::log2(double(t - 1)))) + 1);
}

TEST(Schedule, DrawsDistinctPriorIndices) {
  Rng rng(4);
  EXPECT_TRUE(schedule_comparisons(1, 0, rng).empty());
  EXPECT_EQ(schedule_comparisons(2, 1, rng), std::vector<std::size_t>{0});
  for (int trial = 0; trial < 200; ++trial) {
    const auto idx = schedule_comparisons(9, 8, rng);
    ASSERT_EQ(idx.size(), 4u);
    const std::set<std::size_t> distinct(idx.begin(), idx.end());
    ASSERT_EQ(distinct.size(), 4u);
    for (std::size_t i : idx) ASSERT_LT(i, 8u);
  }
  EXPECT_EQ(schedule_comparisons(9, 2, rng).size(), 2u);
}

TEST(Schedule, RoughlyUniform) {
  Rng rng(12);
  std::vector<int> hits(8, 0);
  for (int trial = 0; trial < 8000; ++trial)
    for (std::size_t i : schedule_comparisons(9, 8, rng)) hits[i]++;
  for (int h : hits) EXPECT_NEAR(h, 4000, 250);
}

TEST(RecordOutcome, AllThreeOutcomes) {
  PreferenceSet prefs;
  record_outcome(prefs, 3, 1, ComparisonOutcome::CurrentBetter);
  ASSERT_EQ(prefs.size(), 1u);
  EXPECT_EQ(prefs.back(), (PreferencePair{3, 1}));
  record_outcome(prefs, 3, 2, ComparisonOutcome::PriorBetter);
  ASSERT_EQ(prefs.size(), 2u);
  EXPECT_EQ(prefs.back(), (PreferencePair{2, 3}));
  record_outcome(prefs, 3, 0, ComparisonOutcome::DifficultToTell);
  ASSERT_EQ(prefs.size(), 4u);
  EXPECT_EQ(prefs[2], (PreferencePair{3, 0}));
  EXPECT_EQ(prefs[3], (PreferencePair{0, 3}));
  EXPECT_THROW(record_outcome(prefs, 2, 2, ComparisonOutcome::CurrentBetter), ArgumentError);
}

TEST(LatentMap, EmptyPreferencesGivePriorMode) {
  const auto fit = fit_latent_map(chain_points(), {}, chain_config());
  EXPECT_EQ(fit.latent, Eigen::VectorXd::Zero(3));
  EXPECT_TRUE(fit.converged);
  const auto q = quality_scores(chain_points(), {}, chain_config());
  EXPECT_EQ(q.normalized, Eigen::VectorXd::Constant(3, 0.5));
}

TEST(LatentMap, SinglePairOrdersWinnerAbove) {
  const auto fit = fit_latent_map(chain_points(), {{0, 2}}, chain_config());
  EXPECT_GT(fit.latent(0), fit.latent(2));
  EXPECT_TRUE(fit.converged);
}

TEST(LatentMap, ChainMatchesGridOracle) {
  const PreferenceSet prefs{{0, 1}, {1, 2}};
  const PrefConfig cfg = chain_config();
  const auto fit = fit_latent_map(chain_points(), prefs, cfg);
  const oracle::PreferenceS s(chain_points(), to_oracle(prefs), cfg.noise_sigma, cfg.kernel.lengthscale, cfg.jitter);
  const Eigen::Vector3d grid = oracle::grid_minimize3(s, -2.0, 2.0, 0.02);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(fit.latent(i), grid(i), 0.02) << i;
  EXPECT_GT(fit.latent(0), fit.latent(1));
  EXPECT_GT(fit.latent(1), fit.latent(2));
}

TEST(LatentMap, ObjectiveAgreesWithOracle) {
  const PreferenceSet prefs{{0, 1}, {1, 2}, {2, 0}};
  const PrefConfig cfg = chain_config();
  const PreferenceObjective obj(chain_points(), prefs, cfg);
  const oracle::PreferenceS s(chain_points(), to_oracle(prefs), cfg.noise_sigma, cfg.kernel.lengthscale, cfg.jitter);
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd f(3);
    for (int i = 0; i < 3; ++i) f(i) = 2 * rng.uniform() - 1;
    ASSERT_NEAR(obj.value(f), s(f), 1e-6 * std::max(1.0, std::abs(s(f))));
    ASSERT_LE((obj.log_likelihood_gradient(f) - s.beta(f)).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(LatentMap, HandlesExtremeMargins) {
  const PreferenceObjective obj(chain_points(), {{0, 1}}, chain_config());
  Eigen::VectorXd f(3);
  f << -50.0, 50.0, 0.0;
  EXPECT_TRUE(std::isfinite(obj.value(f)));
  EXPECT_TRUE(obj.log_likelihood_gradient(f).allFinite());
  EXPECT_TRUE(obj.neg_log_likelihood_hessian(f).allFinite());
}

struct RandomProblem {
  Eigen::MatrixXd points;
  PreferenceSet prefs;
};

RandomProblem random_problem(Rng& rng) {
  const std::size_t n = 2 + rng.uniform_index(5);
  const std::size_t m = 1 + rng.uniform_index(10);
  RandomProblem p;
  p.points.resize(static_cast<Eigen::Index>(n), 2);
  for (Eigen::Index i = 0; i < p.points.size(); ++i) p.points.data()[i] = rng.uniform();
  for (std::size_t k = 0; k < m; ++k) {
    const auto pair = rng.sample_without_replacement(n, 2);
    p.prefs.push_back({pair[0], pair[1]});
  }
  return p;
}

TEST(LatentMap, FixpointResidualOnRandomSets) {
  Rng rng(77);
  const PrefConfig cfg;
  for (int trial = 0; trial < 50; ++trial) {
    const RandomProblem p = random_problem(rng);
    const auto fit = fit_latent_map(p.points, p.prefs, cfg);
    ASSERT_TRUE(fit.converged) << trial;
    const oracle::PreferenceS s(p.points, to_oracle(p.prefs), cfg.noise_sigma, cfg.kernel.lengthscale, cfg.jitter);
    const Eigen::VectorXd residual = fit.latent - s.cov() * s.beta(fit.latent);
    ASSERT_LE(residual.cwiseAbs().maxCoeff(), 1e-5) << trial;
    ASSERT_LE(s(fit.latent), s(Eigen::VectorXd::Zero(fit.latent.size())));
  }
}

TEST(LatentMap, RelabelingPermutesLatent) {
  Rng rng(5);
  const PrefConfig cfg;
  for (int trial = 0; trial < 20; ++trial) {
    const RandomProblem p = random_problem(rng);
    const auto n = static_cast<std::size_t>(p.points.rows());
    std::vector<std::size_t> perm(n);  // new index of old observation i
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n; i-- > 1;) std::swap(perm[i], perm[rng.uniform_index(i + 1)]);
    Eigen::MatrixXd moved(p.points.rows(), p.points.cols());
    for (std::size_t i = 0; i < n; ++i) moved.row(static_cast<Eigen::Index>(perm[i])) = p.points.row(static_cast<Eigen::Index>(i));
    PreferenceSet relabeled;
    for (const auto& pr : p.prefs) relabeled.push_back({perm[pr.winner], perm[pr.loser]});
    const auto a = fit_latent_map(p.points, p.prefs, cfg);
    const auto b = fit_latent_map(moved, relabeled, cfg);
    for (std::size_t i = 0; i < n; ++i)
      ASSERT_NEAR(a.latent(static_cast<Eigen::Index>(i)), b.latent(static_cast<Eigen::Index>(perm[i])), 1e-9);
  }
}

TEST(LatentMap, TiesPullScoresTogether) {
  const PrefConfig cfg = chain_config();
  const auto chain = fit_latent_map(chain_points(), {{0, 1}, {1, 2}}, cfg);
  const auto tied = fit_latent_map(chain_points(), {{0, 1}, {1, 2}, {0, 2}, {2, 0}}, cfg);
  EXPECT_LT(std::abs(tied.latent(0) - tied.latent(2)), std::abs(chain.latent(0) - chain.latent(2)));
}

TEST(LatentMap, ReportsNonConvergence) {
  PrefConfig cfg = chain_config();
  cfg.newton_max_iter = 1;
  const auto fit = fit_latent_map(chain_points(), {{0, 1}, {1, 2}}, cfg);
  EXPECT_FALSE(fit.converged);
  EXPECT_EQ(fit.iterations, 1);
  EXPECT_TRUE(fit.latent.allFinite());
}

TEST(LatentMap, RejectsBadInput) {
  EXPECT_THROW(fit_latent_map(chain_points(), {{0, 3}}, chain_config()), ArgumentError);
  EXPECT_THROW(fit_latent_map(chain_points(), {{1, 1}}, chain_config()), ArgumentError);
  PrefConfig bad = chain_config();
  bad.noise_sigma = 0.0;
  EXPECT_THROW(fit_latent_map(chain_points(), {{0, 1}}, bad), ArgumentError);
  EXPECT_THROW(fit_latent_map(Eigen::MatrixXd(0, 1), {}, chain_config()), ArgumentError);
}

TEST(LatentMap, DuplicatedPointsWithJitter) {
  Eigen::MatrixXd x(3, 1);
  x << 0.3, 0.3, 0.8;
  const auto fit = fit_latent_map(x, {{0, 2}, {2, 1}}, PrefConfig{});
  EXPECT_TRUE(fit.latent.allFinite());
}

TEST(NormalizeScores, Examples) {
  Eigen::VectorXd a(2);
  a << 0.5, -0.5;
  EXPECT_EQ(normalize_scores(a), (Eigen::VectorXd(2) << 1.0, 0.0).finished());
  Eigen::VectorXd b(2);
  b << 0.2, 0.6;
  EXPECT_EQ(normalize_scores(b), b);
  EXPECT_EQ(normalize_scores(Eigen::VectorXd::Zero(3)), Eigen::VectorXd::Zero(3));
  Eigen::VectorXd c(3);
  c << 2.0, 4.0, 3.0;
  EXPECT_EQ(normalize_scores(c), (Eigen::VectorXd(3) << 0.5, 1.0, 0.75).finished());
}

TEST(NormalizeScores, StaysInUnitInterval) {
  Rng rng(8);
  for (int trial = 0; trial < 100000; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(8);
    const double scale = std::pow(10.0, 6 * rng.uniform() - 3);
    const double shift = (trial % 3 == 0) ? -scale * 5 : 0.0;
    Eigen::VectorXd v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = shift + scale * (2 * rng.uniform() - 1);
    const Eigen::VectorXd q = normalize_scores(v);
    ASSERT_GE(q.minCoeff(), 0.0);
    ASSERT_LE(q.maxCoeff(), 1.0);
  }
}

}  // namespace
}  // namespace aeo
