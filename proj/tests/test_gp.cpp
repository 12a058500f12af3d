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

#include <cmath>

#include "aeo/error.hpp"
#include "aeo/gp.hpp"
#include "aeo/random.hpp"
#include "oracles.hpp"

namespace aeo {
namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

Mat random_inputs(Rng& rng, Eigen::Index n, Eigen::Index d) {
  Mat x(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = rng.uniform();
  return x;
}

Vec random_targets(Rng& rng, Eigen::Index n) {
  Vec y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = rng.uniform();
  return y;
}

TEST(Kernel, ZeroDistanceIsSignalVariance) {
  Vec a(1);
  a << 0.3;
  EXPECT_DOUBLE_EQ(se_kernel(a, a, KernelConfig<double>{1.0, 1.0}), 1.0);
  EXPECT_DOUBLE_EQ(se_kernel(a, a, KernelConfig<double>{1.0, 2.5}), 2.5);
}

TEST(Kernel, SquaredDistanceTwo) {
  Vec a(2), b(2);
  a << 0.0, 0.0;
  b << 1.0, 1.0;
  EXPECT_NEAR(se_kernel(a, b, KernelConfig<double>{1.0, 1.0}), 0.367879441171, 1e-12);
}

TEST(Kernel, DecaysBeyondEightLengthscales) {
  Vec a(1), b(1);
  a << 0.0;
  b << 8.0 * 0.2;
  EXPECT_LT(se_kernel(a, b, KernelConfig<double>{}), 1e-12);
}

TEST(Kernel, SymmetricForRandomPairs) {
  Rng rng(11);
  const KernelConfig<double> cfg{0.3, 1.7};
  for (int trial = 0; trial < 1000; ++trial) {
    const Mat p = random_inputs(rng, 2, 4);
    const double ab = se_kernel(p.row(0), p.row(1), cfg);
    const double ba = se_kernel(p.row(1), p.row(0), cfg);
    ASSERT_EQ(ab, ba);
    ASSERT_GT(ab, 0.0);
    ASSERT_LE(ab, 1.7);
  }
}

TEST(Kernel, RejectsInvalidConfig) {
  Vec a = Vec::Zero(2);
  EXPECT_THROW((KernelConfig<double>{0.0, 1.0}).validate(), ArgumentError);
  EXPECT_THROW((KernelConfig<double>{-1.0, 1.0}).validate(), ArgumentError);
  EXPECT_THROW(fit<double>(Mat::Zero(1, 2), Vec::Zero(1), KernelConfig<double>{NAN, 1.0}, 0.0), ArgumentError);
  EXPECT_THROW(fit<double>(Mat::Zero(1, 2), Vec::Zero(1), KernelConfig<double>{0.2, 0.0}, 0.0), ArgumentError);
  Vec b = Vec::Zero(3);
  EXPECT_THROW(se_kernel(a, b, KernelConfig<double>{}), ArgumentError);
}

TEST(Fit, SinglePoint) {
  Mat x(1, 1);
  x << 0.0;
  Vec y(1);
  y << 1.0;
  const auto model = fit<double>(x, y, KernelConfig<double>{1.0, 1.0}, 0.0);
  EXPECT_DOUBLE_EQ(model.factor(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(model.regularized_covariance()(0, 0), 1.0);
  EXPECT_EQ(model.jitter, 0.0);
}

TEST(Fit, DuplicatedRowsEngageJitter) {
  Mat x(3, 2);
  x << 0.2, 0.4, 0.2, 0.4, 0.7, 0.1;
  Vec y(3);
  y << 0.5, 0.5, 0.1;
  const auto model = fit<double>(x, y, KernelConfig<double>{}, 0.0);
  EXPECT_GT(model.jitter, 0.0);
  EXPECT_LE(model.jitter, kJitterCap * (1 + 1e-9));
  EXPECT_TRUE(model.alpha.allFinite());
}

TEST(Fit, JitterScheduleIsPowersOfTen) {
  Mat x(2, 1);
  x << 0.5, 0.5;
  Vec y(2);
  y << 1.0, 1.0;
  const auto model = fit<double>(x, y, KernelConfig<double>{}, 0.0);
  const double exponent = std::log10(model.jitter);
  EXPECT_NEAR(exponent, std::round(exponent), 1e-9);
  EXPECT_GE(exponent, -8.0 - 1e-9);
}

TEST(Fit, ThrowsWhenJitterCapIsNotEnough) {
  Mat x(2, 1);
  x << 0.0, 0.0;
  Vec y(2);
  y << std::nan(""), 0.0;
  EXPECT_THROW(fit<double>(x, y, KernelConfig<double>{}, 0.0), ArgumentError);
  Mat bad(1, 1);
  bad << INFINITY;
  EXPECT_THROW(fit<double>(bad, Vec::Zero(1), KernelConfig<double>{}, 0.0), ArgumentError);
  EXPECT_THROW(fit<double>(Mat(0, 1), Vec(0), KernelConfig<double>{}, 0.0), ArgumentError);
}

TEST(Fit, NonPositiveDefiniteIsNumericalError) {
  // Signal variance so large relative to the jitter cap that a duplicated
  // pair stays singular to working precision.
  Mat x(2, 1);
  x << 0.5, 0.5;
  Vec y(2);
  y << 1.0, 2.0;
  try {
    fit<double>(x, y, KernelConfig<double>{0.2, 1e12}, 0.0);
    FAIL() << "expected a numerical error";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("positive definite"), std::string::npos);
  }
}

TEST(Fit, FactorReconstructsRegularizedCovariance) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.uniform_index(8));
    const Mat x = random_inputs(rng, n, 3);
    const auto model = fit<double>(x, random_targets(rng, n), KernelConfig<double>{}, 1e-4);
    const Mat rebuilt = model.factor * model.factor.transpose();
    ASSERT_LE((rebuilt - model.regularized_covariance()).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Fit, Deterministic) {
  Rng rng(5);
  const Mat x = random_inputs(rng, 6, 2);
  const Vec y = random_targets(rng, 6);
  const auto a = fit<double>(x, y, KernelConfig<double>{}, 1e-4);
  const auto b = fit<double>(x, y, KernelConfig<double>{}, 1e-4);
  EXPECT_EQ(a.factor, b.factor);
  EXPECT_EQ(a.alpha, b.alpha);
}

TEST(Predict, InterpolatesTrainingPointsWithoutNoise) {
  Rng rng(8);
  const Mat x = random_inputs(rng, 5, 2);
  const Vec y = random_targets(rng, 5);
  const auto model = fit<double>(x, y, KernelConfig<double>{}, 0.0);
  for (Eigen::Index i = 0; i < 5; ++i) {
    const auto post = predict(model, x.row(i));
    EXPECT_NEAR(post.mean, y(i), 1e-6);
    EXPECT_LE(post.variance, 1e-6);
  }
}

TEST(Predict, SinglePointClosedForm) {
  Mat x(1, 1);
  x << 0.0;
  Vec y(1);
  y << 1.0;
  const auto model = fit<double>(x, y, KernelConfig<double>{1.0, 1.0}, 0.0);
  Vec q(1);
  q << 1.0;
  const auto post = predict(model, q);
  EXPECT_NEAR(post.mean, std::exp(-0.5), 1e-12);
  EXPECT_NEAR(post.variance, 1.0 - std::exp(-1.0), 1e-12);
}

TEST(Predict, RevertsToPriorFarFromData) {
  Mat x(2, 2);
  x << 0.0, 0.0, 0.1, 0.0;
  Vec y(2);
  y << 0.7, 0.4;
  const auto model = fit<double>(x, y, KernelConfig<double>{0.2, 1.3}, 1e-4);
  Vec q(2);
  q << 0.1 + 8 * 0.2, 1.0;
  const auto post = predict(model, q);
  EXPECT_LT(std::abs(post.mean), 1e-10);
  EXPECT_NEAR(post.variance, 1.3, 1e-10);
}

TEST(Predict, MatchesExplicitInverseOracle) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.uniform_index(5));
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.uniform_index(3));
    const Mat x = random_inputs(rng, n, d);
    const Vec y = random_targets(rng, n);
    const double theta = 0.1 + rng.uniform();
    const double noise = 1e-3 * rng.uniform() + 1e-4;
    const auto model = fit<double>(x, y, KernelConfig<double>{theta, 1.0}, noise);
    const Vec q = random_inputs(rng, 1, d).row(0).transpose();
    const auto post = predict(model, q);
    const auto ref = oracle::gp_predict(x, y, theta, 1.0, noise + model.jitter, q);
    ASSERT_NEAR(post.mean, ref.mean, 1e-8);
    ASSERT_NEAR(post.variance, std::max(0.0, ref.variance), 1e-8);
  }
}

TEST(Predict, VarianceNonNegative) {
  Rng rng(4);
  const Mat x = random_inputs(rng, 30, 2);
  const auto model = fit<double>(x, random_targets(rng, 30), KernelConfig<double>{0.5, 1.0}, 0.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec q = random_inputs(rng, 1, 2).row(0).transpose();
    ASSERT_GE(predict(model, q).variance, 0.0);
  }
}

TEST(Predict, AddingAPointNeverIncreasesVariance) {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat x = random_inputs(rng, 5, 2);
    const Vec y = random_targets(rng, 5);
    const auto small = fit<double>(Mat(x.topRows(4)), Vec(y.head(4)), KernelConfig<double>{}, 0.0);
    const auto large = fit<double>(x, y, KernelConfig<double>{}, 0.0);
    const Vec q = random_inputs(rng, 1, 2).row(0).transpose();
    ASSERT_LE(predict(large, q).variance, predict(small, q).variance + 1e-8);
  }
}

TEST(Predict, DimensionMismatch) {
  const auto model = fit<double>(Mat::Zero(1, 2), Vec::Zero(1), KernelConfig<double>{}, 0.0);
  EXPECT_THROW(predict(model, Vec::Zero(3)), ArgumentError);
}

TEST(Predict, AcceptsRowAndColumnQueries) {
  Rng rng(2);
  const Mat x = random_inputs(rng, 4, 3);
  const auto model = fit<double>(x, random_targets(rng, 4), KernelConfig<double>{}, 1e-4);
  const Eigen::RowVectorXd row = random_inputs(rng, 1, 3);
  const Vec col = row.transpose();
  EXPECT_EQ(predict(model, row).mean, predict(model, col).mean);
}

TEST(Predict, FloatScalar) {
  Eigen::MatrixXf x(2, 1);
  x << 0.0f, 1.0f;
  Eigen::VectorXf y(2);
  y << 1.0f, 0.0f;
  const auto model = fit<float>(x, y, KernelConfig<float>{1.0f, 1.0f}, 0.0f);
  Eigen::VectorXf q(1);
  q << 0.0f;
  EXPECT_NEAR(predict(model, q).mean, 1.0f, 1e-4f);
}

TEST(LogMarginalLikelihood, SingleZeroTarget) {
  Mat x(1, 1);
  x << 0.0;
  const auto model = fit<double>(x, Vec::Zero(1), KernelConfig<double>{1.0, 1.0}, 0.0);
  EXPECT_NEAR(log_marginal_likelihood(model), -0.5 * std::log(2 * M_PI), 1e-12);
  EXPECT_NEAR(log_marginal_likelihood(model), -0.918938533205, 1e-12);
}

TEST(LogMarginalLikelihood, ZeroTargetsRemoveQuadraticTerm) {
  Rng rng(6);
  const Mat x = random_inputs(rng, 4, 2);
  const Vec y = random_targets(rng, 4);
  const auto a = fit<double>(x, Vec(0.0 * y), KernelConfig<double>{}, 1e-4);
  const auto b = fit<double>(x, Vec(0.0 * random_targets(rng, 4)), KernelConfig<double>{}, 1e-4);
  EXPECT_EQ(log_marginal_likelihood(a), log_marginal_likelihood(b));
}

TEST(LogMarginalLikelihood, TwoByTwoOracle) {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat x = random_inputs(rng, 2, 2);
    const Vec y = random_targets(rng, 2);
    const double theta = 0.1 + rng.uniform();
    const double noise = 0.01 + 0.1 * rng.uniform();
    const auto model = fit<double>(x, y, KernelConfig<double>{theta, 1.0}, noise);
    const double k12 = oracle::se(x.row(0).transpose(), x.row(1).transpose(), theta, 1.0);
    const double ref = oracle::lml_2x2(1.0 + noise, k12, 1.0 + noise, y(0), y(1));
    ASSERT_NEAR(log_marginal_likelihood(model), ref, 1e-10);
  }
}

TEST(LengthscaleSelection, PicksHighestLikelihood) {
  Rng rng(17);
  const Mat x = random_inputs(rng, 8, 2);
  Vec y(8);
  for (Eigen::Index i = 0; i < 8; ++i) y(i) = std::sin(3 * x(i, 0)) + 0.5 * x(i, 1);
  const auto grid = default_lengthscale_grid();
  ASSERT_EQ(grid, (std::vector<double>{0.05, 0.1, 0.2, 0.4, 0.8}));
  const auto chosen = fit_select_lengthscale<double>(x, y, KernelConfig<double>{}, 1e-4, grid);
  double best = -INFINITY;
  double best_theta = 0;
  for (double theta : grid) {
    const double lml = log_marginal_likelihood(fit<double>(x, y, KernelConfig<double>{theta, 1.0}, 1e-4));
    if (lml > best) {
      best = lml;
      best_theta = theta;
    }
  }
  EXPECT_EQ(chosen.kernel.lengthscale, best_theta);
  EXPECT_DOUBLE_EQ(log_marginal_likelihood(chosen), best);
}

}  // namespace
}  // namespace aeo
