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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "aeo/error.hpp"

namespace aeo {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Squared-exponential kernel parameters. The length-scale is expressed in
/// normalized input units, i.e. relative to a unit box.
template <typename Scalar>
struct KernelConfig {
  Scalar lengthscale = Scalar(0.2);
  Scalar signal_variance = Scalar(1);

  void validate() const {
    if (!(lengthscale > Scalar(0)) || !std::isfinite(double(lengthscale)))
      throw ArgumentError("kernel lengthscale must be positive and finite");
    if (!(signal_variance > Scalar(0)) || !std::isfinite(double(signal_variance)))
      throw ArgumentError("kernel signal variance must be positive and finite");
  }

  friend bool operator==(const KernelConfig&, const KernelConfig&) = default;
};

template <typename Derived1, typename Derived2, typename Scalar>
Scalar se_kernel(const Eigen::MatrixBase<Derived1>& xi, const Eigen::MatrixBase<Derived2>& xj,
                 const KernelConfig<Scalar>& config) {
  if (xi.size() != xj.size())
    throw ArgumentError("se_kernel: dimension mismatch (" + std::to_string(xi.size()) + " vs " +
                        std::to_string(xj.size()) + ")");
  const Scalar sq = (xi - xj).squaredNorm();
  const Scalar theta = config.lengthscale;
  return config.signal_variance * std::exp(-sq / (Scalar(2) * theta * theta));
}

/// Gram matrix between the rows of a and the rows of b.
template <typename Scalar>
Matrix<Scalar> kernel_matrix(const Matrix<Scalar>& a, const Matrix<Scalar>& b,
                             const KernelConfig<Scalar>& config) {
  if (a.cols() != b.cols()) throw ArgumentError("kernel_matrix: dimension mismatch");
  Matrix<Scalar> k(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.rows(); ++j) k(i, j) = se_kernel(a.row(i), b.row(j), config);
  return k;
}

// Jitter escalation schedule used when the regularized covariance will not
// factorize: none first, then 1e-8, growing tenfold, giving up past 1e-2.
inline constexpr double kJitterStart = 1e-8;
inline constexpr double kJitterGrowth = 10.0;
inline constexpr double kJitterCap = 1e-2;

// A pivot is accepted only if factor(i,i)^2 exceeds this fraction of the
// largest diagonal entry; smaller pivots mean the matrix is singular to
// working precision and the factor is not trustworthy.
inline constexpr double kMinRelativePivot = 1e-12;

/// Zero-mean GP regression model conditioned on (inputs, targets).
/// Immutable once fitted.
template <typename Scalar>
struct GPModel {
  Matrix<Scalar> inputs;   // n x d, rows are normalized design points
  Vector<Scalar> targets;  // n
  KernelConfig<Scalar> kernel;
  Scalar obs_noise_variance = Scalar(0);
  Scalar jitter = Scalar(0);
  Matrix<Scalar> factor;  // lower Cholesky factor of K + (noise + jitter) I
  Vector<Scalar> alpha;   // (K + (noise + jitter) I)^-1 targets

  Eigen::Index size() const { return inputs.rows(); }
  Eigen::Index dim() const { return inputs.cols(); }

  Matrix<Scalar> regularized_covariance() const {
    Matrix<Scalar> k = kernel_matrix(inputs, inputs, kernel);
    k.diagonal().array() += obs_noise_variance + jitter;
    return k;
  }
};

template <typename Scalar>
struct Posterior {
  Scalar mean = Scalar(0);
  Scalar variance = Scalar(0);

  Scalar stddev() const { return std::sqrt(variance); }
};

namespace detail {

template <typename Scalar>
bool try_cholesky(const Matrix<Scalar>& cov, Matrix<Scalar>& factor) {
  Eigen::LLT<Matrix<Scalar>> llt(cov);
  if (llt.info() != Eigen::Success) return false;
  factor = llt.matrixL();
  const Scalar max_diag = cov.diagonal().maxCoeff();
  for (Eigen::Index i = 0; i < factor.rows(); ++i) {
    const Scalar pivot = factor(i, i);
    if (!(pivot > Scalar(0)) || !std::isfinite(double(pivot))) return false;
    if (pivot * pivot < Scalar(kMinRelativePivot) * max_diag) return false;
  }
  return true;
}

}  // namespace detail

template <typename Scalar>
GPModel<Scalar> fit(const Matrix<Scalar>& inputs, const Vector<Scalar>& targets,
                    const KernelConfig<Scalar>& kernel, Scalar obs_noise_variance) {
  kernel.validate();
  if (inputs.rows() < 1) throw ArgumentError("fit: at least one training point is required");
  if (inputs.rows() != targets.size())
    throw ArgumentError("fit: inputs and targets disagree on the number of points");
  if (!inputs.allFinite()) throw ArgumentError("fit: input coordinates must be finite");
  if (!targets.allFinite()) throw ArgumentError("fit: targets must be finite");
  if (!(obs_noise_variance >= Scalar(0)))
    throw ArgumentError("fit: observation noise variance must be nonnegative");

  GPModel<Scalar> model;
  model.inputs = inputs;
  model.targets = targets;
  model.kernel = kernel;
  model.obs_noise_variance = obs_noise_variance;

  const Matrix<Scalar> base = kernel_matrix(inputs, inputs, kernel);
  Scalar jitter = Scalar(0);
  while (true) {
    Matrix<Scalar> cov = base;
    cov.diagonal().array() += obs_noise_variance + jitter;
    if (detail::try_cholesky(cov, model.factor)) break;
    jitter = jitter == Scalar(0) ? Scalar(kJitterStart) : jitter * Scalar(kJitterGrowth);
    if (jitter > Scalar(kJitterCap) * Scalar(1.0000001))
      throw NumericalError(
          "fit: covariance matrix is not positive definite even with jitter 1e-2");
  }
  model.jitter = jitter;
  const Vector<Scalar> w = model.factor.template triangularView<Eigen::Lower>().solve(targets);
  model.alpha = model.factor.transpose().template triangularView<Eigen::Upper>().solve(w);
  return model;
}

template <typename Scalar, typename Derived>
Posterior<Scalar> predict(const GPModel<Scalar>& model, const Eigen::MatrixBase<Derived>& x_star) {
  if (x_star.size() != model.dim())
    throw ArgumentError("predict: query has dimension " + std::to_string(x_star.size()) +
                        ", model has " + std::to_string(model.dim()));
  const Vector<Scalar> x = x_star.reshaped();
  Vector<Scalar> k(model.size());
  for (Eigen::Index i = 0; i < model.size(); ++i)
    k(i) = se_kernel(model.inputs.row(i).transpose(), x, model.kernel);
  Posterior<Scalar> post;
  post.mean = k.dot(model.alpha);
  const Vector<Scalar> v = model.factor.template triangularView<Eigen::Lower>().solve(k);
  const Scalar prior = se_kernel(x, x, model.kernel);
  post.variance = std::max(Scalar(0), prior - v.squaredNorm());
  return post;
}

/// ln N(targets | 0, K) with K the regularized covariance.
template <typename Scalar>
Scalar log_marginal_likelihood(const GPModel<Scalar>& model) {
  const auto n = static_cast<Scalar>(model.size());
  const Scalar quad = model.targets.dot(model.alpha);
  const Scalar log_det = Scalar(2) * model.factor.diagonal().array().log().sum();
  return Scalar(-0.5) * quad - Scalar(0.5) * log_det -
         Scalar(0.5) * n * std::log(Scalar(2) * std::numbers::pi_v<Scalar>);
}

/// Fits one model per candidate length-scale and keeps the one with the
/// highest log marginal likelihood. Earlier candidates win ties.
template <typename Scalar>
GPModel<Scalar> fit_select_lengthscale(const Matrix<Scalar>& inputs, const Vector<Scalar>& targets,
                                       KernelConfig<Scalar> kernel, Scalar obs_noise_variance,
                                       std::span<const Scalar> lengthscales) {
  if (lengthscales.empty()) throw ArgumentError("lengthscale grid is empty");
  GPModel<Scalar> best;
  Scalar best_lml = -std::numeric_limits<Scalar>::infinity();
  bool have = false;
  for (Scalar theta : lengthscales) {
    kernel.lengthscale = theta;
    GPModel<Scalar> candidate = fit(inputs, targets, kernel, obs_noise_variance);
    const Scalar lml = log_marginal_likelihood(candidate);
    if (!have || lml > best_lml) {
      best = std::move(candidate);
      best_lml = lml;
      have = true;
    }
  }
  return best;
}

inline const std::vector<double>& default_lengthscale_grid() {
  static const std::vector<double> grid{0.05, 0.1, 0.2, 0.4, 0.8};
  return grid;
}

}  // namespace aeo
