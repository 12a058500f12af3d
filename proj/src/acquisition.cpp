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

#include "aeo/acquisition.hpp"

#include <algorithm>

#include "aeo/error.hpp"

namespace aeo {

std::optional<GridArgmax> exhaustive_argmax(const GridObjective& objective, const ParameterSpace& space,
                                            const std::function<bool(const DesignPoint&)>& skip) {
  if (!space.all_discrete())
    throw UnsupportedSpaceError("exhaustive_argmax: every dimension must be discrete");
  const std::size_t n = space.grid_size();
  if (n > kMaxGridSize) throw ArgumentError("exhaustive_argmax: grid larger than 1e6 points");

  std::optional<GridArgmax> best;
  std::size_t evaluations = 0;
  for (std::size_t rank = 0; rank < n; ++rank) {
    DesignPoint point = space.grid_point(rank);
    if (skip && skip(point)) continue;
    const double value = objective(point);
    ++evaluations;
    if (!std::isfinite(value)) throw NumericalError("exhaustive_argmax: objective returned a non-finite value");
    if (!best || value > best->value) best = GridArgmax{std::move(point), value, rank, 0};
  }
  if (best) best->evaluations = evaluations;
  return best;
}

namespace {

bool is_observed(const std::vector<DesignPoint>& observed, const DesignPoint& point) {
  return std::find(observed.begin(), observed.end(), point) != observed.end();
}

AcquisitionResult recommend_exhaustive(const GPModel<double>& model, const ParameterSpace& space,
                                       double best_utility, const std::vector<DesignPoint>& observed) {
  const auto ei = [&](const DesignPoint& p) {
    return expected_improvement_for_min(model, normalize(space, p), best_utility);
  };
  const auto skip = [&](const DesignPoint& p) { return is_observed(observed, p); };
  std::optional<GridArgmax> found = exhaustive_argmax(ei, space, skip);
  AcquisitionResult result;
  if (found) {
    result.point = std::move(found->point);
    result.acquisition_value = found->value;
    result.evaluations_used = found->evaluations;
    return result;
  }
  // Every grid point has been run already.
  found = exhaustive_argmax(ei, space);
  result.point = std::move(found->point);
  result.acquisition_value = found->value;
  result.evaluations_used = found->evaluations;
  result.duplicate = true;
  return result;
}

AcquisitionResult recommend_direct(const GPModel<double>& model, const ParameterSpace& space,
                                   double best_utility, const AcquisitionConfig& config,
                                   const std::vector<DesignPoint>& observed) {
  const auto ei_unit = [&](const Eigen::VectorXd& u) {
    return expected_improvement_for_min(model, u, best_utility);
  };
  DirectOptions options;
  options.eval_budget = config.direct_budget;
  DirectResult search = direct_search(ei_unit, space.size(), options);

  // Best raw samples first; ties keep evaluation order.
  std::vector<std::size_t> order(search.samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return search.samples[a].value > search.samples[b].value;
  });

  struct Candidate {
    DesignPoint point;
    double value;
  };
  std::vector<Candidate> candidates;
  for (std::size_t idx : order) {
    if (candidates.size() >= std::max<std::size_t>(config.rerank_candidates, 1)) break;
    DesignPoint snapped = denormalize(space, search.samples[idx].point);
    const bool seen = std::any_of(candidates.begin(), candidates.end(),
                                  [&](const Candidate& c) { return c.point == snapped; });
    if (seen) continue;
    const double value = ei_unit(normalize(space, snapped));
    candidates.push_back({std::move(snapped), value});
  }

  AcquisitionResult result;
  result.evaluations_used = search.evaluations;
  if (!is_observed(observed, candidates.front().point)) {
    result.point = candidates.front().point;
    result.acquisition_value = candidates.front().value;
    return result;
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
  for (const Candidate& c : candidates) {
    if (is_observed(observed, c.point)) continue;
    result.point = c.point;
    result.acquisition_value = c.value;
    return result;
  }
  result.point = candidates.front().point;
  result.acquisition_value = candidates.front().value;
  result.duplicate = true;
  return result;
}

}  // namespace

AcquisitionResult recommend_next(const GPModel<double>& model, const ParameterSpace& space,
                                 double best_utility, const AcquisitionConfig& config,
                                 const std::vector<DesignPoint>& observed) {
  if (static_cast<std::size_t>(model.dim()) != space.size())
    throw ArgumentError("recommend_next: model and space dimensions differ");
  AcquisitionMode mode = config.mode;
  if (mode == AcquisitionMode::Auto)
    mode = space.all_discrete() && space.grid_size() <= kMaxGridSize ? AcquisitionMode::Exhaustive
                                                                     : AcquisitionMode::Direct;
  if (mode == AcquisitionMode::Exhaustive) return recommend_exhaustive(model, space, best_utility, observed);
  return recommend_direct(model, space, best_utility, config, observed);
}

}  // namespace aeo
