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

#include "aeo/direct.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "aeo/error.hpp"

namespace aeo {

namespace {

// Internally the search minimizes f = -objective. Each side of a rectangle
// has length 3^-level.
struct Rect {
  Eigen::VectorXd center;
  std::vector<int> levels;
  double f;
  double size;  // half-diagonal
};

double half_diagonal(std::vector<int> levels) {
  // Sorted so that equal level multisets give bit-identical sizes.
  std::sort(levels.begin(), levels.end());
  double sum = 0.0;
  for (int l : levels) sum += std::pow(3.0, -2.0 * l);
  return 0.5 * std::sqrt(sum);
}

class Search {
 public:
  Search(const UnitObjective& objective, std::size_t dim, const DirectOptions& options)
      : objective_(objective), dim_(dim), options_(options) {}

  DirectResult run() {
    Rect root{Eigen::VectorXd::Constant(static_cast<Eigen::Index>(dim_), 0.5),
              std::vector<int>(dim_, 0), 0.0, 0.0};
    root.f = evaluate(root.center);
    root.size = half_diagonal(root.levels);
    rects_.push_back(std::move(root));

    while (result_.evaluations < options_.eval_budget) {
      const std::vector<std::size_t> chosen = potentially_optimal();
      if (chosen.empty()) break;
      bool divided = false;
      for (std::size_t idx : chosen) {
        if (!divide(idx)) break;
        divided = true;
      }
      if (!divided) break;
    }
    return std::move(result_);
  }

 private:
  double evaluate(const Eigen::VectorXd& x) {
    const double value = objective_(x);
    if (!std::isfinite(value)) throw NumericalError("direct_search: objective returned a non-finite value");
    result_.samples.push_back({x, value});
    if (result_.evaluations == 0 || value > result_.value) {
      result_.value = value;
      result_.point = x;
    }
    ++result_.evaluations;
    return -value;
  }

  // Rectangles on the lower-right convex hull of (size, f), one per size
  // class, passing the epsilon test against the current minimum.
  std::vector<std::size_t> potentially_optimal() const {
    std::map<double, std::size_t> best_by_size;
    for (std::size_t i = 0; i < rects_.size(); ++i) {
      const Rect& r = rects_[i];
      if (*std::min_element(r.levels.begin(), r.levels.end()) >= options_.max_depth) continue;
      auto it = best_by_size.find(r.size);
      if (it == best_by_size.end() || r.f < rects_[it->second].f) best_by_size[r.size] = i;
    }
    std::vector<std::size_t> groups;
    for (const auto& [size, idx] : best_by_size) groups.push_back(idx);

    const double f_min = -result_.value;
    const double threshold = f_min - options_.epsilon * std::abs(f_min);
    std::vector<std::size_t> chosen;
    for (std::size_t j = 0; j < groups.size(); ++j) {
      const Rect& rj = rects_[groups[j]];
      double k_low = 0.0;
      for (std::size_t i = 0; i < j; ++i) {
        const Rect& ri = rects_[groups[i]];
        k_low = std::max(k_low, (rj.f - ri.f) / (rj.size - ri.size));
      }
      if (j + 1 == groups.size()) {
        chosen.push_back(groups[j]);
        continue;
      }
      double k_high = std::numeric_limits<double>::infinity();
      for (std::size_t i = j + 1; i < groups.size(); ++i) {
        const Rect& ri = rects_[groups[i]];
        k_high = std::min(k_high, (ri.f - rj.f) / (ri.size - rj.size));
      }
      if (!(k_high > 0.0) || k_low > k_high) continue;
      if (rj.f - k_high * rj.size <= threshold) chosen.push_back(groups[j]);
    }
    // Largest rectangles first.
    std::reverse(chosen.begin(), chosen.end());
    return chosen;
  }

  // Trisects rectangle idx along all of its longest sides. Returns false,
  // leaving the rectangle untouched, if the budget cannot cover it.
  bool divide(std::size_t idx) {
    const std::vector<int> levels = rects_[idx].levels;
    const int coarsest = *std::min_element(levels.begin(), levels.end());
    std::vector<std::size_t> longest;
    for (std::size_t i = 0; i < dim_; ++i)
      if (levels[i] == coarsest) longest.push_back(i);
    if (result_.evaluations + 2 * longest.size() > options_.eval_budget) return false;

    const Eigen::VectorXd center = rects_[idx].center;
    const double delta = std::pow(3.0, -(coarsest + 1));
    struct Probe {
      std::size_t axis;
      Eigen::VectorXd lo_center, hi_center;
      double f_lo, f_hi;
    };
    std::vector<Probe> probes;
    for (std::size_t axis : longest) {
      Probe p{axis, center, center, 0.0, 0.0};
      p.lo_center(static_cast<Eigen::Index>(axis)) -= delta;
      p.hi_center(static_cast<Eigen::Index>(axis)) += delta;
      p.f_lo = evaluate(p.lo_center);
      p.f_hi = evaluate(p.hi_center);
      probes.push_back(std::move(p));
    }
    // Split first along the axis with the best probe so it ends up in the
    // largest piece.
    std::stable_sort(probes.begin(), probes.end(), [](const Probe& a, const Probe& b) {
      return std::min(a.f_lo, a.f_hi) < std::min(b.f_lo, b.f_hi);
    });

    std::vector<int> current = levels;
    for (const Probe& p : probes) {
      current[p.axis] += 1;
      const double size = half_diagonal(current);
      rects_.push_back({p.lo_center, current, p.f_lo, size});
      rects_.push_back({p.hi_center, current, p.f_hi, size});
    }
    rects_[idx].levels = current;
    rects_[idx].size = half_diagonal(current);
    return true;
  }

  const UnitObjective& objective_;
  std::size_t dim_;
  DirectOptions options_;
  std::vector<Rect> rects_;
  DirectResult result_;
};

}  // namespace

DirectResult direct_search(const UnitObjective& objective, std::size_t dim, const DirectOptions& options) {
  if (dim < 1) throw ArgumentError("direct_search: dimension must be at least 1");
  if (options.eval_budget < 1) throw ArgumentError("direct_search: evaluation budget must be at least 1");
  return Search(objective, dim, options).run();
}

}  // namespace aeo
