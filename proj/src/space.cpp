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

#include "aeo/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aeo/error.hpp"

namespace aeo {

namespace {

// Matching a native value to a discrete level tolerates decimal round-off
// from text formats.
constexpr double kLevelTolerance = 1e-9;

std::ptrdiff_t level_index(const std::vector<double>& levels, double value) {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double scale = std::max(1.0, std::abs(levels[i]));
    if (std::abs(levels[i] - value) <= kLevelTolerance * scale) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

}  // namespace

ParameterSpace::ParameterSpace(std::vector<Dimension> dims) : dims_(std::move(dims)) {
  if (dims_.empty() || dims_.size() > kMaxDimensions)
    throw ArgumentError("parameter space must have between 1 and 32 dimensions");
  for (const Dimension& dim : dims_) {
    if (const auto* range = std::get_if<ContinuousRange>(&dim.kind)) {
      if (!(range->lo < range->hi) || !std::isfinite(range->lo) || !std::isfinite(range->hi))
        throw ArgumentError("dimension '" + dim.name + "': requires finite lo < hi");
    } else {
      const auto& levels = dim.levels();
      if (levels.size() < 2)
        throw ArgumentError("dimension '" + dim.name + "': needs at least two levels");
      for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!std::isfinite(levels[i]))
          throw ArgumentError("dimension '" + dim.name + "': levels must be finite");
        if (i > 0 && !(levels[i - 1] < levels[i]))
          throw ArgumentError("dimension '" + dim.name + "': levels must be strictly increasing");
      }
    }
  }
}

bool ParameterSpace::all_discrete() const {
  return std::all_of(dims_.begin(), dims_.end(), [](const Dimension& d) { return d.is_discrete(); });
}

std::size_t ParameterSpace::grid_size() const {
  if (!all_discrete()) return 0;
  std::size_t total = 1;
  for (const Dimension& dim : dims_) {
    total *= dim.levels().size();
    if (total > kMaxGridSize) return total;
  }
  return total;
}

void ParameterSpace::check(const DesignPoint& point) const {
  if (static_cast<std::size_t>(point.size()) != dims_.size()) {
    std::ostringstream os;
    os << "design point has " << point.size() << " coordinates, space has " << dims_.size();
    throw ArgumentError(os.str());
  }
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const double value = point[static_cast<Eigen::Index>(i)];
    const Dimension& dim = dims_[i];
    if (const auto* range = std::get_if<ContinuousRange>(&dim.kind)) {
      if (!(value >= range->lo && value <= range->hi)) {
        std::ostringstream os;
        os << "coordinate '" << dim.name << "' = " << value << " outside [" << range->lo << ", "
           << range->hi << "]";
        throw ArgumentError(os.str());
      }
    } else if (level_index(dim.levels(), value) < 0) {
      std::ostringstream os;
      os << "coordinate '" << dim.name << "' = " << value << " is not one of its levels";
      throw ArgumentError(os.str());
    }
  }
}

bool ParameterSpace::contains(const DesignPoint& point) const {
  try {
    check(point);
    return true;
  } catch (const ArgumentError&) {
    return false;
  }
}

DesignPoint ParameterSpace::grid_point(std::size_t rank) const {
  if (!all_discrete()) throw UnsupportedSpaceError("grid_point: space has a continuous dimension");
  Eigen::VectorXd coords(static_cast<Eigen::Index>(dims_.size()));
  for (std::size_t i = dims_.size(); i-- > 0;) {
    const auto& levels = dims_[i].levels();
    coords(static_cast<Eigen::Index>(i)) = levels[rank % levels.size()];
    rank /= levels.size();
  }
  return DesignPoint(std::move(coords));
}

std::vector<DesignPoint> ParameterSpace::grid() const {
  const std::size_t n = grid_size();
  if (n == 0) throw UnsupportedSpaceError("grid: space has a continuous dimension");
  if (n > kMaxGridSize) throw ArgumentError("grid: more than 1e6 grid points");
  std::vector<DesignPoint> points;
  points.reserve(n);
  for (std::size_t r = 0; r < n; ++r) points.push_back(grid_point(r));
  return points;
}

Eigen::VectorXd normalize(const ParameterSpace& space, const DesignPoint& point) {
  space.check(point);
  Eigen::VectorXd unit(point.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    const Dimension& dim = space[i];
    if (const auto* range = std::get_if<ContinuousRange>(&dim.kind)) {
      unit(idx) = (point[idx] - range->lo) / (range->hi - range->lo);
    } else {
      const auto& levels = dim.levels();
      unit(idx) = static_cast<double>(level_index(levels, point[idx])) /
                  static_cast<double>(levels.size() - 1);
    }
  }
  return unit;
}

DesignPoint denormalize(const ParameterSpace& space, const Eigen::VectorXd& unit) {
  if (static_cast<std::size_t>(unit.size()) != space.size())
    throw ArgumentError("denormalize: dimension mismatch");
  constexpr double slack = 1e-12;
  Eigen::VectorXd coords(unit.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    const double u = unit(idx);
    if (!(u >= -slack && u <= 1.0 + slack)) {
      std::ostringstream os;
      os << "denormalize: coordinate " << i << " = " << u << " outside [0, 1]";
      throw ArgumentError(os.str());
    }
    const double clamped = std::clamp(u, 0.0, 1.0);
    const Dimension& dim = space[i];
    if (const auto* range = std::get_if<ContinuousRange>(&dim.kind)) {
      coords(idx) = clamped == 1.0 ? range->hi : range->lo + clamped * (range->hi - range->lo);
    } else {
      const auto& levels = dim.levels();
      const auto last = static_cast<double>(levels.size() - 1);
      coords(idx) = levels[static_cast<std::size_t>(std::lround(clamped * last))];
    }
  }
  return DesignPoint(std::move(coords));
}

Eigen::MatrixXd normalize_all(const ParameterSpace& space, const std::vector<DesignPoint>& points) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(space.size()));
  for (std::size_t i = 0; i < points.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = normalize(space, points[i]).transpose();
  return out;
}

ParameterSpace fiber_process_space() {
  return ParameterSpace({
      {"position", "mm", DiscreteLevels{{0, 15, 30}}},
      {"angle", "deg", DiscreteLevels{{10, 25}}},
      {"channel_width", "mm", DiscreteLevels{{3, 6, 9}}},
      {"polymer_flow", "ml/h", DiscreteLevels{{80, 110, 140}}},
      {"coagulant_speed", "cm/s", DiscreteLevels{{43, 68, 93}}},
  });
}

}  // namespace aeo
