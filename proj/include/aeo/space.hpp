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
#include <string>
#include <variant>
#include <vector>

namespace aeo {

struct ContinuousRange {
  double lo = 0.0;
  double hi = 1.0;
  friend bool operator==(const ContinuousRange&, const ContinuousRange&) = default;
};

struct DiscreteLevels {
  std::vector<double> levels;  // strictly increasing, at least two
  friend bool operator==(const DiscreteLevels&, const DiscreteLevels&) = default;
};

struct Dimension {
  std::string name;
  std::string unit;
  std::variant<ContinuousRange, DiscreteLevels> kind;

  bool is_discrete() const { return std::holds_alternative<DiscreteLevels>(kind); }
  const std::vector<double>& levels() const { return std::get<DiscreteLevels>(kind).levels; }

  friend bool operator==(const Dimension&, const Dimension&) = default;
};

/// A setting in native units (mm, degrees, ml/h, ...), one coordinate per
/// dimension of its space.
struct DesignPoint {
  Eigen::VectorXd coords;

  DesignPoint() = default;
  explicit DesignPoint(Eigen::VectorXd c) : coords(std::move(c)) {}
  DesignPoint(std::initializer_list<double> c)
      : coords(Eigen::Map<const Eigen::VectorXd>(c.begin(), static_cast<Eigen::Index>(c.size()))) {}

  Eigen::Index size() const { return coords.size(); }
  double operator[](Eigen::Index i) const { return coords(i); }

  friend bool operator==(const DesignPoint& a, const DesignPoint& b) {
    return a.coords.size() == b.coords.size() && a.coords == b.coords;
  }
};

inline constexpr std::size_t kMaxDimensions = 32;
inline constexpr std::size_t kMaxGridSize = 1'000'000;

class ParameterSpace {
 public:
  ParameterSpace() = default;
  explicit ParameterSpace(std::vector<Dimension> dims);

  std::size_t size() const { return dims_.size(); }
  const Dimension& operator[](std::size_t i) const { return dims_[i]; }
  const std::vector<Dimension>& dims() const { return dims_; }

  bool all_discrete() const;
  // Number of grid points; 0 when any dimension is continuous.
  std::size_t grid_size() const;

  // Throws ArgumentError describing the first offending coordinate.
  void check(const DesignPoint& point) const;
  bool contains(const DesignPoint& point) const;

  // Grid point at a lexicographic rank (first dimension most significant).
  DesignPoint grid_point(std::size_t rank) const;
  std::vector<DesignPoint> grid() const;

  friend bool operator==(const ParameterSpace&, const ParameterSpace&) = default;

 private:
  std::vector<Dimension> dims_;
};

Eigen::VectorXd normalize(const ParameterSpace& space, const DesignPoint& point);
DesignPoint denormalize(const ParameterSpace& space, const Eigen::VectorXd& unit);

// Rows are the normalized points.
Eigen::MatrixXd normalize_all(const ParameterSpace& space, const std::vector<DesignPoint>& points);

/// The microfluidic fiber process: injection position d, constriction angle
/// alpha, channel width h, polymer flow f, coagulant speed v. 162 settings.
ParameterSpace fiber_process_space();

}  // namespace aeo
