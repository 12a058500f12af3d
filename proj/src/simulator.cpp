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

#include "aeo/simulator.hpp"

#include <cmath>

#include "aeo/error.hpp"

namespace aeo {

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.begin(), static_cast<Eigen::Index>(v.size()));
}

Eigen::VectorXd vector_from_json(const json& doc, const char* what) {
  const auto v = doc.get<std::vector<double>>();
  if (v.empty()) throw ArgumentError(std::string("process: empty ") + what);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

double FactorResponse::operator()(const Eigen::VectorXd& u) const {
  const Eigen::ArrayXd d = (u - center).array();
  return base * (1.0 + curvature.array() * d * d).prod();
}

double QualityResponse::operator()(const Eigen::VectorXd& u) const {
  const Eigen::ArrayXd d = (u - center).array();
  return std::exp(-(weight.array() * d * d).sum());
}

void SyntheticProcess::validate() const {
  const auto dim = static_cast<Eigen::Index>(space.size());
  for (const FactorResponse* r : {&length, &diameter}) {
    if (!(r->base > 0.0)) throw ArgumentError("process: response base must be positive");
    if (r->center.size() != dim || r->curvature.size() != dim)
      throw ArgumentError("process: response center/curvature must match the space dimension");
    if ((r->curvature.array() < 0.0).any()) throw ArgumentError("process: curvatures must be nonnegative");
  }
  if (quality.center.size() != dim || quality.weight.size() != dim)
    throw ArgumentError("process: quality center/weight must match the space dimension");
  if ((quality.weight.array() < 0.0).any()) throw ArgumentError("process: quality weights must be nonnegative");
  if (!(length_noise >= 0.0 && diameter_noise >= 0.0 && comparison_noise >= 0.0))
    throw ArgumentError("process: noise levels must be nonnegative");
  if (!(tie_threshold >= 0.0)) throw ArgumentError("process: tie threshold must be nonnegative");
  targets.validate();
}

Measurement SyntheticProcess::noiseless(const DesignPoint& point) const {
  const Eigen::VectorXd u = normalize(space, point);
  return {length(u), diameter(u)};
}

double SyntheticProcess::quality_at(const DesignPoint& point) const { return quality(normalize(space, point)); }

std::vector<std::string> builtin_process_names() { return {"target1_achievable", "target3_unachievable"}; }

// Axes in normalized units: position, angle, channel width, polymer flow,
// coagulant speed. Coagulant speed and channel width carry the largest
// curvature in both responses, polymer flow a moderate one for length.
SyntheticProcess builtin_process(const std::string& name) {
  SyntheticProcess p;
  p.name = name;
  p.length_noise = 0.03;
  p.diameter_noise = 0.03;
  p.comparison_noise = 0.05;
  p.tie_threshold = 0.05;
  if (name == "target1_achievable") {
    // Optimum: position 15 mm, angle 10 deg, width 6 mm, flow 110 ml/h,
    // speed 68 cm/s, giving L = 70 um and D = 1 um exactly.
    p.targets = Targets::with_default_bounds(70.0, 1.0);
    const Eigen::VectorXd optimum = vec({0.5, 0.0, 0.5, 0.5, 0.5});
    p.length = {70.0, optimum, vec({0.3, 0.1, 2.0, 0.8, 3.0})};
    p.diameter = {1.0, optimum, vec({0.2, 0.1, 1.5, 0.3, 2.5})};
    p.quality = {optimum, vec({0.5, 0.5, 1.0, 0.5, 1.0})};
  } else if (name == "target3_unachievable") {
    // Length 50 um is reachable; the thinnest fibers are 0.8 um against a
    // 0.4 um target.
    p.targets = Targets::with_default_bounds(50.0, 0.4);
    const Eigen::VectorXd optimum = vec({0.5, 1.0, 1.0, 0.5, 0.5});
    p.length = {50.0, optimum, vec({0.3, 0.1, 2.0, 0.8, 3.0})};
    p.diameter = {0.8, optimum, vec({0.2, 0.1, 1.5, 0.3, 2.5})};
    p.quality = {optimum, vec({0.5, 0.5, 1.0, 0.5, 1.0})};
  } else {
    throw ArgumentError("unknown process '" + name + "'");
  }
  p.validate();
  return p;
}

SyntheticProcess process_from_json(const json& doc) {
  try {
    if (doc.is_string()) return builtin_process(doc.get<std::string>());
    SyntheticProcess p;
    if (doc.contains("builtin")) p = builtin_process(doc.at("builtin").get<std::string>());
    p.name = doc.value("name", p.name.empty() ? std::string("custom") : p.name);
    if (doc.contains("space")) p.space = space_from_json(doc.at("space"));
    if (doc.contains("targets")) {
      const json& t = doc.at("targets");
      p.targets = Targets::with_default_bounds(t.at("length").get<double>(), t.at("diameter").get<double>());
      p.targets.max_length = t.value("max_length", p.targets.max_length);
      p.targets.max_diameter = t.value("max_diameter", p.targets.max_diameter);
    }
    const auto read_factor = [](const json& r, FactorResponse& out) {
      out.base = r.at("base").get<double>();
      out.center = vector_from_json(r.at("center"), "center");
      out.curvature = vector_from_json(r.at("curvature"), "curvature");
    };
    if (doc.contains("length")) read_factor(doc.at("length"), p.length);
    if (doc.contains("diameter")) read_factor(doc.at("diameter"), p.diameter);
    if (doc.contains("quality")) {
      p.quality.center = vector_from_json(doc.at("quality").at("center"), "quality center");
      p.quality.weight = vector_from_json(doc.at("quality").at("weight"), "quality weight");
    }
    p.length_noise = doc.value("length_noise", p.length_noise);
    p.diameter_noise = doc.value("diameter_noise", p.diameter_noise);
    p.comparison_noise = doc.value("comparison_noise", p.comparison_noise);
    p.tie_threshold = doc.value("tie_threshold", p.tie_threshold);
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("process definition: ") + e.what());
  }
}

json process_to_json(const SyntheticProcess& p) {
  const auto factor = [](const FactorResponse& r) {
    return json{{"base", r.base}, {"center", to_std(r.center)}, {"curvature", to_std(r.curvature)}};
  };
  return {{"name", p.name},
          {"space", space_to_json(p.space)},
          {"targets",
           {{"length", p.targets.target_length},
            {"diameter", p.targets.target_diameter},
            {"max_length", p.targets.max_length},
            {"max_diameter", p.targets.max_diameter}}},
          {"length", factor(p.length)},
          {"diameter", factor(p.diameter)},
          {"quality", {{"center", to_std(p.quality.center)}, {"weight", to_std(p.quality.weight)}}},
          {"length_noise", p.length_noise},
          {"diameter_noise", p.diameter_noise},
          {"comparison_noise", p.comparison_noise},
          {"tie_threshold", p.tie_threshold}};
}

Measurement simulate_experiment(const SyntheticProcess& process, const DesignPoint& point, Rng& rng) {
  const Measurement clean = process.noiseless(point);
  // Both draws are always taken so the stream advances identically.
  const double e_length = rng.normal() * process.length_noise;
  const double e_diameter = rng.normal() * process.diameter_noise;
  return {std::max(0.0, clean.median_length * (1.0 + e_length)),
          std::max(0.0, clean.median_diameter * (1.0 + e_diameter))};
}

ComparisonOutcome oracle_compare(const SyntheticProcess& process, const DesignPoint& current,
                                 const DesignPoint& prior, Rng& rng) {
  const double gap =
      process.quality_at(current) - process.quality_at(prior) + rng.normal() * process.comparison_noise;
  if (std::abs(gap) < process.tie_threshold) return ComparisonOutcome::DifficultToTell;
  return gap > 0.0 ? ComparisonOutcome::CurrentBetter : ComparisonOutcome::PriorBetter;
}

TraceTable random_baseline_campaign(const SyntheticProcess& process, const Targets& targets, std::size_t iterations,
                                    Rng& rng, const Weights& weights) {
  if (iterations < 1) throw ArgumentError("random baseline: at least one iteration is required");
  const std::size_t grid = process.space.grid_size();
  if (grid == 0) throw UnsupportedSpaceError("random baseline: process space must be discrete");
  if (iterations > grid)
    throw ArgumentError("random baseline: " + std::to_string(iterations) + " iterations exceed the " +
                        std::to_string(grid) + "-point grid");
  const std::vector<std::size_t> picks = rng.sample_without_replacement(grid, iterations);

  TraceTable table;
  for (const Dimension& d : process.space.dims()) table.coordinate_names.push_back(d.name);
  std::vector<double> utilities;
  for (std::size_t i = 0; i < picks.size(); ++i) {
    TraceRow row;
    row.iteration = i + 1;
    row.point = process.space.grid_point(picks[i]);
    row.measurement = simulate_experiment(process, row.point, rng);
    row.f_length = length_score(row.measurement, targets);
    row.f_diameter = diameter_score(row.measurement, targets);
    row.f_quality = process.quality_at(row.point);
    row.utility = combined_utility(std::min(row.f_length, 1.0), std::min(row.f_diameter, 1.0), row.f_quality, weights);
    row.length_pct = length_deviation_pct(row.measurement, targets);
    row.diameter_pct = diameter_deviation_pct(row.measurement, targets);
    utilities.push_back(row.utility);
    table.rows.push_back(std::move(row));
  }
  const std::vector<double> bfv = best_found_values(utilities);
  for (std::size_t i = 0; i < bfv.size(); ++i) table.rows[i].best_found = bfv[i];
  return table;
}

}  // namespace aeo
