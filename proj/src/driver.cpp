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

#include "aeo/driver.hpp"

#include <algorithm>
#include <limits>

#include "aeo/error.hpp"

namespace aeo {

namespace {

// Measurement and comparison noise come from a stream independent of the
// one that picks seed settings.
constexpr std::uint64_t kNoiseStreamSalt = 0x9E3779B97F4A7C15ULL;

}  // namespace

CampaignConfig simulation_config(const SyntheticProcess& process) {
  CampaignConfig config;
  config.space = process.space;
  config.targets = process.targets;
  config.gp.center_targets = true;
  return config;
}

SimulationRun run_simulated_campaign(const SyntheticProcess& process, CampaignConfig config, std::uint64_t seed) {
  if (!(config.space == process.space)) throw ArgumentError("simulation: campaign space differs from the process space");
  const std::size_t grid = process.space.grid_size();
  if (grid == 0) throw UnsupportedSpaceError("simulation: process space must be discrete");
  if (config.seed_count > grid) throw ArgumentError("simulation: more seeds than grid points");
  config.rng_seed = seed;

  Rng selection(seed);
  Rng noise(seed ^ kNoiseStreamSalt);
  std::vector<SeedObservation> seeds;
  for (std::size_t rank : selection.sample_without_replacement(grid, config.seed_count)) {
    DesignPoint point = process.space.grid_point(rank);
    Measurement m = simulate_experiment(process, point, noise);
    seeds.push_back({std::move(point), m, {}});
  }

  CampaignState state = init_campaign(config, seeds);
  while (!state.finished()) {
    if (state.status == CampaignStatus::AwaitingComparisons) {
      const PendingComparison next = state.pending.front();
      const ComparisonOutcome outcome = oracle_compare(process, state.observations[next.current].point,
                                                       state.observations[next.prior].point, noise);
      state = submit_comparison(state, next.prior, outcome, next.current);
    } else if (state.status == CampaignStatus::Ready) {
      auto [after, rec] = next_recommendation(state);
      const Measurement m = simulate_experiment(process, rec.point, noise);
      state = submit_result(after, rec.point, m);
    } else {
      throw StateError(std::string("simulation stuck in status ") + to_string(state.status));
    }
  }
  SimulationRun run;
  run.trace = export_trace(state);
  run.summary = summarize(state);
  run.state = std::move(state);
  return run;
}

SimulationSummary summarize(const CampaignState& state) {
  SimulationSummary s;
  s.status = to_string(state.status);
  s.converged = state.status == CampaignStatus::Converged;
  s.iterations = state.iteration();
  const Targets& targets = state.config.targets;
  for (const Observation& o : state.observations) {
    if (target_met(o.measurement, targets, state.config.stop_tolerance)) {
      s.iterations_to_success = o.iteration;
      break;
    }
  }
  if (!state.trace.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < state.trace.size(); ++i)
      if (state.trace[i].utility < state.trace[best].utility) best = i;
    const Observation& o = state.observations[state.trace[best].observation];
    s.iterations_to_bfv = o.iteration;
    s.best_found = state.trace.back().best_found;
    s.bfv_length_pct = length_deviation_pct(o.measurement, targets);
    s.bfv_diameter_pct = diameter_deviation_pct(o.measurement, targets);
  }
  if (!state.observations.empty()) {
    s.final_length_pct = length_deviation_pct(state.observations.back().measurement, targets);
    s.final_diameter_pct = diameter_deviation_pct(state.observations.back().measurement, targets);
  }
  return s;
}

json summary_to_json(const SimulationSummary& s) {
  return {{"converged", s.converged},
          {"status", s.status},
          {"iterations", s.iterations},
          {"iterations_to_success", s.iterations_to_success ? json(*s.iterations_to_success) : json(nullptr)},
          {"iterations_to_BFV", s.iterations_to_bfv},
          {"BFV", s.best_found},
          {"L_pct", s.bfv_length_pct},
          {"D_pct", s.bfv_diameter_pct},
          {"final_L_pct", s.final_length_pct},
          {"final_D_pct", s.final_diameter_pct}};
}

std::optional<std::size_t> random_iterations_to_success(const TraceTable& trace, const Targets& targets,
                                                        std::size_t seed_count, double tolerance) {
  for (std::size_t i = 0; i < trace.rows.size(); ++i)
    if (target_met(trace.rows[i].measurement, targets, tolerance)) return i < seed_count ? 0 : i - seed_count + 1;
  return std::nullopt;
}

std::optional<double> median_with_failures(const std::vector<std::optional<std::size_t>>& values) {
  if (values.empty()) return std::nullopt;
  std::vector<double> v;
  for (const auto& x : values)
    v.push_back(x ? static_cast<double>(*x) : std::numeric_limits<double>::infinity());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  const double m = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  if (!std::isfinite(m)) return std::nullopt;
  return m;
}

BenchmarkReport run_benchmark(const SyntheticProcess& process, const CampaignConfig& config, std::size_t repeats,
                              std::uint64_t seed, std::optional<std::size_t> random_budget) {
  if (repeats < 1) throw ArgumentError("benchmark: repeats must be at least 1");
  const std::size_t budget = random_budget.value_or(config.iteration_budget);
  const std::size_t grid = process.space.grid_size();
  const std::size_t random_samples = std::min(grid, config.seed_count + budget);

  BenchmarkReport report;
  report.aeo.method = "aeo";
  report.aeo.budget = config.iteration_budget;
  report.random.method = "random";
  report.random.budget = random_samples - std::min(random_samples, config.seed_count);
  for (std::size_t i = 0; i < repeats; ++i) {
    const std::uint64_t run_seed = seed + i;
    SimulationRun run = run_simulated_campaign(process, config, run_seed);
    const auto aeo_success = run.summary.iterations_to_success;
    report.aeo.iterations.push_back(aeo_success && *aeo_success <= config.iteration_budget ? aeo_success
                                                                                            : std::nullopt);
    report.aeo_runs.push_back(std::move(run));

    Rng rng(run_seed);
    TraceTable trace = random_baseline_campaign(process, config.targets, random_samples, rng, config.weights);
    report.random.iterations.push_back(
        random_iterations_to_success(trace, config.targets, config.seed_count, config.stop_tolerance));
    report.random_traces.push_back(std::move(trace));
  }
  for (BenchmarkRow* row : {&report.aeo, &report.random}) {
    row->runs = repeats;
    row->successes = static_cast<std::size_t>(
        std::count_if(row->iterations.begin(), row->iterations.end(), [](const auto& x) { return x.has_value(); }));
    row->median_iterations = median_with_failures(row->iterations);
  }
  return report;
}

}  // namespace aeo
