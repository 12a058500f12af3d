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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aeo/campaign.hpp"
#include "aeo/simulator.hpp"

namespace aeo {

struct SimulationSummary {
  bool converged = false;
  std::string status;
  std::size_t iterations = 0;  // loop iterations after the seed batch
  // Loop iteration whose product met the target (0 = a seed did).
  std::optional<std::size_t> iterations_to_success;
  std::size_t iterations_to_bfv = 0;
  double best_found = 0.0;
  double bfv_length_pct = 0.0;
  double bfv_diameter_pct = 0.0;
  double final_length_pct = 0.0;
  double final_diameter_pct = 0.0;
};

struct SimulationRun {
  CampaignState state;
  TraceTable trace;
  SimulationSummary summary;
};

/// Seeds the campaign with `config.seed_count` distinct random grid settings,
/// then runs the loop to completion, answering every comparison with the
/// process oracle. The run is a pure function of (process, config, seed).
SimulationRun run_simulated_campaign(const SyntheticProcess& process, CampaignConfig config, std::uint64_t seed);

SimulationSummary summarize(const CampaignState& state);
json summary_to_json(const SimulationSummary& summary);

// Iteration (0 for the seed batch) at which a random-order trace first met
// the target, counting the first `seed_count` rows as the seed batch.
std::optional<std::size_t> random_iterations_to_success(const TraceTable& trace, const Targets& targets,
                                                        std::size_t seed_count, double tolerance);

struct BenchmarkRow {
  std::string method;  // "aeo" or "random"
  std::size_t runs = 0;
  std::size_t successes = 0;
  std::size_t budget = 0;
  // nullopt when fewer than half the runs succeeded.
  std::optional<double> median_iterations;
  std::vector<std::optional<std::size_t>> iterations;  // per run, nullopt = failed

  double success_rate() const { return runs ? static_cast<double>(successes) / static_cast<double>(runs) : 0.0; }
};

struct BenchmarkReport {
  BenchmarkRow aeo;
  BenchmarkRow random;
  std::vector<SimulationRun> aeo_runs;
  std::vector<TraceTable> random_traces;
};

/// Run i of both methods uses seed + i, so both start from the same seed
/// settings. The random baseline gets `random_budget` iterations after its
/// seeds (defaults to the campaign budget).
BenchmarkReport run_benchmark(const SyntheticProcess& process, const CampaignConfig& config, std::size_t repeats,
                              std::uint64_t seed, std::optional<std::size_t> random_budget = std::nullopt);

// Median with failures counted as +infinity.
std::optional<double> median_with_failures(const std::vector<std::optional<std::size_t>>& values);

/// Campaign defaults used for simulated runs of the fiber process.
CampaignConfig simulation_config(const SyntheticProcess& process);

}  // namespace aeo
