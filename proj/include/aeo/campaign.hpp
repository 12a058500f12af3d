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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aeo/acquisition.hpp"
#include "aeo/gp.hpp"
#include "aeo/preference.hpp"
#include "aeo/random.hpp"
#include "aeo/scoring.hpp"
#include "aeo/space.hpp"

namespace aeo {

struct GpSettings {
  KernelConfig<double> kernel{0.2, 1.0};
  double obs_noise_variance = 1e-4;
  // Pick the length-scale with the best marginal likelihood on each refit.
  bool select_lengthscale = false;
  std::vector<double> lengthscale_grid = default_lengthscale_grid();
  // Fit the surrogate to utilities minus their mean instead of the raw values.
  bool center_targets = false;

  friend bool operator==(const GpSettings&, const GpSettings&) = default;
};

struct CampaignConfig {
  ParameterSpace space = fiber_process_space();
  Targets targets;
  Weights weights;
  GpSettings gp;
  PrefConfig pref;
  AcquisitionConfig acquisition;
  std::size_t iteration_budget = 20;
  std::size_t seed_count = 5;
  double stop_tolerance = kDefaultStopTolerance;
  std::uint64_t rng_seed = 0;

  void validate() const;
  friend bool operator==(const CampaignConfig&, const CampaignConfig&) = default;
};

struct Observation {
  DesignPoint point;
  Measurement measurement;
  std::vector<std::string> image_refs;
  std::size_t iteration = 0;  // 0 for the seed batch

  friend bool operator==(const Observation&, const Observation&) = default;
};

struct SeedObservation {
  DesignPoint point;
  Measurement measurement;
  std::vector<std::string> image_refs;
};

/// The observation `current` still has to be judged against `prior`.
struct PendingComparison {
  std::size_t current = 0;
  std::size_t prior = 0;
  friend bool operator==(const PendingComparison&, const PendingComparison&) = default;
};

enum class CampaignStatus { AwaitingSeed, AwaitingComparisons, Ready, AwaitingResult, Converged, BudgetExhausted };

const char* to_string(CampaignStatus status);
CampaignStatus status_from_string(const std::string& text);

struct TraceEntry {
  std::size_t observation = 0;
  std::size_t iteration = 0;
  double f_length = 0.0;
  double f_diameter = 0.0;
  double f_quality = 0.0;
  double utility = 0.0;
  double best_found = 0.0;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

// Utilities as recomputed after a given number of observations. Append-only.
struct AuditRecord {
  std::size_t observations = 0;
  std::size_t preferences = 0;
  std::vector<double> utilities;

  friend bool operator==(const AuditRecord&, const AuditRecord&) = default;
};

struct Recommendation {
  DesignPoint point;
  double acquisition_value = 0.0;
  std::size_t iteration = 0;
  bool duplicate = false;
  double lengthscale = 0.0;  // GP length-scale the recommendation was made with

  friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

struct CampaignState {
  CampaignConfig config;
  CampaignStatus status = CampaignStatus::AwaitingSeed;
  std::vector<Observation> observations;
  PreferenceSet preferences;
  std::vector<PendingComparison> pending;
  std::optional<Recommendation> recommendation;
  std::vector<TraceEntry> trace;
  std::vector<AuditRecord> audit;
  Rng rng;

  // Results received after the seed batch.
  std::size_t iteration() const;
  std::optional<double> best_found() const;
  bool finished() const {
    return status == CampaignStatus::Converged || status == CampaignStatus::BudgetExhausted;
  }

  friend bool operator==(const CampaignState&, const CampaignState&) = default;
};

CampaignState new_campaign(const CampaignConfig& config);
CampaignState submit_seeds(const CampaignState& state, const std::vector<SeedObservation>& seeds);
CampaignState init_campaign(const CampaignConfig& config, const std::vector<SeedObservation>& seeds);

/// Recomputes quality and utilities of every observation from the current
/// preferences, refits the surrogate and maximizes EI. Calling it again while
/// the result is outstanding returns the same recommendation.
std::pair<CampaignState, Recommendation> next_recommendation(const CampaignState& state);

CampaignState submit_result(const CampaignState& state, const DesignPoint& point, const Measurement& measurement,
                            const std::vector<std::string>& image_refs = {});

/// Records the judgement of a pending pair. `current` defaults to the
/// observation at the head of the pending queue.
CampaignState submit_comparison(const CampaignState& state, std::size_t prior_index, ComparisonOutcome outcome,
                                std::optional<std::size_t> current = std::nullopt);

struct TraceRow {
  std::size_t iteration = 0;
  DesignPoint point;
  Measurement measurement;
  double f_length = 0.0;
  double f_diameter = 0.0;
  double f_quality = 0.0;
  double utility = 0.0;
  double best_found = 0.0;
  double length_pct = 0.0;
  double diameter_pct = 0.0;
};

struct TraceTable {
  std::vector<std::string> coordinate_names;
  std::vector<TraceRow> rows;
};

TraceTable export_trace(const CampaignState& state);
std::string trace_to_csv(const TraceTable& table);
TraceTable trace_from_csv(const std::string& text);

}  // namespace aeo
