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

#include "aeo/campaign.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "aeo/error.hpp"

namespace aeo {

void CampaignConfig::validate() const {
  if (space.size() == 0) throw ArgumentError("config: parameter space is empty");
  targets.validate();
  weights.validate();
  gp.kernel.validate();
  if (!(gp.obs_noise_variance >= 0.0)) throw ArgumentError("config: observation noise must be nonnegative");
  if (gp.select_lengthscale && gp.lengthscale_grid.empty())
    throw ArgumentError("config: length-scale selection needs a non-empty grid");
  for (double theta : gp.lengthscale_grid)
    if (!(theta > 0.0)) throw ArgumentError("config: grid length-scales must be positive");
  pref.validate();
  if (acquisition.direct_budget < 1) throw ArgumentError("config: DIRECT budget must be at least 1");
  if (acquisition.mode == AcquisitionMode::Exhaustive && !space.all_discrete())
    throw UnsupportedSpaceError("config: exhaustive acquisition needs an all-discrete space");
  if (iteration_budget < 1) throw ArgumentError("config: iteration budget must be at least 1");
  if (seed_count < 1) throw ArgumentError("config: seed count must be at least 1");
  if (!(stop_tolerance > 0.0)) throw ArgumentError("config: stop tolerance must be positive");
}

const char* to_string(CampaignStatus status) {
  switch (status) {
    case CampaignStatus::AwaitingSeed: return "awaiting_seed";
    case CampaignStatus::AwaitingComparisons: return "awaiting_comparisons";
    case CampaignStatus::Ready: return "ready";
    case CampaignStatus::AwaitingResult: return "awaiting_result";
    case CampaignStatus::Converged: return "converged";
    case CampaignStatus::BudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

CampaignStatus status_from_string(const std::string& text) {
  for (auto s : {CampaignStatus::AwaitingSeed, CampaignStatus::AwaitingComparisons, CampaignStatus::Ready,
                 CampaignStatus::AwaitingResult, CampaignStatus::Converged, CampaignStatus::BudgetExhausted})
    if (text == to_string(s)) return s;
  throw ArgumentError("unknown campaign status '" + text + "'");
}

std::size_t CampaignState::iteration() const {
  if (observations.empty()) return 0;
  return observations.back().iteration;
}

std::optional<double> CampaignState::best_found() const {
  if (trace.empty()) return std::nullopt;
  return trace.back().best_found;
}

namespace {

Eigen::MatrixXd observed_inputs(const CampaignState& state) {
  std::vector<DesignPoint> points;
  points.reserve(state.observations.size());
  for (const Observation& o : state.observations) points.push_back(o.point);
  return normalize_all(state.config.space, points);
}

// Step 4 for every observation: quality from the current preferences, then
// the combined utility and its running minimum.
void rescore(CampaignState& state) {
  const CampaignConfig& cfg = state.config;
  const QualityScores quality = quality_scores(observed_inputs(state), state.preferences, cfg.pref);
  std::vector<TraceEntry> trace;
  trace.reserve(state.observations.size());
  std::vector<double> utilities;
  for (std::size_t i = 0; i < state.observations.size(); ++i) {
    const Observation& o = state.observations[i];
    TraceEntry e;
    e.observation = i;
    e.iteration = o.iteration;
    e.f_length = length_score(o.measurement, cfg.targets);
    e.f_diameter = diameter_score(o.measurement, cfg.targets);
    e.f_quality = quality.normalized(static_cast<Eigen::Index>(i));
    e.utility = combined_utility(std::min(e.f_length, 1.0), std::min(e.f_diameter, 1.0), e.f_quality, cfg.weights);
    utilities.push_back(e.utility);
    trace.push_back(e);
  }
  const std::vector<double> bfv = best_found_values(utilities);
  for (std::size_t i = 0; i < trace.size(); ++i) trace[i].best_found = bfv[i];
  state.trace = std::move(trace);

  AuditRecord record{state.observations.size(), state.preferences.size(), std::move(utilities)};
  if (state.audit.empty() || !(state.audit.back() == record)) state.audit.push_back(std::move(record));
}

// Step 5: runs once the newest batch is fully judged.
void close_iteration(CampaignState& state) {
  rescore(state);
  const CampaignConfig& cfg = state.config;
  const std::size_t batch = state.observations.back().iteration;
  bool met = false;
  for (const Observation& o : state.observations)
    if (o.iteration == batch && target_met(o.measurement, cfg.targets, cfg.stop_tolerance)) met = true;
  if (met)
    state.status = CampaignStatus::Converged;
  else if (state.iteration() >= cfg.iteration_budget)
    state.status = CampaignStatus::BudgetExhausted;
  else
    state.status = CampaignStatus::Ready;
}

void require_valid(const CampaignConfig& cfg, const DesignPoint& point, const Measurement& m) {
  cfg.space.check(point);
  m.validate();
}

}  // namespace

CampaignState new_campaign(const CampaignConfig& config) {
  config.validate();
  CampaignState state;
  state.config = config;
  state.rng = Rng(config.rng_seed);
  return state;
}

CampaignState submit_seeds(const CampaignState& current, const std::vector<SeedObservation>& seeds) {
  if (current.status != CampaignStatus::AwaitingSeed) throw StateError("seeds were already recorded");
  if (seeds.size() != current.config.seed_count)
    throw ArgumentError("expected " + std::to_string(current.config.seed_count) + " seed observations, got " +
                        std::to_string(seeds.size()));
  for (const SeedObservation& s : seeds) require_valid(current.config, s.point, s.measurement);

  CampaignState state = current;
  for (std::size_t j = 0; j < seeds.size(); ++j) {
    state.observations.push_back({seeds[j].point, seeds[j].measurement, seeds[j].image_refs, 0});
    // Seed j (1-based position j + 1) is judged against earlier seeds with
    // the same logarithmic rule as loop iterations.
    for (std::size_t prior : schedule_comparisons(j + 1, j, state.rng)) state.pending.push_back({j, prior});
  }
  if (state.pending.empty())
    close_iteration(state);
  else
    state.status = CampaignStatus::AwaitingComparisons;
  return state;
}

CampaignState init_campaign(const CampaignConfig& config, const std::vector<SeedObservation>& seeds) {
  return submit_seeds(new_campaign(config), seeds);
}

std::pair<CampaignState, Recommendation> next_recommendation(const CampaignState& current) {
  if (current.status == CampaignStatus::AwaitingResult) return {current, *current.recommendation};
  if (current.status == CampaignStatus::AwaitingComparisons)
    throw StateError(std::to_string(current.pending.size()) + " comparison(s) still pending");
  if (current.status != CampaignStatus::Ready)
    throw StateError(std::string("no recommendation in status ") + to_string(current.status));

  CampaignState state = current;
  rescore(state);
  const CampaignConfig& cfg = state.config;

  const Eigen::MatrixXd inputs = observed_inputs(state);
  Eigen::VectorXd targets(static_cast<Eigen::Index>(state.trace.size()));
  for (std::size_t i = 0; i < state.trace.size(); ++i) targets(static_cast<Eigen::Index>(i)) = state.trace[i].utility;
  if (cfg.gp.center_targets) targets.array() -= targets.mean();

  const GPModel<double> model =
      cfg.gp.select_lengthscale
          ? fit_select_lengthscale<double>(inputs, targets, cfg.gp.kernel, cfg.gp.obs_noise_variance,
                                           cfg.gp.lengthscale_grid)
          : fit<double>(inputs, targets, cfg.gp.kernel, cfg.gp.obs_noise_variance);

  std::vector<DesignPoint> observed;
  for (const Observation& o : state.observations) observed.push_back(o.point);
  const double best = targets.minCoeff();
  const AcquisitionResult acq = recommend_next(model, cfg.space, best, cfg.acquisition, observed);

  Recommendation rec{acq.point, acq.acquisition_value, state.iteration() + 1, acq.duplicate,
                     model.kernel.lengthscale};
  state.recommendation = rec;
  state.status = CampaignStatus::AwaitingResult;
  return {std::move(state), std::move(rec)};
}

CampaignState submit_result(const CampaignState& current, const DesignPoint& point, const Measurement& measurement,
                            const std::vector<std::string>& image_refs) {
  if (current.status != CampaignStatus::AwaitingResult || !current.recommendation)
    throw StateError(std::string("no result expected in status ") + to_string(current.status));
  if (!(point == current.recommendation->point))
    throw ProtocolError("result is for a setting other than the outstanding recommendation");
  require_valid(current.config, point, measurement);

  CampaignState state = current;
  const std::size_t iteration = state.recommendation->iteration;
  state.observations.push_back({point, measurement, image_refs, iteration});
  state.recommendation.reset();
  const std::size_t index = state.observations.size() - 1;
  for (std::size_t prior : schedule_comparisons(index + 1, index, state.rng)) state.pending.push_back({index, prior});
  if (state.pending.empty())
    close_iteration(state);
  else
    state.status = CampaignStatus::AwaitingComparisons;
  return state;
}

CampaignState submit_comparison(const CampaignState& current, std::size_t prior_index, ComparisonOutcome outcome,
                                std::optional<std::size_t> current_index) {
  if (current.status != CampaignStatus::AwaitingComparisons)
    throw StateError(std::string("no comparison expected in status ") + to_string(current.status));
  const std::size_t judged = current_index.value_or(current.pending.front().current);
  const auto it = std::find(current.pending.begin(), current.pending.end(), PendingComparison{judged, prior_index});
  if (it == current.pending.end())
    throw ProtocolError("comparison of observation " + std::to_string(judged) + " against " +
                        std::to_string(prior_index) + " is not pending");

  CampaignState state = current;
  record_outcome(state.preferences, judged, prior_index, outcome);
  state.pending.erase(state.pending.begin() + (it - current.pending.begin()));
  if (state.pending.empty()) close_iteration(state);
  return state;
}

TraceTable export_trace(const CampaignState& state) {
  TraceTable table;
  for (const Dimension& d : state.config.space.dims()) table.coordinate_names.push_back(d.name);
  for (const TraceEntry& e : state.trace) {
    const Observation& o = state.observations[e.observation];
    TraceRow row;
    row.iteration = e.iteration;
    row.point = o.point;
    row.measurement = o.measurement;
    row.f_length = e.f_length;
    row.f_diameter = e.f_diameter;
    row.f_quality = e.f_quality;
    row.utility = e.utility;
    row.best_found = e.best_found;
    row.length_pct = length_deviation_pct(o.measurement, state.config.targets);
    row.diameter_pct = diameter_deviation_pct(o.measurement, state.config.targets);
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

std::string fmt_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

const std::vector<std::string> kTrailingColumns{"L", "D", "f_L", "f_D", "f_Q", "y", "BFV", "L_pct", "D_pct"};

}  // namespace

std::string trace_to_csv(const TraceTable& table) {
  std::string out = "iteration";
  for (const std::string& name : table.coordinate_names) out += "," + name;
  for (const std::string& name : kTrailingColumns) out += "," + name;
  out += "\n";
  for (const TraceRow& r : table.rows) {
    out += std::to_string(r.iteration);
    for (Eigen::Index i = 0; i < r.point.size(); ++i) out += "," + fmt_number(r.point[i]);
    for (double v : {r.measurement.median_length, r.measurement.median_diameter, r.f_length, r.f_diameter,
                     r.f_quality, r.utility, r.best_found, r.length_pct, r.diameter_pct})
      out += "," + fmt_number(v);
    out += "\n";
  }
  return out;
}

TraceTable trace_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw ArgumentError("trace CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 1 + kTrailingColumns.size() + 1 || header.front() != "iteration")
    throw ArgumentError("trace CSV header is not recognised");
  const std::size_t dims = header.size() - 1 - kTrailingColumns.size();
  for (std::size_t i = 0; i < kTrailingColumns.size(); ++i)
    if (header[1 + dims + i] != kTrailingColumns[i])
      throw ArgumentError("trace CSV: expected column '" + kTrailingColumns[i] + "'");

  TraceTable table;
  table.coordinate_names.assign(header.begin() + 1, header.begin() + 1 + static_cast<std::ptrdiff_t>(dims));
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw ArgumentError("trace CSV line " + std::to_string(line_no) + ": wrong number of cells");
    std::vector<double> v;
    try {
      for (const std::string& c : cells) v.push_back(std::stod(c));
    } catch (const std::exception&) {
      throw ArgumentError("trace CSV line " + std::to_string(line_no) + ": non-numeric cell");
    }
    TraceRow row;
    row.iteration = static_cast<std::size_t>(v[0]);
    row.point.coords = Eigen::Map<const Eigen::VectorXd>(v.data() + 1, static_cast<Eigen::Index>(dims));
    const double* t = v.data() + 1 + dims;
    row.measurement = {t[0], t[1]};
    row.f_length = t[2];
    row.f_diameter = t[3];
    row.f_quality = t[4];
    row.utility = t[5];
    row.best_found = t[6];
    row.length_pct = t[7];
    row.diameter_pct = t[8];
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace aeo
