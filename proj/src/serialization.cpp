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

#include "aeo/serialization.hpp"

#include "aeo/error.hpp"

namespace aeo {

namespace {

template <typename T>
T get_or(const json& doc, const char* key, T fallback) {
  if (!doc.is_object() || !doc.contains(key) || doc.at(key).is_null()) return fallback;
  return doc.at(key).get<T>();
}

const char* mode_name(AcquisitionMode mode) {
  switch (mode) {
    case AcquisitionMode::Auto: return "auto";
    case AcquisitionMode::Exhaustive: return "exhaustive";
    case AcquisitionMode::Direct: return "direct";
  }
  return "auto";
}

AcquisitionMode mode_from_string(const std::string& text) {
  if (text == "auto") return AcquisitionMode::Auto;
  if (text == "exhaustive") return AcquisitionMode::Exhaustive;
  if (text == "direct") return AcquisitionMode::Direct;
  throw ArgumentError("unknown acquisition mode '" + text + "'");
}

}  // namespace

json point_to_json(const DesignPoint& point) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < point.size(); ++i) arr.push_back(point[i]);
  return arr;
}

DesignPoint point_from_json(const json& doc) {
  if (!doc.is_array()) throw ArgumentError("design point must be a JSON array of numbers");
  Eigen::VectorXd coords(static_cast<Eigen::Index>(doc.size()));
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (!doc[i].is_number()) throw ArgumentError("design point coordinates must be numbers");
    coords(static_cast<Eigen::Index>(i)) = doc[i].get<double>();
  }
  return DesignPoint(std::move(coords));
}

json space_to_json(const ParameterSpace& space) {
  json dims = json::array();
  for (const Dimension& d : space.dims()) {
    json item{{"name", d.name}, {"unit", d.unit}};
    if (const auto* r = std::get_if<ContinuousRange>(&d.kind)) {
      item["lo"] = r->lo;
      item["hi"] = r->hi;
    } else {
      item["levels"] = d.levels();
    }
    dims.push_back(std::move(item));
  }
  return {{"dims", dims}};
}

ParameterSpace space_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("dims") || !doc.at("dims").is_array())
    throw ArgumentError("space: expected an object with a 'dims' array");
  std::vector<Dimension> dims;
  for (const json& item : doc.at("dims")) {
    Dimension d;
    d.name = get_or<std::string>(item, "name", "x" + std::to_string(dims.size() + 1));
    d.unit = get_or<std::string>(item, "unit", "");
    if (item.contains("levels")) {
      d.kind = DiscreteLevels{item.at("levels").get<std::vector<double>>()};
    } else if (item.contains("lo") && item.contains("hi")) {
      d.kind = ContinuousRange{item.at("lo").get<double>(), item.at("hi").get<double>()};
    } else {
      throw ArgumentError("space: dimension '" + d.name + "' needs 'levels' or 'lo'/'hi'");
    }
    dims.push_back(std::move(d));
  }
  return ParameterSpace(std::move(dims));
}

CampaignConfig config_from_json(const json& doc) {
  try {
    CampaignConfig cfg;
    if (!doc.is_object()) throw ArgumentError("config must be a JSON object");
    if (doc.contains("space")) cfg.space = space_from_json(doc.at("space"));

    if (doc.contains("targets")) {
      const json& t = doc.at("targets");
      const double length = t.at("length").get<double>();
      const double diameter = t.at("diameter").get<double>();
      cfg.targets = Targets::with_default_bounds(length, diameter);
      cfg.targets.max_length = get_or(t, "max_length", cfg.targets.max_length);
      cfg.targets.max_diameter = get_or(t, "max_diameter", cfg.targets.max_diameter);
    }
    if (doc.contains("weights")) {
      const json& w = doc.at("weights");
      cfg.weights.length = get_or(w, "length", cfg.weights.length);
      cfg.weights.diameter = get_or(w, "diameter", cfg.weights.diameter);
      cfg.weights.quality = get_or(w, "quality", cfg.weights.quality);
    }
    if (doc.contains("gp")) {
      const json& g = doc.at("gp");
      cfg.gp.kernel.lengthscale = get_or(g, "lengthscale", cfg.gp.kernel.lengthscale);
      cfg.gp.kernel.signal_variance = get_or(g, "signal_variance", cfg.gp.kernel.signal_variance);
      cfg.gp.obs_noise_variance = get_or(g, "obs_noise_variance", cfg.gp.obs_noise_variance);
      cfg.gp.select_lengthscale = get_or(g, "select_lengthscale", cfg.gp.select_lengthscale);
      cfg.gp.lengthscale_grid = get_or(g, "lengthscale_grid", cfg.gp.lengthscale_grid);
      cfg.gp.center_targets = get_or(g, "center_targets", cfg.gp.center_targets);
    }
    if (doc.contains("preference")) {
      const json& p = doc.at("preference");
      cfg.pref.noise_sigma = get_or(p, "noise_sigma", cfg.pref.noise_sigma);
      cfg.pref.kernel.lengthscale = get_or(p, "lengthscale", cfg.pref.kernel.lengthscale);
      cfg.pref.kernel.signal_variance = get_or(p, "signal_variance", cfg.pref.kernel.signal_variance);
      cfg.pref.jitter = get_or(p, "jitter", cfg.pref.jitter);
      cfg.pref.newton_tol = get_or(p, "newton_tol", cfg.pref.newton_tol);
      cfg.pref.newton_max_iter = get_or(p, "newton_max_iter", cfg.pref.newton_max_iter);
    }
    if (doc.contains("acquisition")) {
      const json& a = doc.at("acquisition");
      cfg.acquisition.mode = mode_from_string(get_or<std::string>(a, "mode", mode_name(cfg.acquisition.mode)));
      cfg.acquisition.direct_budget = get_or(a, "budget", cfg.acquisition.direct_budget);
      cfg.acquisition.rerank_candidates = get_or(a, "rerank_candidates", cfg.acquisition.rerank_candidates);
    }
    cfg.iteration_budget = get_or(doc, "iteration_budget", cfg.iteration_budget);
    cfg.seed_count = get_or(doc, "seed_count", cfg.seed_count);
    cfg.stop_tolerance = get_or(doc, "stop_tolerance", cfg.stop_tolerance);
    cfg.rng_seed = get_or(doc, "rng_seed", cfg.rng_seed);
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("config: ") + e.what());
  }
}

json config_to_json(const CampaignConfig& cfg) {
  return {
      {"space", space_to_json(cfg.space)},
      {"targets",
       {{"length", cfg.targets.target_length},
        {"diameter", cfg.targets.target_diameter},
        {"max_length", cfg.targets.max_length},
        {"max_diameter", cfg.targets.max_diameter}}},
      {"weights", {{"length", cfg.weights.length}, {"diameter", cfg.weights.diameter}, {"quality", cfg.weights.quality}}},
      {"gp",
       {{"lengthscale", cfg.gp.kernel.lengthscale},
        {"signal_variance", cfg.gp.kernel.signal_variance},
        {"obs_noise_variance", cfg.gp.obs_noise_variance},
        {"select_lengthscale", cfg.gp.select_lengthscale},
        {"lengthscale_grid", cfg.gp.lengthscale_grid},
        {"center_targets", cfg.gp.center_targets}}},
      {"preference",
       {{"noise_sigma", cfg.pref.noise_sigma},
        {"lengthscale", cfg.pref.kernel.lengthscale},
        {"signal_variance", cfg.pref.kernel.signal_variance},
        {"jitter", cfg.pref.jitter},
        {"newton_tol", cfg.pref.newton_tol},
        {"newton_max_iter", cfg.pref.newton_max_iter}}},
      {"acquisition",
       {{"mode", mode_name(cfg.acquisition.mode)},
        {"budget", cfg.acquisition.direct_budget},
        {"rerank_candidates", cfg.acquisition.rerank_candidates}}},
      {"iteration_budget", cfg.iteration_budget},
      {"seed_count", cfg.seed_count},
      {"stop_tolerance", cfg.stop_tolerance},
      {"rng_seed", cfg.rng_seed},
  };
}

const char* to_string(ComparisonOutcome outcome) {
  switch (outcome) {
    case ComparisonOutcome::CurrentBetter: return "current_better";
    case ComparisonOutcome::PriorBetter: return "prior_better";
    case ComparisonOutcome::DifficultToTell: return "difficult_to_tell";
  }
  return "difficult_to_tell";
}

ComparisonOutcome outcome_from_string(const std::string& text) {
  if (text == "current_better") return ComparisonOutcome::CurrentBetter;
  if (text == "prior_better") return ComparisonOutcome::PriorBetter;
  if (text == "difficult_to_tell" || text == "tie") return ComparisonOutcome::DifficultToTell;
  throw ArgumentError("unknown comparison outcome '" + text + "'");
}

json state_to_json(const CampaignState& s) {
  json observations = json::array();
  for (const Observation& o : s.observations)
    observations.push_back({{"point", point_to_json(o.point)},
                            {"L", o.measurement.median_length},
                            {"D", o.measurement.median_diameter},
                            {"image_refs", o.image_refs},
                            {"iteration", o.iteration}});
  json prefs = json::array();
  for (const PreferencePair& p : s.preferences) prefs.push_back({p.winner, p.loser});
  json pending = json::array();
  for (const PendingComparison& p : s.pending) pending.push_back({{"current", p.current}, {"prior", p.prior}});
  json trace = json::array();
  for (const TraceEntry& e : s.trace)
    trace.push_back({{"observation", e.observation},
                     {"iteration", e.iteration},
                     {"f_L", e.f_length},
                     {"f_D", e.f_diameter},
                     {"f_Q", e.f_quality},
                     {"y", e.utility},
                     {"BFV", e.best_found}});
  json audit = json::array();
  for (const AuditRecord& a : s.audit)
    audit.push_back({{"observations", a.observations}, {"preferences", a.preferences}, {"utilities", a.utilities}});
  json rec = nullptr;
  if (s.recommendation)
    rec = {{"point", point_to_json(s.recommendation->point)},
           {"acquisition_value", s.recommendation->acquisition_value},
           {"iteration", s.recommendation->iteration},
           {"duplicate", s.recommendation->duplicate},
           {"lengthscale", s.recommendation->lengthscale}};
  return {{"config", config_to_json(s.config)},
          {"status", to_string(s.status)},
          {"observations", observations},
          {"preferences", prefs},
          {"pending", pending},
          {"recommendation", rec},
          {"trace", trace},
          {"audit", audit},
          {"rng", s.rng.state()}};
}

CampaignState state_from_json(const json& doc) {
  try {
    CampaignState s;
    s.config = config_from_json(doc.at("config"));
    s.status = status_from_string(doc.at("status").get<std::string>());
    for (const json& o : doc.at("observations"))
      s.observations.push_back({point_from_json(o.at("point")),
                                {o.at("L").get<double>(), o.at("D").get<double>()},
                                o.at("image_refs").get<std::vector<std::string>>(),
                                o.at("iteration").get<std::size_t>()});
    for (const json& p : doc.at("preferences")) s.preferences.push_back({p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>()});
    for (const json& p : doc.at("pending"))
      s.pending.push_back({p.at("current").get<std::size_t>(), p.at("prior").get<std::size_t>()});
    if (!doc.at("recommendation").is_null()) {
      const json& r = doc.at("recommendation");
      s.recommendation = Recommendation{point_from_json(r.at("point")), r.at("acquisition_value").get<double>(),
                                        r.at("iteration").get<std::size_t>(), r.at("duplicate").get<bool>(),
                                        r.at("lengthscale").get<double>()};
    }
    for (const json& e : doc.at("trace"))
      s.trace.push_back({e.at("observation").get<std::size_t>(), e.at("iteration").get<std::size_t>(),
                         e.at("f_L").get<double>(), e.at("f_D").get<double>(), e.at("f_Q").get<double>(),
                         e.at("y").get<double>(), e.at("BFV").get<double>()});
    for (const json& a : doc.at("audit"))
      s.audit.push_back({a.at("observations").get<std::size_t>(), a.at("preferences").get<std::size_t>(),
                         a.at("utilities").get<std::vector<double>>()});
    s.rng.set_state(doc.at("rng").get<std::string>());
    return s;
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("campaign state: ") + e.what());
  }
}

json trace_to_json(const TraceTable& table) {
  json rows = json::array();
  for (const TraceRow& r : table.rows) {
    rows.push_back({{"iteration", r.iteration},
                    {"x", point_to_json(r.point)},
                    {"L", r.measurement.median_length},
                    {"D", r.measurement.median_diameter},
                    {"f_L", r.f_length},
                    {"f_D", r.f_diameter},
                    {"f_Q", r.f_quality},
                    {"y", r.utility},
                    {"BFV", r.best_found},
                    {"L_pct", r.length_pct},
                    {"D_pct", r.diameter_pct}});
  }
  return {{"columns", table.coordinate_names}, {"rows", rows}};
}

}  // namespace aeo
