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

#include "aeo/service.hpp"

#include <httplib.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "aeo/error.hpp"

namespace aeo {

namespace fs = std::filesystem;

namespace {

struct HttpError : std::runtime_error {
  HttpError(int s, const std::string& what, json extra = json::object())
      : std::runtime_error(what), status(s), details(std::move(extra)) {}
  int status;
  json details;
};

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& message, json extra = json::object()) {
  extra["error"] = message;
  reply(res, status, extra);
}

using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

// Maps library exceptions onto HTTP statuses.
Handler guarded(Handler inner) {
  return [inner = std::move(inner)](const httplib::Request& req, httplib::Response& res) {
    try {
      inner(req, res);
    } catch (const HttpError& e) {
      reply_error(res, e.status, e.what(), e.details);
    } catch (const json::exception& e) {
      reply_error(res, 400, std::string("malformed request body: ") + e.what());
    } catch (const ArgumentError& e) {
      reply_error(res, 400, e.what());
    } catch (const StateError& e) {
      reply_error(res, 409, e.what());
    } catch (const ProtocolError& e) {
      reply_error(res, 409, e.what());
    } catch (const CorruptStateError& e) {
      reply_error(res, 503, e.what());
    } catch (const NumericalError& e) {
      reply_error(res, 500, std::string("numerical failure: ") + e.what());
    } catch (const std::exception& e) {
      reply_error(res, 500, e.what());
    }
  };
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json body = json::parse(req.body);
  if (!body.is_object()) throw ArgumentError("request body must be a JSON object");
  return body;
}

json pending_to_json(const std::vector<PendingComparison>& pending) {
  json out = json::array();
  for (const PendingComparison& p : pending) out.push_back({{"current", p.current}, {"prior", p.prior}});
  return out;
}

json recommendation_to_json(const CampaignState& state, const Recommendation& rec) {
  json named = json::object();
  const auto& dims = state.config.space.dims();
  json coords = json::array();
  for (std::size_t i = 0; i < dims.size(); ++i)
    coords.push_back({{"name", dims[i].name}, {"unit", dims[i].unit}, {"value", rec.point[static_cast<Eigen::Index>(i)]}});
  return {{"point", point_to_json(rec.point)},
          {"coordinates", coords},
          {"acquisition_value", rec.acquisition_value},
          {"iteration", rec.iteration},
          {"duplicate", rec.duplicate}};
}

void check_expected_iteration(const json& body, const CampaignState& state) {
  if (!body.contains("expected_iteration")) return;
  const auto expected = body.at("expected_iteration").get<std::size_t>();
  if (expected != state.iteration())
    throw HttpError(409, "campaign is at iteration " + std::to_string(state.iteration()) + ", request expected " +
                             std::to_string(expected),
                    {{"iteration", state.iteration()}});
}

}  // namespace

json campaign_summary(const std::string& id, const CampaignState& state) {
  const auto bfv = state.best_found();
  return {{"id", id},
          {"status", to_string(state.status)},
          {"iteration", state.iteration()},
          {"iteration_budget", state.config.iteration_budget},
          {"observations", state.observations.size()},
          {"preferences", state.preferences.size()},
          {"best_found", bfv ? json(*bfv) : json(nullptr)},
          {"pending", pending_to_json(state.pending)},
          {"recommendation", state.recommendation ? recommendation_to_json(state, *state.recommendation) : json(nullptr)},
          {"links",
           {{"self", "/campaigns/" + id},
            {"trace", "/campaigns/" + id + "/trace"},
            {"recommendation", "/campaigns/" + id + "/recommendation"}}}};
}

Service::Service(fs::path state_dir)
    : state_dir_(std::move(state_dir)), store_(state_dir_), server_(std::make_unique<httplib::Server>()) {
  recover();
  install_routes();
}

Service::~Service() { stop(); }

void Service::recover() {
  for (const std::string& id : store_.list()) {
    try {
      auto entry = std::make_shared<Entry>();
      entry->state = store_.load(id);
      campaigns_[id] = std::move(entry);
    } catch (const std::exception& e) {
      broken_[id] = e.what();
      std::fprintf(stderr, "aeo: refusing to serve campaign %s: %s\n", id.c_str(), e.what());
    }
    // Ids look like c000123; keep numbering past whatever is on disk.
    if (id.size() > 1 && id[0] == 'c') {
      try {
        next_id_ = std::max(next_id_, static_cast<std::size_t>(std::stoull(id.substr(1))) + 1);
      } catch (const std::exception&) {
      }
    }
  }
}

std::string Service::allocate_id() {
  char buf[32];
  std::snprintf(buf, sizeof buf, "c%06zu", next_id_++);
  return buf;
}

std::shared_ptr<Service::Entry> Service::find(const std::string& id) const {
  std::shared_lock lock(campaigns_mutex_);
  if (const auto b = broken_.find(id); b != broken_.end())
    throw HttpError(503, "campaign state is corrupt: " + b->second);
  const auto it = campaigns_.find(id);
  if (it == campaigns_.end()) throw HttpError(404, "no campaign '" + id + "'");
  return it->second;
}

void Service::install_routes() {
  httplib::Server& srv = *server_;

  srv.Get("/campaigns", guarded([this](const httplib::Request&, httplib::Response& res) {
    json items = json::array();
    std::shared_lock lock(campaigns_mutex_);
    for (const auto& [id, entry] : campaigns_) {
      std::lock_guard entry_lock(entry->mutex);
      items.push_back(campaign_summary(id, entry->state));
    }
    json broken = json::array();
    for (const auto& [id, why] : broken_) broken.push_back({{"id", id}, {"error", why}});
    reply(res, 200, {{"campaigns", items}, {"corrupt", broken}});
  }));

  srv.Post("/campaigns", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    const CampaignConfig config = config_from_json(body.value("config", json::object()));
    std::vector<SeedObservation> seeds;
    for (const json& s : body.value("seeds", json::array()))
      seeds.push_back({point_from_json(s.at("point")),
                       {s.at("L").get<double>(), s.at("D").get<double>()},
                       s.value("image_refs", std::vector<std::string>{})});
    CampaignState state = init_campaign(config, seeds);

    std::unique_lock lock(campaigns_mutex_);
    const std::string id = allocate_id();
    store_.create(id, state);
    auto entry = std::make_shared<Entry>();
    entry->state = std::move(state);
    const json summary = campaign_summary(id, entry->state);
    campaigns_[id] = std::move(entry);
    reply(res, 201, summary);
  }));

  srv.Get(R"(/campaigns/([A-Za-z0-9_-]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    reply(res, 200, campaign_summary(id, entry->state));
  }));

  srv.Get(R"(/campaigns/([A-Za-z0-9_-]+)/state)", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto entry = find(req.matches[1]);
    std::lock_guard lock(entry->mutex);
    reply(res, 200, state_to_json(entry->state));
  }));

  srv.Post(R"(/campaigns/([A-Za-z0-9_-]+)/recommendation)",
           guarded([this](const httplib::Request& req, httplib::Response& res) {
             const std::string id = req.matches[1];
             const json body = parse_body(req);
             auto entry = find(id);
             std::lock_guard lock(entry->mutex);
             CampaignState& current = entry->state;
             check_expected_iteration(body, current);
             if (current.status == CampaignStatus::AwaitingComparisons)
               throw HttpError(409, "comparisons are pending", {{"pending", pending_to_json(current.pending)}});
             if (current.status == CampaignStatus::AwaitingResult) {
               reply(res, 200, recommendation_to_json(current, *current.recommendation));
               return;
             }
             auto [next, rec] = next_recommendation(current);
             store_.append(id, recommend_event(), next);
             current = std::move(next);
             reply(res, 200, recommendation_to_json(current, rec));
           }));

  srv.Post(R"(/campaigns/([A-Za-z0-9_-]+)/results)", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    const json body = parse_body(req);
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    CampaignState& current = entry->state;
    check_expected_iteration(body, current);
    const DesignPoint point = point_from_json(body.at("point"));
    const Measurement m{body.at("L").get<double>(), body.at("D").get<double>()};
    const auto refs = body.value("image_refs", std::vector<std::string>{});
    CampaignState next = submit_result(current, point, m, refs);
    store_.append(id, result_event(point, m, refs), next);
    current = std::move(next);
    reply(res, 200, campaign_summary(id, current));
  }));

  srv.Post(R"(/campaigns/([A-Za-z0-9_-]+)/comparisons)",
           guarded([this](const httplib::Request& req, httplib::Response& res) {
             const std::string id = req.matches[1];
             const json body = parse_body(req);
             auto entry = find(id);
             std::lock_guard lock(entry->mutex);
             CampaignState& current = entry->state;
             check_expected_iteration(body, current);
             if (current.status != CampaignStatus::AwaitingComparisons)
               throw StateError(std::string("no comparison expected in status ") + to_string(current.status));
             const auto prior = body.at("prior_index").get<std::size_t>();
             const auto outcome = outcome_from_string(body.at("outcome").get<std::string>());
             const std::size_t judged = body.contains("current_index") ? body.at("current_index").get<std::size_t>()
                                                                       : current.pending.front().current;
             CampaignState next = submit_comparison(current, prior, outcome, judged);
             store_.append(id, comparison_event(judged, prior, outcome), next);
             current = std::move(next);
             reply(res, 200, campaign_summary(id, current));
           }));

  srv.Get(R"(/campaigns/([A-Za-z0-9_-]+)/trace)", guarded([this](const httplib::Request& req, httplib::Response& res) {
    auto entry = find(req.matches[1]);
    TraceTable table;
    {
      std::lock_guard lock(entry->mutex);
      table = export_trace(entry->state);
    }
    const std::string accept = req.get_header_value("Accept");
    if (accept.find("text/csv") != std::string::npos) {
      res.status = 200;
      res.set_content(trace_to_csv(table), "text/csv");
    } else {
      reply(res, 200, trace_to_json(table));
    }
  }));

  srv.Post(R"(/campaigns/([A-Za-z0-9_-]+)/images)", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    const fs::path dir = state_dir_ / "images" / id;
    fs::create_directories(dir);
    std::size_t n = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++n;
    char name[32];
    std::snprintf(name, sizeof name, "img%06zu", n + 1);
    {
      std::ofstream out(dir / name, std::ios::binary);
      out.write(req.body.data(), static_cast<std::streamsize>(req.body.size()));
      out.flush();
      if (!out) throw std::runtime_error("could not store image");
    }
    reply(res, 201, {{"ref", std::string(name)}, {"bytes", req.body.size()}});
  }));

  srv.Get(R"(/campaigns/([A-Za-z0-9_-]+)/images/([A-Za-z0-9_-]+))",
          guarded([this](const httplib::Request& req, httplib::Response& res) {
            const std::string id = req.matches[1];
            find(id);
            const fs::path file = state_dir_ / "images" / id / std::string(req.matches[2]);
            std::ifstream in(file, std::ios::binary);
            if (!in) throw HttpError(404, "no such image");
            std::stringstream buffer;
            buffer << in.rdbuf();
            res.status = 200;
            res.set_content(buffer.str(), "application/octet-stream");
          }));
}

bool Service::listen(const std::string& host, int port) {
  if (!bind(host, port)) return false;
  run();
  return true;
}

bool Service::bind(const std::string& host, int port) { return server_->bind_to_port(host, port); }

int Service::bind_any_port(const std::string& host) { return server_->bind_to_any_port(host); }

void Service::run() { server_->listen_after_bind(); }

void Service::stop() {
  if (server_) server_->stop();
}

void Service::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace aeo
