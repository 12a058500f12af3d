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

// Drives a campaign over HTTP exactly as the in-process simulation does.

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <stdexcept>

#include "aeo/driver.hpp"
#include "aeo/service.hpp"
#include "aeo/simulator.hpp"

#include <httplib.h>

namespace aeo::harness {

inline json body_of(const httplib::Result& r) { return json::parse(r->body); }

inline httplib::Result post(httplib::Client& c, const std::string& path, const json& body) {
  return c.Post(path, body.dump(), "application/json");
}

inline void expect_ok(const httplib::Result& r) {
  if (!r) throw std::runtime_error("no response");
  if (r->status != 200) throw std::runtime_error("HTTP " + std::to_string(r->status) + ": " + r->body);
}
// Seeds and randomness exactly as the in-process driver draws them.
struct Experiment {
  Experiment(SyntheticProcess p, std::uint64_t s)
      : process(std::move(p)), seed(s), selection(s), noise(s ^ 0x9E3779B97F4A7C15ULL) {}

  SyntheticProcess process;
  std::uint64_t seed;
  Rng selection;
  Rng noise;

  json create_body() {
    CampaignConfig cfg = simulation_config(process);
    cfg.rng_seed = seed;
    json seeds = json::array();
    for (std::size_t rank : selection.sample_without_replacement(process.space.grid_size(), cfg.seed_count)) {
      const DesignPoint x = process.space.grid_point(rank);
      const Measurement m = simulate_experiment(process, x, noise);
      seeds.push_back({{"point", point_to_json(x)}, {"L", m.median_length}, {"D", m.median_diameter}});
    }
    return {{"config", config_to_json(cfg)}, {"seeds", seeds}};
  }

  // Advances the campaign by one request. Returns false once it is finished.
  bool step(httplib::Client& c, const std::string& id) {
    const json summary = body_of(c.Get("/campaigns/" + id));
    const std::string status = summary.at("status");
    if (status == "awaiting_comparisons") {
      const json state = body_of(c.Get("/campaigns/" + id + "/state"));
      const json pending = summary.at("pending").at(0);
      const std::size_t cur = pending.at("current"), prior = pending.at("prior");
      const auto& obs = state.at("observations");
      const ComparisonOutcome o = oracle_compare(process, point_from_json(obs.at(cur).at("point")),
                                                 point_from_json(obs.at(prior).at("point")), noise);
      auto r = post(c, "/campaigns/" + id + "/comparisons", {{"prior_index", prior}, {"outcome", to_string(o)}});
      expect_ok(r);
      return true;
    }
    if (status == "ready") {
      auto r = post(c, "/campaigns/" + id + "/recommendation", json::object());
      expect_ok(r);
      const DesignPoint x = point_from_json(body_of(r).at("point"));
      const Measurement m = simulate_experiment(process, x, noise);
      auto s = post(c, "/campaigns/" + id + "/results",
                    {{"point", point_to_json(x)}, {"L", m.median_length}, {"D", m.median_diameter}});
      expect_ok(s);
      return true;
    }
    return false;
  }
};

// Runs a service in a child process so the test can SIGKILL it mid-campaign.
struct Child {
  explicit Child(const std::filesystem::path& dir) {
    int fds[2];
    if (::pipe(fds) != 0) throw std::runtime_error("pipe");
    pid = ::fork();
    if (pid == 0) {
      ::close(fds[0]);
      Service service(dir);
      const int p = service.bind_any_port("127.0.0.1");
      if (::write(fds[1], &p, sizeof p) != sizeof p) ::_exit(3);
      ::close(fds[1]);
      service.run();
      ::_exit(0);
    }
    ::close(fds[1]);
    if (::read(fds[0], &port, sizeof port) != sizeof port) port = -1;
    ::close(fds[0]);
  }
  void kill() {
    ::kill(pid, SIGKILL);
    int status = 0;
    ::waitpid(pid, &status, 0);
  }
  pid_t pid = -1;
  int port = -1;
};

}  // namespace aeo::harness
