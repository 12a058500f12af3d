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

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "aeo/serialization.hpp"
#include "aeo/store.hpp"

namespace httplib {
class Server;
}

namespace aeo {

// Overrides the state directory given on the command line.
inline constexpr const char* kStateDirEnv = "AEO_STATE_DIR";

/// HTTP front end for live campaigns. Each campaign has a single writer:
/// mutations on one campaign are serialized and persisted before the
/// response is sent; different campaigns proceed in parallel.
class Service {
 public:
  explicit Service(std::filesystem::path state_dir);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds and serves until stop(). Returns false if the address is unavailable.
  bool listen(const std::string& host, int port);
  // Binds to a free port and returns it; serve with run().
  int bind_any_port(const std::string& host);
  bool bind(const std::string& host, int port);
  void run();
  void stop();
  void wait_until_ready() const;

  // Campaigns whose logs could not be replayed at startup, with the reason.
  const std::map<std::string, std::string>& broken() const { return broken_; }

 private:
  struct Entry {
    std::mutex mutex;
    CampaignState state;
  };

  void install_routes();
  void recover();
  std::shared_ptr<Entry> find(const std::string& id) const;
  std::string allocate_id();

  std::filesystem::path state_dir_;
  CampaignStore store_;
  std::unique_ptr<httplib::Server> server_;
  mutable std::shared_mutex campaigns_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> campaigns_;
  std::map<std::string, std::string> broken_;
  std::size_t next_id_ = 1;
};

json campaign_summary(const std::string& id, const CampaignState& state);

}  // namespace aeo
