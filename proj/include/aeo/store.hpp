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
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "aeo/serialization.hpp"

namespace aeo {

class CorruptStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mutations recorded in a campaign log. Replaying them in order against the
// snapshot reproduces the live state exactly, since every operation is a
// deterministic function of the state (the random stream included).
json recommend_event();
json result_event(const DesignPoint& point, const Measurement& m, const std::vector<std::string>& image_refs);
json comparison_event(std::size_t current, std::size_t prior, ComparisonOutcome outcome);
CampaignState apply_event(const CampaignState& state, const json& event);

/// One file per campaign, `<dir>/<id>.log`, holding newline-terminated JSON
/// records: a snapshot first, then events. Every write is fsync'ed before
/// it returns. After `compact_every` events the file is atomically replaced
/// by a fresh snapshot.
class CampaignStore {
 public:
  explicit CampaignStore(std::filesystem::path dir, std::size_t compact_every = 32);

  const std::filesystem::path& dir() const { return dir_; }
  std::vector<std::string> list() const;
  bool exists(const std::string& id) const;

  void create(const std::string& id, const CampaignState& state);
  // `after` is the state the event produced; used when compacting.
  void append(const std::string& id, const json& event, const CampaignState& after);
  // Throws CorruptStateError if the log cannot be replayed. A torn final
  // record (no terminating newline) was never acknowledged and is dropped.
  CampaignState load(const std::string& id);

  std::filesystem::path path_for(const std::string& id) const;

 private:
  void write_snapshot(const std::string& id, const CampaignState& state);

  std::filesystem::path dir_;
  std::size_t compact_every_;
  std::mutex mutex_;
  std::map<std::string, std::size_t> events_since_snapshot_;
};

}  // namespace aeo
