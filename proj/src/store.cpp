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

#include "aeo/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "aeo/error.hpp"

namespace aeo {

namespace fs = std::filesystem;

json recommend_event() { return {{"op", "recommend"}}; }

json result_event(const DesignPoint& point, const Measurement& m, const std::vector<std::string>& image_refs) {
  return {{"op", "result"},
          {"point", point_to_json(point)},
          {"L", m.median_length},
          {"D", m.median_diameter},
          {"image_refs", image_refs}};
}

json comparison_event(std::size_t current, std::size_t prior, ComparisonOutcome outcome) {
  return {{"op", "comparison"}, {"current", current}, {"prior", prior}, {"outcome", to_string(outcome)}};
}

CampaignState apply_event(const CampaignState& state, const json& event) {
  const std::string op = event.at("op").get<std::string>();
  if (op == "recommend") return next_recommendation(state).first;
  if (op == "result")
    return submit_result(state, point_from_json(event.at("point")),
                         {event.at("L").get<double>(), event.at("D").get<double>()},
                         event.at("image_refs").get<std::vector<std::string>>());
  if (op == "comparison")
    return submit_comparison(state, event.at("prior").get<std::size_t>(),
                             outcome_from_string(event.at("outcome").get<std::string>()),
                             event.at("current").get<std::size_t>());
  throw ArgumentError("unknown event '" + op + "'");
}

namespace {

void write_all_synced(const fs::path& path, const std::string& data, bool append) {
  const int flags = O_WRONLY | O_CREAT | O_CLOEXEC | (append ? O_APPEND : O_TRUNC);
  const int fd = ::open(path.c_str(), flags, 0644);
  if (fd < 0) throw std::runtime_error("cannot open " + path.string() + ": " + std::strerror(errno));
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      const int err = errno;
      ::close(fd);
      throw std::runtime_error("write to " + path.string() + " failed: " + std::strerror(err));
    }
    done += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) {
    const int err = errno;
    ::close(fd);
    throw std::runtime_error("fsync of " + path.string() + " failed: " + std::strerror(err));
  }
  ::close(fd);
}

void sync_directory(const fs::path& dir) {
  const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
  if (fd < 0) return;
  ::fsync(fd);
  ::close(fd);
}

bool valid_id(const std::string& id) {
  if (id.empty() || id.size() > 64) return false;
  for (char c : id)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')) return false;
  return true;
}

}  // namespace

CampaignStore::CampaignStore(fs::path dir, std::size_t compact_every)
    : dir_(std::move(dir)), compact_every_(compact_every == 0 ? 1 : compact_every) {
  fs::create_directories(dir_);
}

fs::path CampaignStore::path_for(const std::string& id) const {
  if (!valid_id(id)) throw ArgumentError("invalid campaign id '" + id + "'");
  return dir_ / (id + ".log");
}

std::vector<std::string> CampaignStore::list() const {
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(dir_))
    if (entry.is_regular_file() && entry.path().extension() == ".log") ids.push_back(entry.path().stem().string());
  std::sort(ids.begin(), ids.end());
  return ids;
}

bool CampaignStore::exists(const std::string& id) const { return valid_id(id) && fs::exists(path_for(id)); }

void CampaignStore::write_snapshot(const std::string& id, const CampaignState& state) {
  const fs::path target = path_for(id);
  const fs::path tmp = target.string() + ".tmp";
  const json record{{"kind", "snapshot"}, {"state", state_to_json(state)}};
  write_all_synced(tmp, record.dump() + "\n", false);
  fs::rename(tmp, target);
  sync_directory(dir_);
}

void CampaignStore::create(const std::string& id, const CampaignState& state) {
  std::lock_guard lock(mutex_);
  if (fs::exists(path_for(id))) throw ArgumentError("campaign '" + id + "' already exists");
  write_snapshot(id, state);
  events_since_snapshot_[id] = 0;
}

void CampaignStore::append(const std::string& id, const json& event, const CampaignState& after) {
  std::lock_guard lock(mutex_);
  std::size_t& count = events_since_snapshot_[id];
  if (count + 1 >= compact_every_) {
    write_snapshot(id, after);
    count = 0;
    return;
  }
  const json record{{"kind", "event"}, {"event", event}};
  write_all_synced(path_for(id), record.dump() + "\n", true);
  ++count;
}

CampaignState CampaignStore::load(const std::string& id) {
  const fs::path path = path_for(id);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorruptStateError("campaign '" + id + "': cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  CampaignState state;
  bool have_snapshot = false;
  std::size_t events = 0;
  std::size_t start = 0;
  std::size_t record_no = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string::npos) break;  // torn tail
    const std::string line = text.substr(start, end - start);
    start = end + 1;
    ++record_no;
    try {
      const json record = json::parse(line);
      const std::string kind = record.at("kind").get<std::string>();
      if (kind == "snapshot") {
        state = state_from_json(record.at("state"));
        have_snapshot = true;
        events = 0;
      } else if (kind == "event" && have_snapshot) {
        state = apply_event(state, record.at("event"));
        ++events;
      } else {
        throw std::runtime_error("unexpected record kind '" + kind + "'");
      }
    } catch (const std::exception& e) {
      throw CorruptStateError("campaign '" + id + "': record " + std::to_string(record_no) + ": " + e.what());
    }
  }
  if (!have_snapshot) throw CorruptStateError("campaign '" + id + "': no snapshot record");
  std::lock_guard lock(mutex_);
  if (start < text.size()) {
    // Drop the torn record so later appends start on a fresh line.
    fs::resize_file(path, start);
    sync_directory(dir_);
  }
  events_since_snapshot_[id] = events;
  return state;
}

}  // namespace aeo
