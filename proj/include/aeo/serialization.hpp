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

#include <json.hpp>

#include "aeo/campaign.hpp"

namespace aeo {

using nlohmann::json;

// Configuration documents. Every field is optional; omitted fields take the
// defaults of CampaignConfig. See docs/config-schema.md.
CampaignConfig config_from_json(const json& doc);
json config_to_json(const CampaignConfig& config);

ParameterSpace space_from_json(const json& doc);
json space_to_json(const ParameterSpace& space);

json point_to_json(const DesignPoint& point);
DesignPoint point_from_json(const json& doc);

ComparisonOutcome outcome_from_string(const std::string& text);
const char* to_string(ComparisonOutcome outcome);

// Full campaign state, including the random stream. Round-trips exactly.
json state_to_json(const CampaignState& state);
CampaignState state_from_json(const json& doc);

json trace_to_json(const TraceTable& table);

}  // namespace aeo
