// Copyright 2026 The vlnaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace vlnaug {

/// One provider call as recorded in a RewriteBundle.
struct CallRecord {
  std::string role;         // caption | chat | embed_text | embed_image | panorama
  std::string provider_id;  // e.g. "mock-chat/v1", "gateway:http://host:8080"
  nlohmann::json params = nlohmann::json::object();
  int attempts = 1;
  std::int64_t started_at_ms = 0;
  std::int64_t duration_ms = 0;

  nlohmann::json to_json() const;
  static CallRecord from_json(const nlohmann::json& j);
  friend bool operator==(const CallRecord&, const CallRecord&) = default;
};

}  // namespace vlnaug
