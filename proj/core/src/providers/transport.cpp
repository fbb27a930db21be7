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

#include "vlnaug/providers/transport.hpp"

#include <httplib.h>

namespace vlnaug::providers {

HttpTransport::HttpTransport(std::string base_url, std::chrono::seconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

HttpResponse HttpTransport::post_json(const std::string& path, const std::string& body,
                                      const std::string& bearer_token) {
  httplib::Client client(base_url_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  httplib::Headers headers;
  if (!bearer_token.empty()) headers.emplace("Authorization", "Bearer " + bearer_token);
  auto res = client.Post(path, headers, body, "application/json");
  if (!res) return HttpResponse{0, httplib::to_string(res.error()), std::nullopt};
  HttpResponse out{res->status, res->body, std::nullopt};
  if (res->has_header("Retry-After")) {
    try {
      out.retry_after_s = std::stod(res->get_header_value("Retry-After"));
    } catch (const std::exception&) {
      // HTTP-date form is not supported; fall back to backoff.
    }
  }
  return out;
}

MockTransport::MockTransport(Handler handler, std::string id)
    : handler_(std::move(handler)), id_(std::move(id)) {}

HttpResponse MockTransport::post_json(const std::string& path, const std::string& body,
                                      const std::string& bearer_token) {
  Request req{path, body, bearer_token};
  {
    std::lock_guard lock(mu_);
    requests_.push_back(req);
  }
  const int now = ++in_flight_;
  int prev = max_in_flight_.load();
  while (now > prev && !max_in_flight_.compare_exchange_weak(prev, now)) {
  }
  HttpResponse res;
  try {
    res = handler_(req);
  } catch (...) {
    --in_flight_;
    throw;
  }
  --in_flight_;
  return res;
}

std::vector<MockTransport::Request> MockTransport::requests() const {
  std::lock_guard lock(mu_);
  return requests_;
}

}  // namespace vlnaug::providers
