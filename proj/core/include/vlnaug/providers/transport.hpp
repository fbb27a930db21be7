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

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace vlnaug::providers {

struct HttpResponse {
  int status = 0;  // 0: no response (connect/read failure)
  std::string body;
  std::optional<double> retry_after_s;
};

/// POSTs JSON documents. Implementations must be safe to call concurrently.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual std::string id() const = 0;
  virtual HttpResponse post_json(const std::string& path, const std::string& body,
                                 const std::string& bearer_token) = 0;
};

/// cpp-httplib backed transport. A fresh client per request keeps it
/// thread-safe.
class HttpTransport final : public Transport {
 public:
  explicit HttpTransport(std::string base_url,
                         std::chrono::seconds timeout = std::chrono::seconds(120));
  std::string id() const override { return base_url_; }
  HttpResponse post_json(const std::string& path, const std::string& body,
                         const std::string& bearer_token) override;

 private:
  std::string base_url_;
  std::chrono::seconds timeout_;
};

/// In-process transport driven by a handler. Records every request and the
/// peak number of concurrently open requests.
class MockTransport final : public Transport {
 public:
  struct Request {
    std::string path;
    std::string body;
    std::string bearer_token;
  };
  using Handler = std::function<HttpResponse(const Request&)>;

  explicit MockTransport(Handler handler, std::string id = "mock-transport");
  std::string id() const override { return id_; }
  HttpResponse post_json(const std::string& path, const std::string& body,
                         const std::string& bearer_token) override;

  std::vector<Request> requests() const;
  int max_in_flight() const { return max_in_flight_.load(); }

 private:
  Handler handler_;
  std::string id_;
  mutable std::mutex mu_;
  std::vector<Request> requests_;
  std::atomic<int> in_flight_{0};
  std::atomic<int> max_in_flight_{0};
};

}  // namespace vlnaug::providers
