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

#include <stdexcept>
#include <string>
#include <string_view>

namespace vlnaug {

/// Broad failure classes. The CLI maps these onto process exit codes.
enum class ErrorKind {
  kConfig,        // bad configuration or arguments
  kPrecondition,  // caller violated an operation's precondition
  kDomain,        // argument outside the mathematical domain
  kValidation,    // input data violates a data-model invariant
  kParse,         // malformed text/JSON (model output or files)
  kIo,            // filesystem failure
  kProvider,      // foundation-model provider failed after retries
  kProtocol,      // provider answered but broke the response contract
  kMetric,        // metric undefined for the given episode (e.g. disconnected)
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ProviderError : public Error {
 public:
  ProviderError(const std::string& what, int last_status, int attempts,
                bool retryable)
      : Error(ErrorKind::kProvider, what),
        last_status_(last_status),
        attempts_(attempts),
        retryable_(retryable) {}

  /// HTTP status of the last attempt, 0 if the transport never connected.
  int last_status() const noexcept { return last_status_; }
  int attempts() const noexcept { return attempts_; }
  /// False when the failure is permanent (auth, schema) and retrying later
  /// would not help.
  bool retryable() const noexcept { return retryable_; }

 private:
  int last_status_;
  int attempts_;
  bool retryable_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitProvider = 3;
inline constexpr int kExitValidation = 4;

int exit_code_for(ErrorKind kind);

}  // namespace vlnaug
