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

#include "vlnaug/error.hpp"

namespace vlnaug {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kProvider: return "provider";
    case ErrorKind::kProtocol: return "protocol";
    case ErrorKind::kMetric: return "metric";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
    case ErrorKind::kPrecondition:
      return kExitConfig;
    case ErrorKind::kProvider:
    case ErrorKind::kProtocol:
      return kExitProvider;
    case ErrorKind::kValidation:
    case ErrorKind::kParse:
    case ErrorKind::kIo:
    case ErrorKind::kDomain:
    case ErrorKind::kMetric:
      return kExitValidation;
  }
  return 1;
}

}  // namespace vlnaug
