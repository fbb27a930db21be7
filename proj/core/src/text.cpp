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

#include "vlnaug/text.hpp"

#include <algorithm>
#include <cctype>

namespace vlnaug::text {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

}  // namespace

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), lower);
  return out;
}

std::vector<std::string_view> split_lines(std::string_view s) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto nl = s.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(s.substr(start));
      break;
    }
    auto line = s.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

std::vector<std::string> split_trimmed(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    const auto piece = trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (!piece.empty()) out.emplace_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && !is_alpha(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && (is_alpha(s[j]) || (s[j] == '\'' && j + 1 < s.size() && is_alpha(s[j + 1])))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t word_count(std::string_view s) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : s) {
    if (is_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++n;
    }
  }
  return n;
}

std::string replace_phrase(std::string_view haystack, std::string_view from, std::string_view to) {
  if (from.empty()) return std::string(haystack);
  const std::string hay_lower = to_lower(haystack);
  const std::string from_lower = to_lower(from);
  std::string out;
  std::size_t i = 0;
  while (i < haystack.size()) {
    const auto pos = hay_lower.find(from_lower, i);
    if (pos == std::string::npos) break;
    const std::size_t end = pos + from_lower.size();
    const bool left_ok = pos == 0 || !is_alnum(haystack[pos - 1]);
    const bool right_ok = end >= haystack.size() || !is_alnum(haystack[end]);
    if (left_ok && right_ok) {
      out.append(haystack.substr(i, pos - i));
      std::string repl(to);
      // Keep a capitalized match capitalized.
      if (!repl.empty() && std::isupper(static_cast<unsigned char>(haystack[pos]))) {
        repl[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(repl[0])));
      }
      out.append(repl);
      i = end;
    } else {
      out.append(haystack.substr(i, pos + 1 - i));
      i = pos + 1;
    }
  }
  out.append(haystack.substr(std::min(i, haystack.size())));
  return out;
}

std::string fill(std::string_view tmpl, std::string_view name, std::string_view value) {
  const std::string key = "{{" + std::string(name) + "}}";
  std::string out;
  std::size_t i = 0;
  while (true) {
    const auto pos = tmpl.find(key, i);
    if (pos == std::string_view::npos) break;
    out.append(tmpl.substr(i, pos - i));
    out.append(value);
    i = pos + key.size();
  }
  out.append(tmpl.substr(i));
  return out;
}

}  // namespace vlnaug::text
