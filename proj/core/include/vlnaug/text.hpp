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

#include <string>
#include <string_view>
#include <vector>

namespace vlnaug::text {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
std::vector<std::string_view> split_lines(std::string_view s);
/// Splits on `sep`, trims each piece, drops empty pieces.
std::vector<std::string> split_trimmed(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
/// Alphabetic runs (apostrophes kept inside words), original case.
std::vector<std::string> words(std::string_view s);
std::size_t word_count(std::string_view s);
/// Replaces case-insensitive whole-word/phrase occurrences of `from`. A match
/// starting with a capital letter gets a capitalized replacement.
std::string replace_phrase(std::string_view haystack, std::string_view from, std::string_view to);
/// Replaces `{{name}}` placeholders.
std::string fill(std::string_view tmpl, std::string_view name, std::string_view value);

}  // namespace vlnaug::text
