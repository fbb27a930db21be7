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

// Prompt construction and response parsing for the two rewriting calls:
// object-enriched scene description rewriting and observation-contrast
// instruction rewriting. Templates are plain text files with [section]
// headers; the defaults from templates/ are compiled in.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vlnaug/error.hpp"
#include "vlnaug/providers/types.hpp"

namespace vlnaug::rewrite {

inline constexpr std::size_t kDefaultMaxInstructionWords = 120;
inline constexpr std::string_view kSceneDirective =
    "Generate rewritten descriptions by adding the possible objects that may exist in the scene "
    "for the given scene description";
inline constexpr std::string_view kInstructionDirective =
    "Rewrite the original instruction by replacing the object (scene) in the original "
    "instruction with the one in the new observation";
inline constexpr std::string_view kActionSynonymDirective =
    "change the representations of actional descriptions to their synonyms";
inline constexpr std::string_view kSyntaxDirective = "vary the syntax";

inline constexpr std::string_view kSceneGrammar =
    "Answer with exactly two lines: \"Added objects: <comma-separated objects>\" followed by "
    "\"Rewritten description: <rewritten description>\".";
inline constexpr std::string_view kInstructionGrammar =
    "Answer with a single line: \"Rewritten instruction: <rewritten instruction>\".";

/// Sampling parameters applied to every rewriting request.
struct ChatParams {
  double temperature = providers::kDefaultTemperature;
  double presence_penalty = providers::kDefaultPresencePenalty;
  int max_tokens = providers::kDefaultMaxTokens;
  std::optional<std::uint64_t> seed;
};

struct SceneExample {
  std::string input;
  std::vector<std::string> added_objects;
  std::string output;
};

struct ScenePromptTemplate {
  std::string system_text;
  std::string task_definition;
  SceneExample example;
  std::string output_grammar{kSceneGrammar};
};

struct InstructionExample {
  std::vector<std::string> landmarks;
  std::vector<std::string> new_descriptions;
  std::string original;
  std::string output;
};

struct InstructionPromptTemplate {
  std::string system_text;
  std::string task_definition;
  InstructionExample example;
  std::string output_grammar{kInstructionGrammar};
};

/// Section name -> body. Lines starting with '#' are comments.
std::vector<std::pair<std::string, std::string>> parse_sections(std::string_view text);

/// kConfig on missing sections or when the template invariants fail (see
/// validate()).
ScenePromptTemplate parse_scene_template(std::string_view text);
InstructionPromptTemplate parse_instruction_template(std::string_view text);
ScenePromptTemplate load_scene_template(const std::filesystem::path& path);
InstructionPromptTemplate load_instruction_template(const std::filesystem::path& path);
const ScenePromptTemplate& default_scene_template();
const InstructionPromptTemplate& default_instruction_template();

/// The task text must carry its directive(s) and the in-context example must
/// parse under the template's own grammar back to its declared outputs.
void validate(const ScenePromptTemplate& tmpl);
void validate(const InstructionPromptTemplate& tmpl);

/// Why a response failed to parse. kTooLong is reported as a length failure.
enum class ParseFailure { kMissingLabel, kEmptyField, kTooLong };

class ParseError : public Error {
 public:
  ParseError(ParseFailure failure, const std::string& what)
      : Error(ErrorKind::kParse, what), failure_(failure) {}
  ParseFailure failure() const { return failure_; }

 private:
  ParseFailure failure_;
};

struct SceneRewrite {
  std::vector<std::string> added_objects;
  std::string description;
  friend bool operator==(const SceneRewrite&, const SceneRewrite&) = default;
};

providers::ChatRequest build_scene_prompt(std::string_view c_t,
                                          const ScenePromptTemplate& tmpl = default_scene_template(),
                                          const ChatParams& params = {});

/// Objects: comma-split of the first "Added objects:" line, trimmed and
/// deduplicated (case-insensitive, first spelling kept). Description: all
/// text after the first "Rewritten description:" label, trimmed.
SceneRewrite parse_scene_response(std::string_view text);

/// One "Step t - original landmark: U | new observation: C" line per step,
/// then the original instruction as the last labeled line.
providers::ChatRequest build_instruction_prompt(
    const std::vector<std::string>& landmarks, const std::vector<std::string>& new_descs,
    std::string_view original,
    const InstructionPromptTemplate& tmpl = default_instruction_template(),
    const ChatParams& params = {});

std::string parse_instruction_response(std::string_view text,
                                       std::size_t max_words = kDefaultMaxInstructionWords);

/// Re-query after a parse failure: the same request with the grammar
/// restated at the end of the user text.
providers::ChatRequest restate_grammar(const providers::ChatRequest& req, std::string_view grammar,
                                       int attempt);

}  // namespace vlnaug::rewrite
