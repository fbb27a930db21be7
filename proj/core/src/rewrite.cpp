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

#include "vlnaug/rewrite.hpp"

#include <algorithm>
#include <set>

#include "default_templates.hpp"
#include "vlnaug/corpus.hpp"
#include "vlnaug/labels.hpp"
#include "vlnaug/text.hpp"

namespace vlnaug::rewrite {
namespace {

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

// Prompt lines are line-oriented, so embedded newlines are folded.
std::string one_line(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : text::trim(s)) {
    if (c == '\n' || c == '\r' || c == '\t' || c == ' ') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

std::string section(const std::vector<std::pair<std::string, std::string>>& sections,
                    std::string_view name, bool required = true) {
  for (const auto& [key, body] : sections) {
    if (key == name) return body;
  }
  require(!required, ErrorKind::kConfig, "prompt template: missing section [" + std::string(name) + "]");
  return {};
}

providers::ChatRequest make_request(std::string system_text, std::string user_text,
                                    const ChatParams& params) {
  providers::ChatRequest req;
  req.system_text = std::move(system_text);
  req.user_text = std::move(user_text);
  req.temperature = params.temperature;
  req.presence_penalty = params.presence_penalty;
  req.max_tokens = params.max_tokens;
  req.seed = params.seed;
  return req;
}

std::string step_line(std::string_view prefix, std::size_t t, std::string_view landmark,
                      std::string_view desc) {
  return std::string(prefix) + std::to_string(t) + " - " + std::string(labels::kOriginalLandmark) +
         " " + one_line(landmark) + " | " + std::string(labels::kNewObservation) + " " +
         one_line(desc);
}

// Index of the first line whose trimmed text starts with `label`.
std::optional<std::size_t> find_label(const std::vector<std::string_view>& lines,
                                      std::string_view label, std::size_t from = 0) {
  for (std::size_t i = from; i < lines.size(); ++i) {
    if (starts_with(text::trim(lines[i]), label)) return i;
  }
  return std::nullopt;
}

std::string_view after(std::string_view line, std::string_view label) {
  line = text::trim(line);
  return text::trim(line.substr(label.size()));
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_sections(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto line : text::split_lines(text)) {
    const auto trimmed = text::trim(line);
    if (starts_with(trimmed, "#")) continue;
    if (trimmed.size() > 2 && trimmed.front() == '[' && trimmed.back() == ']') {
      out.emplace_back(std::string(trimmed.substr(1, trimmed.size() - 2)), std::string());
      continue;
    }
    if (out.empty()) {
      require(trimmed.empty(), ErrorKind::kConfig, "prompt template: text before first section");
      continue;
    }
    auto& body = out.back().second;
    if (!body.empty()) body += '\n';
    body += line;
  }
  for (auto& [key, body] : out) body = std::string(text::trim(body));
  return out;
}

ScenePromptTemplate parse_scene_template(std::string_view text) {
  const auto s = parse_sections(text);
  ScenePromptTemplate t;
  t.system_text = section(s, "system", false);
  t.task_definition = section(s, "task");
  t.example.input = one_line(section(s, "example.input"));
  t.example.added_objects = text::split_trimmed(section(s, "example.added_objects"), ',');
  t.example.output = one_line(section(s, "example.output"));
  if (auto g = section(s, "grammar", false); !g.empty()) t.output_grammar = one_line(g);
  validate(t);
  return t;
}

InstructionPromptTemplate parse_instruction_template(std::string_view text) {
  const auto s = parse_sections(text);
  InstructionPromptTemplate t;
  t.system_text = section(s, "system", false);
  t.task_definition = section(s, "task");
  const auto steps = section(s, "example.steps");
  for (auto line : text::split_lines(steps)) {
    if (text::trim(line).empty()) continue;
    const auto bar = line.find('|');
    require(bar != line.npos, ErrorKind::kConfig,
            "prompt template: example step needs '<landmark> | <observation>'");
    t.example.landmarks.emplace_back(text::trim(line.substr(0, bar)));
    t.example.new_descriptions.emplace_back(text::trim(line.substr(bar + 1)));
  }
  t.example.original = one_line(section(s, "example.instruction"));
  t.example.output = one_line(section(s, "example.output"));
  if (auto g = section(s, "grammar", false); !g.empty()) t.output_grammar = one_line(g);
  validate(t);
  return t;
}

ScenePromptTemplate load_scene_template(const std::filesystem::path& path) {
  return parse_scene_template(corpus::read_text_file(path));
}

InstructionPromptTemplate load_instruction_template(const std::filesystem::path& path) {
  return parse_instruction_template(corpus::read_text_file(path));
}

const ScenePromptTemplate& default_scene_template() {
  static const auto kTemplate = parse_scene_template(defaults::kSceneTemplate);
  return kTemplate;
}

const InstructionPromptTemplate& default_instruction_template() {
  static const auto kTemplate = parse_instruction_template(defaults::kInstructionTemplate);
  return kTemplate;
}

void validate(const ScenePromptTemplate& tmpl) {
  require(tmpl.task_definition.find(kSceneDirective) != std::string::npos, ErrorKind::kConfig,
          "scene template: task definition lacks the add-objects directive");
  require(!tmpl.example.input.empty() && !tmpl.example.added_objects.empty(), ErrorKind::kConfig,
          "scene template: incomplete in-context example");
  const auto answer = std::string(labels::kAddedObjects) + " " +
                      text::join(tmpl.example.added_objects, ", ") + "\n" +
                      std::string(labels::kRewrittenDescription) + " " + tmpl.example.output;
  try {
    const auto parsed = parse_scene_response(answer);
    require(parsed.added_objects == tmpl.example.added_objects &&
                parsed.description == tmpl.example.output,
            ErrorKind::kConfig, "scene template: example does not round-trip");
  } catch (const ParseError& e) {
    fail(ErrorKind::kConfig, std::string("scene template: example does not parse: ") + e.what());
  }
}

void validate(const InstructionPromptTemplate& tmpl) {
  for (auto directive : {kInstructionDirective, kActionSynonymDirective, kSyntaxDirective}) {
    require(tmpl.task_definition.find(directive) != std::string::npos, ErrorKind::kConfig,
            "instruction template: task definition lacks \"" + std::string(directive) + "\"");
  }
  require(!tmpl.example.landmarks.empty() && !tmpl.example.original.empty(), ErrorKind::kConfig,
          "instruction template: incomplete in-context example");
  try {
    const auto parsed = parse_instruction_response(std::string(labels::kRewrittenInstruction) +
                                                   " " + tmpl.example.output);
    require(parsed == tmpl.example.output, ErrorKind::kConfig,
            "instruction template: example does not round-trip");
  } catch (const ParseError& e) {
    fail(ErrorKind::kConfig,
         std::string("instruction template: example does not parse: ") + e.what());
  }
}

providers::ChatRequest build_scene_prompt(std::string_view c_t, const ScenePromptTemplate& tmpl,
                                          const ChatParams& params) {
  require(!text::trim(c_t).empty(), ErrorKind::kPrecondition,
          "build_scene_prompt: empty scene description");
  std::string user = tmpl.task_definition + "\n\n" + tmpl.output_grammar + "\n\nExample:\n";
  user += std::string(labels::kSceneDescription) + " " + tmpl.example.input + "\n";
  user += std::string(labels::kAddedObjects) + " " + text::join(tmpl.example.added_objects, ", ") + "\n";
  user += std::string(labels::kRewrittenDescription) + " " + tmpl.example.output + "\n\n";
  user += std::string(labels::kSceneDescription) + " " + one_line(c_t);
  return make_request(tmpl.system_text, std::move(user), params);
}

SceneRewrite parse_scene_response(std::string_view response) {
  const auto lines = text::split_lines(response);
  const auto obj_line = find_label(lines, labels::kAddedObjects);
  const auto desc_line = find_label(lines, labels::kRewrittenDescription);
  if (!obj_line || !desc_line) {
    throw ParseError(ParseFailure::kMissingLabel,
                     std::string("scene response: missing \"") +
                         std::string(obj_line ? labels::kRewrittenDescription : labels::kAddedObjects) +
                         "\"");
  }
  SceneRewrite out;
  std::set<std::string> seen;
  for (auto& obj : text::split_trimmed(after(lines[*obj_line], labels::kAddedObjects), ',')) {
    if (seen.insert(text::to_lower(obj)).second) out.added_objects.push_back(std::move(obj));
  }
  // The description runs to the end, or up to the objects line if that
  // comes later.
  const auto end = *obj_line > *desc_line ? *obj_line : lines.size();
  std::string desc(after(lines[*desc_line], labels::kRewrittenDescription));
  for (auto i = *desc_line + 1; i < end; ++i) {
    if (!desc.empty()) desc += '\n';
    desc += lines[i];
  }
  out.description = std::string(text::trim(desc));
  if (out.added_objects.empty() || out.description.empty()) {
    throw ParseError(ParseFailure::kEmptyField, "scene response: empty field");
  }
  return out;
}

providers::ChatRequest build_instruction_prompt(const std::vector<std::string>& landmarks,
                                                const std::vector<std::string>& new_descs,
                                                std::string_view original,
                                                const InstructionPromptTemplate& tmpl,
                                                const ChatParams& params) {
  require(!landmarks.empty() && landmarks.size() == new_descs.size(), ErrorKind::kPrecondition,
          "build_instruction_prompt: " + std::to_string(landmarks.size()) + " landmarks vs " +
              std::to_string(new_descs.size()) + " new descriptions");
  require(!text::trim(original).empty(), ErrorKind::kPrecondition,
          "build_instruction_prompt: empty original instruction");
  std::string user = tmpl.task_definition + "\n\n" + tmpl.output_grammar + "\n\nExample:\n";
  const auto& ex = tmpl.example;
  for (std::size_t t = 0; t < ex.landmarks.size(); ++t) {
    user += step_line("Example step ", t + 1, ex.landmarks[t], ex.new_descriptions[t]) + "\n";
  }
  user += std::string(labels::kOriginalInstruction) + " " + ex.original + "\n";
  user += std::string(labels::kRewrittenInstruction) + " " + ex.output + "\n\n";
  for (std::size_t t = 0; t < landmarks.size(); ++t) {
    user += step_line(labels::kStep, t + 1, landmarks[t], new_descs[t]) + "\n";
  }
  user += std::string(labels::kOriginalInstruction) + " " + one_line(original);
  return make_request(tmpl.system_text, std::move(user), params);
}

std::string parse_instruction_response(std::string_view response, std::size_t max_words) {
  const auto lines = text::split_lines(response);
  const auto at = find_label(lines, labels::kRewrittenInstruction);
  if (!at) {
    throw ParseError(ParseFailure::kMissingLabel,
                     "instruction response: missing \"Rewritten instruction:\"");
  }
  std::string body(after(lines[*at], labels::kRewrittenInstruction));
  for (auto i = *at + 1; i < lines.size(); ++i) {
    if (!body.empty()) body += '\n';
    body += lines[i];
  }
  body = std::string(text::trim(body));
  if (body.empty()) throw ParseError(ParseFailure::kEmptyField, "instruction response: empty body");
  if (const auto n = text::word_count(body); n > max_words) {
    throw ParseError(ParseFailure::kTooLong, "instruction response: " + std::to_string(n) +
                                                 " words exceeds cap of " +
                                                 std::to_string(max_words));
  }
  return body;
}

providers::ChatRequest restate_grammar(const providers::ChatRequest& req, std::string_view grammar,
                                       int attempt) {
  auto out = req;
  out.user_text += "\n\nThe previous answer (attempt " + std::to_string(attempt) +
                   ") did not follow the required format. " + std::string(grammar);
  return out;
}

}  // namespace vlnaug::rewrite
