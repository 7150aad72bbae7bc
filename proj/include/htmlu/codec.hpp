// Copyright 2026 The htmlu Authors.
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

// Text encodings of task records: navigation actions and inputs,
// classification inputs and categories, and few-shot prompts.

#ifndef HTMLU_CODEC_HPP_
#define HTMLU_CODEC_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "htmlu/errors.hpp"

namespace htmlu {

enum class ActionFunction { Click, Type };

struct Action {
  ActionFunction function = ActionFunction::Click;
  int ref = 1;
  std::optional<std::string> text;  // present iff function == Type

  static Action click(int ref) { return Action{ActionFunction::Click, ref, {}}; }
  static Action type(int ref, std::string text) {
    return Action{ActionFunction::Type, ref, std::move(text)};
  }
  bool operator==(const Action&) const = default;
};

struct NavigationStep {
  std::vector<Action> action_history;  // oldest first
  std::string instruction;
  std::string html;
  Action action;
};

struct ClassificationExample {
  std::string snippet_html;
  std::string category;
};

enum class ActionErrorKind { MalformedRecord, NonIntegerRef, UnknownFunction, MissingText };

std::string_view to_string(ActionErrorKind kind);

class ActionParseError : public UserError {
 public:
  ActionParseError(ActionErrorKind kind, const std::string& what)
      : UserError(what), kind_(kind) {}
  ActionErrorKind kind() const { return kind_; }

 private:
  ActionErrorKind kind_;
};

// {action: click, ref: N} or {action: type, ref: N, text: T}
std::string encode_action(const Action& action);

// Strict inverse of encode_action; only surrounding whitespace is tolerated.
// Everything between "text: " and the final '}' is the payload.
Action parse_action(std::string_view model_output);

inline constexpr char kFieldDelimiter = '\n';

// history (space-joined actions), delimiter, instruction, delimiter, html.
// The history field and its delimiter are omitted when the history is empty.
std::string encode_navigation_input(const NavigationStep& step);

struct NavigationInput {
  std::string history;  // raw history field, "" when absent
  std::string instruction;
  std::string html;
};
// Splits an encoded navigation input back into its fields. A leading line
// that starts with "{action:" is taken to be the history.
NavigationInput decode_navigation_input(std::string_view encoded);

// Ordered category names plus paraphrase -> canonical mapping.
class CategoryVocabulary {
 public:
  CategoryVocabulary() = default;
  CategoryVocabulary(std::vector<std::string> names,
                     std::map<std::string, std::string> paraphrases);

  // {"categories": [...], "paraphrases": {"e mail": "email", ...}}
  static CategoryVocabulary from_json(const nlohmann::json& j);
  static CategoryVocabulary load(const std::string& path);

  const std::vector<std::string>& names() const { return names_; }
  const std::map<std::string, std::string>& paraphrases() const {
    return paraphrases_;
  }
  bool contains(std::string_view name) const;
  std::optional<std::size_t> index_of(std::string_view name) const;
  // Paraphrase keys are matched case-folded with collapsed whitespace.
  std::optional<std::string> paraphrase(std::string_view raw) const;
  bool empty() const { return names_.empty(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::map<std::string, std::string> paraphrases_;
};

std::string encode_classification_input(std::string_view snippet_html);

struct DecodedCategory {
  std::string category;
  bool in_vocabulary = false;
};

// Trim, exact vocabulary match, canonicalize_category, else the trimmed
// output flagged out-of-vocabulary.
DecodedCategory decode_category(std::string_view model_output,
                                const CategoryVocabulary& vocab);

// In-vocabulary inputs map to themselves. Otherwise: paraphrase lookup,
// then underscore-token rotations and reversals (first hit in vocabulary).
std::optional<std::string> canonicalize_category(
    std::string_view raw, const CategoryVocabulary& vocab);

// Drops svg/path/img/iframe subtrees and every class attribute.
std::string clean_prompt_example(std::string_view html);

enum class FewShotErrorKind { DuplicateCategory, UnknownCategory };

class FewShotError : public UserError {
 public:
  FewShotError(FewShotErrorKind kind, const std::string& what)
      : UserError(what), kind_(kind) {}
  FewShotErrorKind kind() const { return kind_; }

 private:
  FewShotErrorKind kind_;
};

// One "<html>\nRole: <category>" block per example in vocabulary order, then
// the query block ending in "Role:". Blocks are separated by a blank line.
std::string build_fewshot_prompt(
    const std::vector<ClassificationExample>& examples,
    std::string_view query_html, const CategoryVocabulary& vocab);

void to_json(nlohmann::json& j, const Action& a);
void from_json(const nlohmann::json& j, Action& a);
void to_json(nlohmann::json& j, const NavigationStep& s);
void from_json(const nlohmann::json& j, NavigationStep& s);
void to_json(nlohmann::json& j, const ClassificationExample& e);
void from_json(const nlohmann::json& j, ClassificationExample& e);

}  // namespace htmlu

#endif  // HTMLU_CODEC_HPP_
