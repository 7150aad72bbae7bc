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

#include "htmlu/codec.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include "htmlu/html.hpp"
#include "htmlu/text_util.hpp"

namespace htmlu {

std::string_view to_string(ActionErrorKind kind) {
  switch (kind) {
    case ActionErrorKind::MalformedRecord:
      return "MalformedRecord";
    case ActionErrorKind::NonIntegerRef:
      return "NonIntegerRef";
    case ActionErrorKind::UnknownFunction:
      return "UnknownFunction";
    case ActionErrorKind::MissingText:
      return "MissingText";
  }
  return "Unknown";
}

std::string encode_action(const Action& action) {
  std::string out = "{action: ";
  out += action.function == ActionFunction::Click ? "click" : "type";
  out += ", ref: ";
  out += std::to_string(action.ref);
  if (action.function == ActionFunction::Type) {
    out += ", text: ";
    out += action.text.value_or("");
  }
  out += '}';
  return out;
}

namespace {

[[noreturn]] void fail(ActionErrorKind kind, std::string_view input,
                       std::string_view why) {
  throw ActionParseError(kind, std::string(why) + ": '" + std::string(input) +
                                   "'");
}

bool consume(std::string_view& s, std::string_view prefix) {
  if (s.substr(0, prefix.size()) != prefix) return false;
  s.remove_prefix(prefix.size());
  return true;
}

}  // namespace

Action parse_action(std::string_view model_output) {
  const std::string_view input = trim(model_output);
  std::string_view s = input;
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') {
    fail(ActionErrorKind::MalformedRecord, input, "not a braced record");
  }
  s = s.substr(1, s.size() - 2);
  if (!consume(s, "action: ")) {
    fail(ActionErrorKind::MalformedRecord, input, "missing 'action' key");
  }
  std::size_t comma = s.find(',');
  if (comma == std::string_view::npos) {
    fail(ActionErrorKind::MalformedRecord, input, "missing 'ref' key");
  }
  std::string_view function = s.substr(0, comma);
  s.remove_prefix(comma);

  Action action;
  if (function == "click") {
    action.function = ActionFunction::Click;
  } else if (function == "type") {
    action.function = ActionFunction::Type;
  } else {
    fail(ActionErrorKind::UnknownFunction, input, "unknown action function");
  }

  if (!consume(s, ", ref: ")) {
    fail(ActionErrorKind::MalformedRecord, input, "missing 'ref' key");
  }
  std::size_t ref_end = s.find(',');
  std::string_view ref_text = s.substr(0, ref_end);
  s.remove_prefix(ref_end == std::string_view::npos ? s.size() : ref_end);
  int ref = 0;
  auto [ptr, ec] =
      std::from_chars(ref_text.data(), ref_text.data() + ref_text.size(), ref);
  if (ref_text.empty() || ec != std::errc() ||
      ptr != ref_text.data() + ref_text.size() || ref < 1) {
    fail(ActionErrorKind::NonIntegerRef, input, "ref is not a positive integer");
  }
  action.ref = ref;

  if (action.function == ActionFunction::Click) {
    if (!s.empty()) fail(ActionErrorKind::MalformedRecord, input,
                         "unexpected fields after click ref");
    return action;
  }
  if (s.empty()) fail(ActionErrorKind::MissingText, input, "type without text");
  if (!consume(s, ", text: ")) {
    if (s == ", text:") {
      action.text = std::string();
      return action;
    }
    fail(ActionErrorKind::MalformedRecord, input, "expected 'text' key");
  }
  action.text = std::string(s);
  return action;
}

std::string encode_navigation_input(const NavigationStep& step) {
  std::string out;
  if (!step.action_history.empty()) {
    for (std::size_t i = 0; i < step.action_history.size(); ++i) {
      if (i > 0) out += ' ';
      out += encode_action(step.action_history[i]);
    }
    out += kFieldDelimiter;
  }
  out += step.instruction;
  out += kFieldDelimiter;
  out += step.html;
  return out;
}

NavigationInput decode_navigation_input(std::string_view encoded) {
  NavigationInput out;
  auto take_line = [&]() {
    std::size_t nl = encoded.find(kFieldDelimiter);
    std::string_view line = encoded.substr(0, nl);
    encoded.remove_prefix(nl == std::string_view::npos ? encoded.size()
                                                       : nl + 1);
    return std::string(line);
  };
  if (encoded.substr(0, 8) == "{action:") out.history = take_line();
  out.instruction = take_line();
  out.html = std::string(encoded);
  return out;
}

CategoryVocabulary::CategoryVocabulary(
    std::vector<std::string> names,
    std::map<std::string, std::string> paraphrases)
    : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], i).second) {
      throw UserError("duplicate category '" + names_[i] + "'");
    }
  }
  for (auto& [key, canonical] : paraphrases) {
    if (!contains(canonical)) {
      throw UserError("paraphrase '" + key + "' maps to unknown category '" +
                      canonical + "'");
    }
    paraphrases_[normalize_whitespace_casefold(key)] = canonical;
  }
}

CategoryVocabulary CategoryVocabulary::from_json(const nlohmann::json& j) {
  if (!j.contains("categories") || !j["categories"].is_array()) {
    throw UserError("vocabulary config needs a 'categories' array");
  }
  std::vector<std::string> names = j["categories"].get<std::vector<std::string>>();
  std::map<std::string, std::string> paraphrases;
  if (j.contains("paraphrases")) {
    paraphrases = j["paraphrases"].get<std::map<std::string, std::string>>();
  }
  return CategoryVocabulary(std::move(names), std::move(paraphrases));
}

CategoryVocabulary CategoryVocabulary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open vocabulary file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UserError("bad vocabulary file " + path + ": " + e.what());
  }
  return from_json(j);
}

bool CategoryVocabulary::contains(std::string_view name) const {
  return index_.count(std::string(name)) > 0;
}

std::optional<std::size_t> CategoryVocabulary::index_of(
    std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> CategoryVocabulary::paraphrase(
    std::string_view raw) const {
  auto it = paraphrases_.find(normalize_whitespace_casefold(raw));
  if (it == paraphrases_.end()) return std::nullopt;
  return it->second;
}

std::string encode_classification_input(std::string_view snippet_html) {
  return std::string(snippet_html);
}

std::optional<std::string> canonicalize_category(
    std::string_view raw, const CategoryVocabulary& vocab) {
  std::string_view text = trim(raw);
  if (vocab.contains(text)) return std::string(text);
  if (auto mapped = vocab.paraphrase(text)) return mapped;

  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (true) {
    std::size_t us = text.find('_', start);
    tokens.emplace_back(text.substr(start, us - start));
    if (us == std::string_view::npos) break;
    start = us + 1;
  }
  if (tokens.size() < 2) return std::nullopt;

  auto try_rotations = [&](std::vector<std::string> seq,
                           std::size_t first) -> std::optional<std::string> {
    std::rotate(seq.begin(), seq.begin() + first, seq.end());
    for (std::size_t r = first; r < seq.size(); ++r) {
      std::string candidate = join(seq, "_");
      if (vocab.contains(candidate)) return candidate;
      std::rotate(seq.begin(), seq.begin() + 1, seq.end());
    }
    return std::nullopt;
  };
  if (auto hit = try_rotations(tokens, 1)) return hit;
  std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
  return try_rotations(reversed, 0);
}

DecodedCategory decode_category(std::string_view model_output,
                                const CategoryVocabulary& vocab) {
  std::string_view text = trim(model_output);
  if (vocab.contains(text)) return {std::string(text), true};
  if (auto canonical = canonicalize_category(text, vocab)) {
    return {*canonical, true};
  }
  return {std::string(text), false};
}

std::string clean_prompt_example(std::string_view html) {
  static const std::set<std::string, std::less<>> kDropped = {"svg", "path",
                                                              "img", "iframe"};
  HtmlDocument doc = parse_html(html);
  for (NodeId id : doc.elements()) {
    if (!doc.contains(id)) continue;
    HtmlNode& n = doc.mutable_node(id);
    if (kDropped.count(n.tag) > 0) {
      doc.detach(id);
      continue;
    }
    n.remove_attribute("class");
  }
  return serialize(doc);
}

std::string build_fewshot_prompt(
    const std::vector<ClassificationExample>& examples,
    std::string_view query_html, const CategoryVocabulary& vocab) {
  std::vector<std::pair<std::size_t, const ClassificationExample*>> ordered;
  std::set<std::string> seen;
  for (const auto& ex : examples) {
    auto index = vocab.index_of(ex.category);
    if (!index) {
      throw FewShotError(FewShotErrorKind::UnknownCategory,
                         "category '" + ex.category + "' not in vocabulary");
    }
    if (!seen.insert(ex.category).second) {
      throw FewShotError(FewShotErrorKind::DuplicateCategory,
                         "more than one example for '" + ex.category + "'");
    }
    ordered.emplace_back(*index, &ex);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::string out;
  for (const auto& [index, ex] : ordered) {
    out += clean_prompt_example(ex->snippet_html);
    out += "\nRole: ";
    out += ex->category;
    out += "\n\n";
  }
  out += clean_prompt_example(query_html);
  out += "\nRole:";
  return out;
}

void to_json(nlohmann::json& j, const Action& a) {
  j = nlohmann::json{
      {"function", a.function == ActionFunction::Click ? "click" : "type"},
      {"ref", a.ref}};
  if (a.text) j["text"] = *a.text;
}

void from_json(const nlohmann::json& j, Action& a) {
  std::string function = j.at("function").get<std::string>();
  if (function == "click") {
    a.function = ActionFunction::Click;
  } else if (function == "type") {
    a.function = ActionFunction::Type;
  } else {
    throw UserError("unknown action function '" + function + "'");
  }
  a.ref = j.at("ref").get<int>();
  if (j.contains("text")) {
    a.text = j["text"].get<std::string>();
  } else {
    a.text.reset();
  }
  if ((a.function == ActionFunction::Type) != a.text.has_value() || a.ref < 1) {
    throw UserError("invalid action record " + j.dump());
  }
}

void to_json(nlohmann::json& j, const NavigationStep& s) {
  j = nlohmann::json{{"action_history", s.action_history},
                     {"instruction", s.instruction},
                     {"html", s.html},
                     {"action", s.action}};
}

void from_json(const nlohmann::json& j, NavigationStep& s) {
  s.action_history = j.value("action_history", std::vector<Action>{});
  s.instruction = j.at("instruction").get<std::string>();
  s.html = j.at("html").get<std::string>();
  s.action = j.at("action").get<Action>();
}

void to_json(nlohmann::json& j, const ClassificationExample& e) {
  j = nlohmann::json{{"snippet_html", e.snippet_html}, {"category", e.category}};
}

void from_json(const nlohmann::json& j, ClassificationExample& e) {
  e.snippet_html = j.at("snippet_html").get<std::string>();
  e.category = j.at("category").get<std::string>();
}

}  // namespace htmlu
