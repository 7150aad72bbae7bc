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

#include "htmlu/config.hpp"

#include <cstdlib>
#include <fstream>

#include "htmlu/text_util.hpp"

namespace htmlu {

// Generated from data/categories.json at configure time.
extern const char* const kBuiltinVocabularyJson;

const nlohmann::json& builtin_vocabulary_json() {
  static const nlohmann::json j = nlohmann::json::parse(kBuiltinVocabularyJson);
  return j;
}

CategoryVocabulary builtin_vocabulary() {
  return CategoryVocabulary::from_json(builtin_vocabulary_json());
}

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  };
}

nlohmann::json ToolkitConfig::default_json() {
  return {
      {"snippet", {{"max_new_descendants_pct", 25.0}, {"max_height", 3}}},
      {"distill",
       {{"max_per_description", 10},
        {"label_tag_pool", {"div", "span", "a", "label"}},
        {"drop_single_text", true},
        {"random_retention", false},
        {"seed", 0}}},
      {"vocabulary", {{"path", ""}}},
      {"model",
       {{"base_url", ""},
        {"timeout_ms", 30000},
        {"max_retries", 3},
        {"initial_backoff_ms", 200},
        {"max_input_chars", 8000},
        {"max_in_flight", 4},
        {"max_output_tokens", 64},
        {"temperature", 0.0},
        {"api_key", ""}}},
      {"jobs", 0},
  };
}

namespace {

void merge(nlohmann::json& base, const nlohmann::json& overlay,
           const std::string& prefix) {
  for (auto it = overlay.begin(); it != overlay.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (!base.contains(it.key())) {
      throw UserError("unknown config key '" + key + "'");
    }
    if (base[it.key()].is_object()) {
      if (!it->is_object()) throw UserError("config key '" + key + "' must be an object");
      merge(base[it.key()], *it, key);
    } else {
      base[it.key()] = *it;
    }
  }
}

nlohmann::json parse_env_value(const nlohmann::json& like, const std::string& raw,
                               const std::string& name) {
  try {
    if (like.is_boolean()) {
      std::string v = ascii_lower(trim(raw));
      if (v == "1" || v == "true" || v == "yes") return true;
      if (v == "0" || v == "false" || v == "no") return false;
      throw UserError("bad boolean");
    }
    if (like.is_number()) {
      const std::string v(trim(raw));
      std::size_t used = 0;
      nlohmann::json out;
      if (like.is_number_integer()) {
        out = std::stoll(v, &used);
      } else {
        out = std::stod(v, &used);
      }
      if (used != v.size()) throw UserError("trailing characters");
      return out;
    }
    if (like.is_array()) {
      nlohmann::json arr = nlohmann::json::array();
      std::size_t start = 0;
      while (start <= raw.size()) {
        std::size_t comma = raw.find(',', start);
        std::string_view item = trim(std::string_view(raw).substr(
            start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!item.empty()) arr.push_back(std::string(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      return arr;
    }
  } catch (const std::exception&) {
    throw UserError("cannot parse environment variable " + name + "='" + raw + "'");
  }
  return raw;
}

void apply_env(nlohmann::json& node, const std::string& prefix, const EnvLookup& env) {
  for (auto it = node.begin(); it != node.end(); ++it) {
    std::string name = prefix + "_" + it.key();
    if (it->is_object()) {
      apply_env(*it, name, env);
      continue;
    }
    std::string upper;
    for (char c : name) upper += (c >= 'a' && c <= 'z') ? static_cast<char>(c - 32) : c;
    if (auto raw = env(upper)) *it = parse_env_value(*it, *raw, upper);
  }
}

}  // namespace

ToolkitConfig ToolkitConfig::from_json(const nlohmann::json& overlay) {
  nlohmann::json j = default_json();
  merge(j, overlay, "");
  ToolkitConfig c;
  try {
    c.snippet.max_new_descendants_pct = j["snippet"]["max_new_descendants_pct"].get<double>();
    c.snippet.max_height = j["snippet"]["max_height"].get<int>();
    const auto& d = j["distill"];
    c.distill.max_per_description = d["max_per_description"].get<std::size_t>();
    c.distill.label_tag_pool = d["label_tag_pool"].get<std::vector<std::string>>();
    c.distill.drop_single_text = d["drop_single_text"].get<bool>();
    c.distill.random_retention = d["random_retention"].get<bool>();
    c.distill.rng_seed = d["seed"].get<std::uint64_t>();
    c.vocabulary_path = j["vocabulary"]["path"].get<std::string>();
    const auto& m = j["model"];
    c.endpoint.base_url = m["base_url"].get<std::string>();
    c.endpoint.timeout = std::chrono::milliseconds(m["timeout_ms"].get<long long>());
    c.endpoint.max_retries = m["max_retries"].get<int>();
    c.endpoint.initial_backoff =
        std::chrono::milliseconds(m["initial_backoff_ms"].get<long long>());
    c.endpoint.max_input_chars = m["max_input_chars"].get<std::size_t>();
    c.endpoint.max_in_flight = m["max_in_flight"].get<std::size_t>();
    c.endpoint.api_key = m["api_key"].get<std::string>();
    c.max_output_tokens = m["max_output_tokens"].get<int>();
    c.temperature = m["temperature"].get<double>();
    c.jobs = j["jobs"].get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    throw UserError(std::string("bad config value: ") + e.what());
  }
  c.snippet.validate();
  c.distill.validate();
  c.distill.jobs = c.jobs;
  return c;
}

ToolkitConfig ToolkitConfig::load(const std::optional<std::string>& path,
                                  const EnvLookup& env) {
  nlohmann::json overlay = nlohmann::json::object();
  if (path) {
    std::ifstream in(*path);
    if (!in) throw IoError("cannot open config file " + *path);
    try {
      in >> overlay;
    } catch (const nlohmann::json::exception& e) {
      throw UserError("bad config file " + *path + ": " + e.what());
    }
  }
  nlohmann::json merged = default_json();
  merge(merged, overlay, "");
  apply_env(merged, "htmlu", env);
  ToolkitConfig c = from_json(merged);
  // The API key is conventionally supplied on its own.
  if (c.endpoint.api_key.empty()) {
    if (auto key = env("HTMLU_API_KEY")) c.endpoint.api_key = *key;
  }
  return c;
}

CategoryVocabulary ToolkitConfig::vocabulary() const {
  if (vocabulary_path.empty()) return builtin_vocabulary();
  return CategoryVocabulary::load(vocabulary_path);
}

}  // namespace htmlu
