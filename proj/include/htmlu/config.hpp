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

#ifndef HTMLU_CONFIG_HPP_
#define HTMLU_CONFIG_HPP_

#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "htmlu/codec.hpp"
#include "htmlu/distill.hpp"
#include "htmlu/model_client.hpp"
#include "htmlu/snippet.hpp"

namespace htmlu {

// The category vocabulary shipped with the toolkit (data/categories.json).
const nlohmann::json& builtin_vocabulary_json();
CategoryVocabulary builtin_vocabulary();

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
EnvLookup process_env();

// Toolkit settings. Layers, lowest to highest precedence: built-in
// defaults, the JSON config file, HTMLU_* environment variables, then
// command-line flags (applied by the caller).
//
// Environment names are the dotted key upper-cased with '.' -> '_' and an
// HTMLU_ prefix: snippet.max_height -> HTMLU_SNIPPET_MAX_HEIGHT. List
// values are comma-separated.
struct ToolkitConfig {
  SnippetConfig snippet;
  DistillConfig distill;
  std::string vocabulary_path;  // empty: built-in vocabulary
  ModelEndpoint endpoint;
  int max_output_tokens = 64;
  double temperature = 0.0;
  unsigned jobs = 0;

  static nlohmann::json default_json();
  static ToolkitConfig from_json(const nlohmann::json& j);
  // Defaults, then `path` if given, then the environment.
  static ToolkitConfig load(const std::optional<std::string>& path,
                            const EnvLookup& env);

  CategoryVocabulary vocabulary() const;
};

}  // namespace htmlu

#endif  // HTMLU_CONFIG_HPP_
