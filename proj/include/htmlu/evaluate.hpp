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

#ifndef HTMLU_EVALUATE_HPP_
#define HTMLU_EVALUATE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "htmlu/codec.hpp"
#include "htmlu/distill.hpp"
#include "htmlu/model_client.hpp"
#include "htmlu/nav_env.hpp"

namespace htmlu {

// Text metrics are absent for navigation; success rate only exists there.
struct EvalReport {
  std::string task;
  std::size_t n = 0;
  std::optional<double> exact_match_pct;
  std::optional<double> bleu;
  std::optional<double> rouge1_f;
  std::optional<double> success_rate_pct;
  std::map<std::string, std::size_t> failure_mode_counts;
  std::vector<std::string> predictions;
};

EvalReport evaluate_classification(const std::vector<ClassificationExample>& data,
                                   Model& predictor,
                                   const CategoryVocabulary& vocab);

EvalReport evaluate_descriptions(const std::vector<DescriptionExample>& data,
                                 Model& predictor);

struct EpisodeSpec {
  std::string task;
  std::uint64_t seed = 0;
};

using PolicyFactory =
    std::function<std::unique_ptr<Model>(const TaskSpec& task, std::uint64_t seed)>;

// Runs every episode with a fresh policy from `factory`; the report
// aggregates success and parse-error counts. Episodes are returned through
// `episodes` when non-null, in input order.
EvalReport evaluate_navigation(const std::vector<EpisodeSpec>& specs,
                               const PolicyFactory& factory,
                               std::vector<EpisodeRecord>* episodes = nullptr,
                               unsigned jobs = 1);

void to_json(nlohmann::json& j, const EvalReport& r);

}  // namespace htmlu

#endif  // HTMLU_EVALUATE_HPP_
