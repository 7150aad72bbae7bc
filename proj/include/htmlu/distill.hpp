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

// Description-generation corpus builder. Labels carrying a `for` attribute
// name the element they describe; each such pair becomes one example of
// (snippet around the element, element id, label text).

#ifndef HTMLU_DISTILL_HPP_
#define HTMLU_DISTILL_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "htmlu/html.hpp"
#include "htmlu/rng.hpp"
#include "htmlu/snippet.hpp"
#include "htmlu/warc.hpp"

namespace htmlu {

struct DescriptionExample {
  std::string snippet_html;
  std::string element_id;
  std::string description;
  std::string source_url;
  std::string tld;

  bool operator==(const DescriptionExample&) const = default;
};

struct DistillConfig {
  std::size_t max_per_description = 10;
  std::vector<std::string> label_tag_pool = {"div", "span", "a", "label"};
  bool drop_single_text = true;
  std::uint64_t rng_seed = 0;
  // Keep a seeded random subset per description instead of the earliest.
  bool random_retention = false;
  // Worker threads for page processing; 0 = hardware concurrency.
  unsigned jobs = 0;

  void validate() const;
};

struct LabelPair {
  NodeId label;
  NodeId target;
  std::string description;  // raw concatenated label text
};

struct LabelPairScan {
  std::vector<LabelPair> pairs;
  std::size_t unmatched_labels = 0;
  std::size_t duplicate_id_warnings = 0;
};

// Labels with a `for` attribute, paired with the first element (document
// order) whose id matches. Labels without a match are counted and dropped.
LabelPairScan extract_label_pairs(const HtmlDocument& doc);

// Trimmed description if it is clean Unicode with at least one
// alphanumeric character.
std::optional<std::string> clean_filter(std::string_view description);

class NotALabel : public UserError {
 public:
  using UserError::UserError;
};

// Replaces the label's tag with a uniform draw from `pool` and removes its
// `for` attribute.
HtmlDocument randomize_label_tag(HtmlDocument doc, NodeId label_node, Rng& rng,
                                 const std::vector<std::string>& pool);

// Number of distinct trimmed, non-empty visible texts.
std::size_t distinct_text_count(const HtmlDocument& doc);

// Balancing key: case-folded with collapsed whitespace.
std::string description_key(std::string_view description);

std::string top_level_domain(std::string_view url);

struct DistillReport {
  // Archive level.
  std::size_t warc_files = 0;
  std::size_t warc_records = 0;
  std::size_t non_html_skipped = 0;
  std::size_t malformed_records = 0;
  // Page level.
  std::size_t pages = 0;
  std::size_t parse_failures = 0;
  // Funnel.
  std::size_t raw_pairs = 0;
  std::size_t unmatched_labels = 0;
  std::size_t duplicate_id_warnings = 0;
  std::size_t dropped_unclean = 0;
  std::size_t filtered = 0;  // pairs surviving clean_filter
  std::size_t dropped_ambiguous_id = 0;
  std::size_t dropped_single_text = 0;
  std::size_t before_balancing = 0;
  std::size_t dropped_by_cap = 0;
  std::size_t emitted = 0;
  std::size_t unique_descriptions = 0;
  // Share of pre-balancing examples covered by the 20 most frequent
  // descriptions, and those descriptions with their counts.
  double top20_share = 0.0;
  std::vector<std::pair<std::string, std::size_t>> top_descriptions;

  bool operator==(const DistillReport&) const = default;
};

using ExampleSink = std::function<void(const DescriptionExample&)>;

// Incremental pipeline. Pages are numbered globally in the order they are
// added; per-pair random streams derive from (rng_seed, page index, pair
// index), so output does not depend on batching or thread count.
class Distiller {
 public:
  Distiller(DistillConfig config, SnippetConfig snippet_config,
            ExampleSink sink);

  void add_pages(const std::vector<HtmlPage>& pages);
  void add_warc(const std::string& path);
  // Emits any retained examples and returns the final report.
  DistillReport finish();

  struct Candidate {
    DescriptionExample example;
    std::string key;
  };

 private:
  void accept(std::vector<Candidate> candidates);

  DistillConfig config_;
  SnippetConfig snippet_config_;
  ExampleSink sink_;
  DistillReport report_;
  std::size_t next_page_index_ = 0;
  std::map<std::string, std::size_t> seen_;
  std::vector<Candidate> retained_;
  bool finished_ = false;
};

DistillReport distill(const std::vector<std::string>& warc_paths,
                      const DistillConfig& config,
                      const SnippetConfig& snippet_config,
                      const ExampleSink& sink);

DistillReport distill_pages(const std::vector<HtmlPage>& pages,
                            const DistillConfig& config,
                            const SnippetConfig& snippet_config,
                            const ExampleSink& sink);

void to_json(nlohmann::json& j, const DescriptionExample& e);
void from_json(const nlohmann::json& j, DescriptionExample& e);
void to_json(nlohmann::json& j, const DistillReport& r);

}  // namespace htmlu

#endif  // HTMLU_DISTILL_HPP_
