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

#ifndef HTMLU_METRICS_HPP_
#define HTMLU_METRICS_HPP_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "htmlu/errors.hpp"
#include "htmlu/html.hpp"

namespace htmlu {

class EmptyInput : public UserError {
 public:
  using UserError::UserError;
};

class NoTextNodes : public UserError {
 public:
  using UserError::UserError;
};

// 1 iff equal after trimming surrounding whitespace; case-sensitive.
int exact_match(std::string_view pred, std::string_view gold);

// Corpus BLEU over whitespace tokens (case-sensitive), uniform weights for
// 1..4-grams, clipped counts against a single reference, brevity penalty
// exp(1 - r/c) when c <= r. No smoothing: any zero n-gram precision gives 0.
struct BleuScore {
  double score = 0.0;  // [0, 100]
  std::array<double, 4> precisions{};
  double brevity_penalty = 0.0;
  std::size_t hypothesis_length = 0;
  std::size_t reference_length = 0;
};
BleuScore corpus_bleu(const std::vector<std::string>& preds,
                      const std::vector<std::string>& golds);
double bleu(const std::vector<std::string>& preds,
            const std::vector<std::string>& golds);

// Clipped unigram overlap on lower-cased whitespace tokens.
struct Rouge1 {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};
Rouge1 rouge1(std::string_view pred, std::string_view gold);

// Text of the visible text node whose serialized start offset is nearest to
// the start of the target element's open tag; ties go to the earlier
// offset. Returned trimmed.
std::string closest_description(const HtmlDocument& snippet);
std::string closest_description(std::string_view snippet_html);

}  // namespace htmlu

#endif  // HTMLU_METRICS_HPP_
