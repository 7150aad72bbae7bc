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

#include "htmlu/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "htmlu/text_util.hpp"

namespace htmlu {

int exact_match(std::string_view pred, std::string_view gold) {
  return trim(pred) == trim(gold) ? 1 : 0;
}

namespace {

using Ngram = std::vector<std::string>;

std::map<Ngram, std::size_t> ngram_counts(const std::vector<std::string>& toks,
                                          std::size_t n) {
  std::map<Ngram, std::size_t> out;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    ++out[Ngram(toks.begin() + static_cast<std::ptrdiff_t>(i),
                toks.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return out;
}

}  // namespace

BleuScore corpus_bleu(const std::vector<std::string>& preds,
                      const std::vector<std::string>& golds) {
  if (preds.empty()) throw EmptyInput("BLEU needs at least one sentence pair");
  if (preds.size() != golds.size()) {
    throw UserError("BLEU prediction and reference counts differ");
  }
  std::array<std::size_t, 4> matched{};
  std::array<std::size_t, 4> total{};
  BleuScore out;
  for (std::size_t s = 0; s < preds.size(); ++s) {
    auto hyp = split_whitespace(preds[s]);
    auto ref = split_whitespace(golds[s]);
    out.hypothesis_length += hyp.size();
    out.reference_length += ref.size();
    for (std::size_t n = 1; n <= 4; ++n) {
      auto h = ngram_counts(hyp, n);
      auto r = ngram_counts(ref, n);
      for (const auto& [gram, count] : h) {
        auto it = r.find(gram);
        if (it != r.end()) matched[n - 1] += std::min(count, it->second);
        total[n - 1] += count;
      }
    }
  }
  double log_sum = 0.0;
  bool zero = false;
  for (std::size_t n = 0; n < 4; ++n) {
    out.precisions[n] = total[n] == 0 ? 0.0
                                      : static_cast<double>(matched[n]) /
                                            static_cast<double>(total[n]);
    if (matched[n] == 0) {
      zero = true;
    } else {
      log_sum += std::log(out.precisions[n]);
    }
  }
  const double c = static_cast<double>(out.hypothesis_length);
  const double r = static_cast<double>(out.reference_length);
  if (out.hypothesis_length == 0) {
    out.brevity_penalty = 0.0;
  } else {
    out.brevity_penalty = c > r ? 1.0 : std::exp(1.0 - r / c);
  }
  out.score = zero ? 0.0 : 100.0 * out.brevity_penalty * std::exp(log_sum / 4.0);
  return out;
}

double bleu(const std::vector<std::string>& preds,
            const std::vector<std::string>& golds) {
  return corpus_bleu(preds, golds).score;
}

Rouge1 rouge1(std::string_view pred, std::string_view gold) {
  auto p = split_whitespace(ascii_lower(pred));
  auto g = split_whitespace(ascii_lower(gold));
  Rouge1 out;
  if (p.empty() && g.empty()) return Rouge1{1.0, 1.0, 1.0};
  if (p.empty() || g.empty()) return out;
  std::map<std::string, std::size_t> gold_counts;
  for (const auto& t : g) ++gold_counts[t];
  std::size_t overlap = 0;
  std::map<std::string, std::size_t> pred_counts;
  for (const auto& t : p) ++pred_counts[t];
  for (const auto& [tok, count] : pred_counts) {
    auto it = gold_counts.find(tok);
    if (it != gold_counts.end()) overlap += std::min(count, it->second);
  }
  out.precision = static_cast<double>(overlap) / static_cast<double>(p.size());
  out.recall = static_cast<double>(overlap) / static_cast<double>(g.size());
  out.f1 = overlap == 0 ? 0.0
                        : 2.0 * out.precision * out.recall /
                              (out.precision + out.recall);
  return out;
}

std::string closest_description(const HtmlDocument& snippet) {
  std::vector<NodeId> targets = find_targets(snippet);
  if (targets.size() != 1) {
    throw UserError("snippet must carry exactly one target marker, found " +
                    std::to_string(targets.size()));
  }
  SerializedHtml ser = serialize_with_offsets(snippet);
  const auto anchor = static_cast<long long>(ser.offsets[targets[0].value]);
  std::optional<NodeId> best;
  long long best_distance = 0;
  for (NodeId id : visible_text_nodes(snippet)) {
    if (trim(snippet.node(id).text).empty()) continue;
    const auto offset = static_cast<long long>(ser.offsets[id.value]);
    const long long distance = std::llabs(offset - anchor);
    // Pre-order visits text nodes in increasing offset, so strict < keeps
    // the earlier one on ties.
    if (!best || distance < best_distance) {
      best = id;
      best_distance = distance;
    }
  }
  if (!best) throw NoTextNodes("snippet has no non-empty text nodes");
  return std::string(trim(snippet.node(*best).text));
}

std::string closest_description(std::string_view snippet_html) {
  return closest_description(parse_html(snippet_html));
}

}  // namespace htmlu
