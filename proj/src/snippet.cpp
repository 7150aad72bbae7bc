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

#include "htmlu/snippet.hpp"

#include <algorithm>
#include <cmath>

namespace htmlu {

void SnippetConfig::validate() const {
  if (max_height < 1) throw UserError("snippet max_height must be >= 1");
  if (!std::isfinite(max_new_descendants_pct) || max_new_descendants_pct < 0) {
    throw UserError("snippet max_new_descendants_pct must be finite and >= 0");
  }
}

namespace {

struct Climb {
  NodeId root;
  int hops = 0;
  double pct = 0.0;
};

double new_descendants_pct(std::size_t candidate, std::size_t base) {
  return 100.0 * static_cast<double>(candidate - base) /
         static_cast<double>(std::max<std::size_t>(base, 1));
}

Climb climb(const HtmlDocument& doc, NodeId salient,
            const SnippetConfig& config) {
  config.validate();
  const HtmlNode& s = doc.node(salient);
  if (!s.is_element()) throw NotAnElement("salient node is not an element");

  const std::size_t base = element_subtree_size(doc, salient);
  Climb best{salient, 0, 0.0};
  NodeId cur = salient;
  int hops = 0;
  while (true) {
    std::optional<NodeId> parent = doc.node(cur).parent;
    if (!parent || !doc.node(*parent).is_element()) break;
    ++hops;
    if (hops > config.max_height) break;
    double pct = new_descendants_pct(element_subtree_size(doc, *parent), base);
    if (pct > config.max_new_descendants_pct) break;
    best = Climb{*parent, hops, pct};
    cur = *parent;
  }
  return best;
}

}  // namespace

NodeId snippet_root(const HtmlDocument& doc, NodeId salient,
                    const SnippetConfig& config) {
  return climb(doc, salient, config).root;
}

Snippet extract_snippet(const HtmlDocument& doc, NodeId salient,
                        const SnippetConfig& config) {
  Climb c = climb(doc, salient, config);
  SubtreeCopy copy = copy_subtree(doc, c.root);
  NodeId mapped = *copy.mapping[salient.value];
  return Snippet{mark_target(std::move(copy.doc), mapped), mapped, config};
}

SnippetStats snippet_stats(const HtmlDocument& doc, NodeId salient,
                           const SnippetConfig& config) {
  Climb c = climb(doc, salient, config);
  return SnippetStats{c.hops, c.pct, element_subtree_size(doc, c.root)};
}

}  // namespace htmlu
