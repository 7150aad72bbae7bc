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

#ifndef HTMLU_SNIPPET_HPP_
#define HTMLU_SNIPPET_HPP_

#include <cstddef>

#include "htmlu/html.hpp"

namespace htmlu {

// Limits on how far the snippet root may climb above the salient element.
//
// A parent is accepted as the new root only while both hold:
//   hops(salient -> parent) <= max_height
//   100 * (desc(parent) - desc(salient)) / max(desc(salient), 1)
//       <= max_new_descendants_pct
// where desc(x) counts the elements in x's subtree, x included. Limits are
// inclusive and the climb stops at the first rejected parent.
struct SnippetConfig {
  double max_new_descendants_pct = 25.0;
  int max_height = 3;

  // Throws UserError unless max_height >= 1 and the percentage is finite
  // and non-negative.
  void validate() const;
};

struct Snippet {
  HtmlDocument doc;  // copy of the accepted root's subtree
  NodeId salient;    // carries the `target` marker
  SnippetConfig config_used;
};

struct SnippetStats {
  int hops = 0;
  double new_desc_pct = 0.0;
  std::size_t node_count = 0;  // elements under the accepted root
};

Snippet extract_snippet(const HtmlDocument& doc, NodeId salient,
                        const SnippetConfig& config);

SnippetStats snippet_stats(const HtmlDocument& doc, NodeId salient,
                           const SnippetConfig& config);

// The accepted root in `doc` itself.
NodeId snippet_root(const HtmlDocument& doc, NodeId salient,
                    const SnippetConfig& config);

}  // namespace htmlu

#endif  // HTMLU_SNIPPET_HPP_
