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

#ifndef HTMLU_HTML_HPP_
#define HTMLU_HTML_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "htmlu/errors.hpp"

namespace htmlu {

// Opaque handle into one HtmlDocument's node arena. Ids are never reused:
// removing a subtree detaches it but keeps its slots.
struct NodeId {
  std::uint32_t value = 0;
  auto operator<=>(const NodeId&) const = default;
};

enum class NodeKind { Document, Element, Text };

struct Attribute {
  std::string name;
  // nullopt for a bare attribute such as `checked` or the `target` marker.
  std::optional<std::string> value;

  bool operator==(const Attribute&) const = default;
};

struct HtmlNode {
  NodeKind kind = NodeKind::Element;
  std::string tag;                     // Element only, lower-case.
  std::vector<Attribute> attributes;   // Element only, source order.
  std::string text;                    // Text only, raw (no entity decoding).
  std::vector<NodeId> children;
  std::optional<NodeId> parent;
  std::optional<int> ref;              // Element only, set by assign_refs.
  bool detached = false;

  bool is_element() const { return kind == NodeKind::Element; }
  bool is_text() const { return kind == NodeKind::Text; }

  const Attribute* find_attribute(std::string_view name) const;
  // Value of `name`, or nullopt when absent. A bare attribute yields "".
  std::optional<std::string> attribute(std::string_view name) const;
  bool has_attribute(std::string_view name) const {
    return find_attribute(name) != nullptr;
  }
  // Replaces the value in place when present, appends otherwise.
  void set_attribute(std::string_view name, std::optional<std::string> value);
  bool remove_attribute(std::string_view name);
};

// Element tree with a synthetic Document root. Pages with several top-level
// elements hang them all off the root; the root itself is never numbered or
// serialized.
class HtmlDocument {
 public:
  HtmlDocument();

  NodeId root() const { return NodeId{0}; }
  std::size_t arena_size() const { return nodes_.size(); }

  // Throws UnknownNode for out-of-range or detached ids.
  const HtmlNode& node(NodeId id) const;
  HtmlNode& mutable_node(NodeId id);
  bool contains(NodeId id) const;

  NodeId append_element(NodeId parent, std::string tag,
                        std::vector<Attribute> attributes = {});
  // Merges into the previous sibling when that is also a text node.
  NodeId append_text(NodeId parent, std::string text);
  // Unlinks the subtree rooted at `id` (not the document root).
  void detach(NodeId id);

  // Pre-order walk over attached nodes, root first.
  std::vector<NodeId> preorder() const;
  // Pre-order element nodes only.
  std::vector<NodeId> elements() const;

  const std::optional<std::string>& source_url() const { return source_url_; }
  void set_source_url(std::optional<std::string> url) {
    source_url_ = std::move(url);
  }

 private:
  std::vector<HtmlNode> nodes_;
  std::optional<std::string> source_url_;
};

bool is_void_element(std::string_view tag);
bool is_raw_text_element(std::string_view tag);

// Forgiving, order-preserving parse. Tags and attribute names are
// lower-cased; attribute values and text are kept verbatim. Unmatched end
// tags are ignored and unclosed elements close when an enclosing element
// does. Throws ParseError only when `source` is not valid UTF-8.
HtmlDocument parse_html(std::string_view source);

struct SerializeOptions {
  bool emit_refs = false;  // append ref="N" to numbered elements
};

std::string serialize(const HtmlDocument& doc, SerializeOptions options = {});

// Serialization plus the byte offset at which each node starts (indexed by
// NodeId::value; detached nodes and the root map to npos).
struct SerializedHtml {
  std::string text;
  std::vector<std::size_t> offsets;
};
SerializedHtml serialize_with_offsets(const HtmlDocument& doc,
                                      SerializeOptions options = {});

// Numbers every element 1..E in pre-order. Idempotent.
HtmlDocument assign_refs(HtmlDocument doc);
std::optional<NodeId> find_by_ref(const HtmlDocument& doc, int ref);

inline constexpr std::string_view kTargetAttribute = "target";

// Leaves exactly one element carrying the bare `target` marker.
HtmlDocument mark_target(HtmlDocument doc, NodeId salient);
bool is_target_marker(const Attribute& attribute);
std::vector<NodeId> find_targets(const HtmlDocument& doc);

// Open tags and text in document order, no closing tags.
std::string strip_closing_tags(const HtmlDocument& doc);

std::vector<NodeId> find_by_attr(const HtmlDocument& doc, std::string_view key,
                                 std::string_view value);

// Element count of the subtree rooted at `id`, including `id` itself.
std::size_t element_subtree_size(const HtmlDocument& doc, NodeId id);
// Concatenated raw text of all descendant text nodes.
std::string inner_text(const HtmlDocument& doc, NodeId id);
// Text nodes that are not inside script/style, in document order.
std::vector<NodeId> visible_text_nodes(const HtmlDocument& doc);

// Deep copy of the subtree at `id` placed under a fresh document root.
// `mapping[old.value]` gives the new id for every copied node.
struct SubtreeCopy {
  HtmlDocument doc;
  std::vector<std::optional<NodeId>> mapping;
};
SubtreeCopy copy_subtree(const HtmlDocument& doc, NodeId id);

struct CompareOptions {
  bool compare_refs = false;
};
// Same tags, attributes, text and child order from the roots down.
bool structurally_equal(const HtmlDocument& a, const HtmlDocument& b,
                        CompareOptions options = {});

}  // namespace htmlu

#endif  // HTMLU_HTML_HPP_
