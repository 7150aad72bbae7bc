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

#include "htmlu/html.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "htmlu/text_util.hpp"

namespace htmlu {

const Attribute* HtmlNode::find_attribute(std::string_view name) const {
  for (const auto& attr : attributes) {
    if (attr.name == name) return &attr;
  }
  return nullptr;
}

std::optional<std::string> HtmlNode::attribute(std::string_view name) const {
  const Attribute* attr = find_attribute(name);
  if (attr == nullptr) return std::nullopt;
  return attr->value.value_or(std::string());
}

void HtmlNode::set_attribute(std::string_view name,
                             std::optional<std::string> value) {
  for (auto& attr : attributes) {
    if (attr.name == name) {
      attr.value = std::move(value);
      return;
    }
  }
  attributes.push_back(Attribute{std::string(name), std::move(value)});
}

bool HtmlNode::remove_attribute(std::string_view name) {
  auto it = std::find_if(attributes.begin(), attributes.end(),
                         [&](const Attribute& a) { return a.name == name; });
  if (it == attributes.end()) return false;
  attributes.erase(it);
  return true;
}

HtmlDocument::HtmlDocument() {
  HtmlNode root;
  root.kind = NodeKind::Document;
  nodes_.push_back(std::move(root));
}

const HtmlNode& HtmlDocument::node(NodeId id) const {
  if (!contains(id)) {
    throw UnknownNode("unknown node id " + std::to_string(id.value));
  }
  return nodes_[id.value];
}

HtmlNode& HtmlDocument::mutable_node(NodeId id) {
  if (!contains(id)) {
    throw UnknownNode("unknown node id " + std::to_string(id.value));
  }
  return nodes_[id.value];
}

bool HtmlDocument::contains(NodeId id) const {
  return id.value < nodes_.size() && !nodes_[id.value].detached;
}

NodeId HtmlDocument::append_element(NodeId parent, std::string tag,
                                    std::vector<Attribute> attributes) {
  const HtmlNode& p = node(parent);
  if (p.is_text()) throw NotAnElement("text nodes cannot have children");
  if (p.is_element() && is_void_element(p.tag)) {
    throw NotAnElement("void element <" + p.tag + "> cannot have children");
  }
  NodeId id{static_cast<std::uint32_t>(nodes_.size())};
  HtmlNode n;
  n.kind = NodeKind::Element;
  n.tag = std::move(tag);
  n.attributes = std::move(attributes);
  n.parent = parent;
  nodes_.push_back(std::move(n));
  nodes_[parent.value].children.push_back(id);
  return id;
}

NodeId HtmlDocument::append_text(NodeId parent, std::string text) {
  const HtmlNode& p = node(parent);
  if (p.is_text()) throw NotAnElement("text nodes cannot have children");
  if (!p.children.empty()) {
    NodeId last = p.children.back();
    if (nodes_[last.value].is_text()) {
      nodes_[last.value].text += text;
      return last;
    }
  }
  NodeId id{static_cast<std::uint32_t>(nodes_.size())};
  HtmlNode n;
  n.kind = NodeKind::Text;
  n.text = std::move(text);
  n.parent = parent;
  nodes_.push_back(std::move(n));
  nodes_[parent.value].children.push_back(id);
  return id;
}

void HtmlDocument::detach(NodeId id) {
  const HtmlNode& n = node(id);
  if (!n.parent) throw UnknownNode("cannot detach the document root");
  auto& siblings = nodes_[n.parent->value].children;
  siblings.erase(std::remove(siblings.begin(), siblings.end(), id),
                 siblings.end());
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    HtmlNode& c = nodes_[cur.value];
    c.detached = true;
    for (NodeId child : c.children) stack.push_back(child);
  }
}

std::vector<NodeId> HtmlDocument::preorder() const {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{root()};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    const auto& children = nodes_[cur.value].children;
    for (auto it = children.rbegin(); it != children.rend(); ++it) {
      stack.push_back(*it);
    }
  }
  return out;
}

std::vector<NodeId> HtmlDocument::elements() const {
  std::vector<NodeId> out;
  for (NodeId id : preorder()) {
    if (nodes_[id.value].is_element()) out.push_back(id);
  }
  return out;
}

bool is_void_element(std::string_view tag) {
  static constexpr std::array<std::string_view, 16> kVoid = {
      "area",  "base", "br",   "col",  "embed",  "hr",    "img",   "input",
      "keygen", "link", "meta", "param", "source", "track", "wbr", "command"};
  return std::find(kVoid.begin(), kVoid.end(), tag) != kVoid.end();
}

bool is_raw_text_element(std::string_view tag) {
  return tag == "script" || tag == "style" || tag == "textarea" ||
         tag == "title";
}

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char to_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = to_lower(c);
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  HtmlDocument run() {
    open_.push_back(doc_.root());
    while (pos_ < src_.size()) {
      std::size_t lt = src_.find('<', pos_);
      if (lt == std::string_view::npos) {
        emit_text(src_.substr(pos_));
        break;
      }
      if (lt > pos_) emit_text(src_.substr(pos_, lt - pos_));
      pos_ = lt;
      if (!markup()) {
        emit_text(src_.substr(pos_, 1));
        ++pos_;
      }
    }
    return std::move(doc_);
  }

 private:
  char at(std::size_t i) const { return i < src_.size() ? src_[i] : '\0'; }

  void emit_text(std::string_view text) {
    if (!text.empty()) doc_.append_text(open_.back(), std::string(text));
  }

  // Handles markup at pos_ (which points at '<'). Returns false when the
  // '<' is literal text.
  bool markup() {
    char next = at(pos_ + 1);
    if (src_.compare(pos_, 4, "<!--") == 0) {
      std::size_t end = src_.find("-->", pos_ + 4);
      pos_ = end == std::string_view::npos ? src_.size() : end + 3;
      return true;
    }
    if (next == '!' || next == '?') {
      std::size_t end = src_.find('>', pos_);
      pos_ = end == std::string_view::npos ? src_.size() : end + 1;
      return true;
    }
    if (next == '/' && is_alpha(at(pos_ + 2))) {
      end_tag();
      return true;
    }
    if (is_alpha(next)) {
      start_tag();
      return true;
    }
    return false;
  }

  std::string read_tag_name() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '/' &&
           src_[pos_] != '>') {
      ++pos_;
    }
    return lower(src_.substr(start, pos_ - start));
  }

  void end_tag() {
    pos_ += 2;
    std::string name = read_tag_name();
    std::size_t end = src_.find('>', pos_);
    pos_ = end == std::string_view::npos ? src_.size() : end + 1;
    close(name);
  }

  void close(const std::string& name) {
    for (std::size_t i = open_.size(); i-- > 1;) {
      if (doc_.node(open_[i]).tag == name) {
        open_.resize(i);
        return;
      }
    }
  }

  void start_tag() {
    std::size_t tag_start = pos_;
    ++pos_;
    std::string name = read_tag_name();
    std::vector<Attribute> attrs;
    bool self_closing = false;
    while (true) {
      while (pos_ < src_.size() && (is_space(src_[pos_]) || src_[pos_] == '/')) {
        self_closing = src_[pos_] == '/';
        ++pos_;
      }
      if (pos_ >= src_.size()) {
        // EOF inside a tag: the tag is dropped.
        (void)tag_start;
        return;
      }
      if (src_[pos_] == '>') {
        ++pos_;
        break;
      }
      self_closing = false;
      std::size_t name_start = pos_;
      ++pos_;  // first char may be '='
      while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '/' &&
             src_[pos_] != '>' && src_[pos_] != '=') {
        ++pos_;
      }
      Attribute attr{lower(src_.substr(name_start, pos_ - name_start)),
                     std::nullopt};
      std::size_t after_name = pos_;
      while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
      if (at(pos_) == '=') {
        ++pos_;
        while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
        char q = at(pos_);
        if (q == '"' || q == '\'') {
          std::size_t close_q = src_.find(q, pos_ + 1);
          if (close_q == std::string_view::npos) {
            pos_ = src_.size();
            return;
          }
          attr.value = std::string(src_.substr(pos_ + 1, close_q - pos_ - 1));
          pos_ = close_q + 1;
        } else {
          std::size_t start = pos_;
          while (pos_ < src_.size() && !is_space(src_[pos_]) &&
                 src_[pos_] != '>') {
            ++pos_;
          }
          attr.value = std::string(src_.substr(start, pos_ - start));
        }
      } else {
        pos_ = after_name;
      }
      bool duplicate = std::any_of(
          attrs.begin(), attrs.end(),
          [&](const Attribute& a) { return a.name == attr.name; });
      if (!duplicate) attrs.push_back(std::move(attr));
    }

    NodeId id = doc_.append_element(open_.back(), name, std::move(attrs));
    if (is_void_element(name) || self_closing) return;
    if (is_raw_text_element(name)) {
      raw_text(id, name);
      return;
    }
    open_.push_back(id);
  }

  void raw_text(NodeId element, const std::string& name) {
    std::size_t search = pos_;
    while (true) {
      std::size_t cand = src_.find("</", search);
      if (cand == std::string_view::npos) {
        emit_raw(element, src_.substr(pos_));
        pos_ = src_.size();
        return;
      }
      bool match = cand + 2 + name.size() <= src_.size();
      for (std::size_t i = 0; match && i < name.size(); ++i) {
        match = to_lower(src_[cand + 2 + i]) == name[i];
      }
      char after = at(cand + 2 + name.size());
      if (match && (after == '>' || after == '/' || is_space(after) ||
                    after == '\0')) {
        emit_raw(element, src_.substr(pos_, cand - pos_));
        std::size_t end = src_.find('>', cand);
        pos_ = end == std::string_view::npos ? src_.size() : end + 1;
        return;
      }
      search = cand + 2;
    }
  }

  void emit_raw(NodeId element, std::string_view text) {
    if (!text.empty()) doc_.append_text(element, std::string(text));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  HtmlDocument doc_;
  std::vector<NodeId> open_;
};

void write_attribute(std::string& out, const Attribute& attr) {
  out += ' ';
  out += attr.name;
  if (!attr.value) return;
  const std::string& v = *attr.value;
  if (v.find('"') == std::string::npos) {
    out += "=\"";
    out += v;
    out += '"';
  } else if (v.find('\'') == std::string::npos) {
    out += "='";
    out += v;
    out += '\'';
  } else if (std::none_of(v.begin(), v.end(),
                          [](char c) { return is_space(c) || c == '>'; })) {
    // Only unquoted source values can hold both quote kinds.
    out += '=';
    out += v;
  } else {
    out += "=\"";
    for (char c : v) {
      if (c == '"') {
        out += "&quot;";
      } else {
        out += c;
      }
    }
    out += '"';
  }
}

void write_open_tag(std::string& out, const HtmlNode& n, bool emit_refs) {
  out += '<';
  out += n.tag;
  for (const auto& attr : n.attributes) {
    if (emit_refs && n.ref && attr.name == "ref") continue;
    write_attribute(out, attr);
  }
  if (emit_refs && n.ref) {
    out += " ref=\"";
    out += std::to_string(*n.ref);
    out += '"';
  }
  out += '>';
}

}  // namespace

HtmlDocument parse_html(std::string_view source) {
  if (auto bad = first_invalid_utf8(source)) {
    throw ParseError("input is not valid UTF-8 at byte " +
                     std::to_string(*bad));
  }
  if (source.substr(0, 3) == "\xEF\xBB\xBF") source.remove_prefix(3);
  return Parser(source).run();
}

SerializedHtml serialize_with_offsets(const HtmlDocument& doc,
                                      SerializeOptions options) {
  SerializedHtml out;
  out.offsets.assign(doc.arena_size(), std::string::npos);
  std::function<void(NodeId)> visit = [&](NodeId id) {
    const HtmlNode& n = doc.node(id);
    out.offsets[id.value] = out.text.size();
    switch (n.kind) {
      case NodeKind::Document:
        out.offsets[id.value] = std::string::npos;
        for (NodeId c : n.children) visit(c);
        break;
      case NodeKind::Text:
        out.text += n.text;
        break;
      case NodeKind::Element:
        write_open_tag(out.text, n, options.emit_refs);
        for (NodeId c : n.children) visit(c);
        if (!is_void_element(n.tag)) {
          out.text += "</";
          out.text += n.tag;
          out.text += '>';
        }
        break;
    }
  };
  visit(doc.root());
  return out;
}

std::string serialize(const HtmlDocument& doc, SerializeOptions options) {
  return serialize_with_offsets(doc, options).text;
}

HtmlDocument assign_refs(HtmlDocument doc) {
  int next = 1;
  for (NodeId id : doc.elements()) doc.mutable_node(id).ref = next++;
  return doc;
}

std::optional<NodeId> find_by_ref(const HtmlDocument& doc, int ref) {
  for (NodeId id : doc.elements()) {
    if (doc.node(id).ref == ref) return id;
  }
  return std::nullopt;
}

bool is_target_marker(const Attribute& attribute) {
  return attribute.name == kTargetAttribute && !attribute.value.has_value();
}

HtmlDocument mark_target(HtmlDocument doc, NodeId salient) {
  if (!doc.node(salient).is_element()) {
    throw NotAnElement("target must be an element node");
  }
  for (NodeId id : doc.elements()) {
    auto& attrs = doc.mutable_node(id).attributes;
    attrs.erase(std::remove_if(attrs.begin(), attrs.end(), is_target_marker),
                attrs.end());
  }
  doc.mutable_node(salient).set_attribute(kTargetAttribute, std::nullopt);
  return doc;
}

std::vector<NodeId> find_targets(const HtmlDocument& doc) {
  std::vector<NodeId> out;
  for (NodeId id : doc.elements()) {
    const auto& attrs = doc.node(id).attributes;
    if (std::any_of(attrs.begin(), attrs.end(), is_target_marker)) {
      out.push_back(id);
    }
  }
  return out;
}

std::string strip_closing_tags(const HtmlDocument& doc) {
  std::string out;
  for (NodeId id : doc.preorder()) {
    const HtmlNode& n = doc.node(id);
    if (n.is_element()) {
      write_open_tag(out, n, false);
    } else if (n.is_text()) {
      out += n.text;
    }
  }
  return out;
}

std::vector<NodeId> find_by_attr(const HtmlDocument& doc, std::string_view key,
                                 std::string_view value) {
  std::vector<NodeId> out;
  for (NodeId id : doc.elements()) {
    const Attribute* attr = doc.node(id).find_attribute(key);
    if (attr != nullptr && attr->value && *attr->value == value) {
      out.push_back(id);
    }
  }
  return out;
}

std::size_t element_subtree_size(const HtmlDocument& doc, NodeId id) {
  std::size_t count = 0;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    const HtmlNode& n = doc.node(cur);
    if (n.is_element()) ++count;
    for (NodeId c : n.children) stack.push_back(c);
  }
  return count;
}

std::string inner_text(const HtmlDocument& doc, NodeId id) {
  std::string out;
  std::function<void(NodeId)> visit = [&](NodeId cur) {
    const HtmlNode& n = doc.node(cur);
    if (n.is_text()) out += n.text;
    for (NodeId c : n.children) visit(c);
  };
  visit(id);
  return out;
}

std::vector<NodeId> visible_text_nodes(const HtmlDocument& doc) {
  std::vector<NodeId> out;
  for (NodeId id : doc.preorder()) {
    const HtmlNode& n = doc.node(id);
    if (!n.is_text()) continue;
    const HtmlNode& parent = doc.node(*n.parent);
    if (parent.is_element() &&
        (parent.tag == "script" || parent.tag == "style")) {
      continue;
    }
    out.push_back(id);
  }
  return out;
}

SubtreeCopy copy_subtree(const HtmlDocument& doc, NodeId id) {
  SubtreeCopy out;
  out.mapping.assign(doc.arena_size(), std::nullopt);
  out.doc.set_source_url(doc.source_url());
  std::function<void(NodeId, NodeId)> visit = [&](NodeId src, NodeId parent) {
    const HtmlNode& n = doc.node(src);
    NodeId copy;
    if (n.is_text()) {
      copy = out.doc.append_text(parent, n.text);
    } else if (n.is_element()) {
      copy = out.doc.append_element(parent, n.tag, n.attributes);
      out.doc.mutable_node(copy).ref = n.ref;
    } else {
      copy = out.doc.root();
    }
    out.mapping[src.value] = copy;
    for (NodeId c : n.children) visit(c, copy);
  };
  visit(id, out.doc.root());
  return out;
}

bool structurally_equal(const HtmlDocument& a, const HtmlDocument& b,
                        CompareOptions options) {
  std::function<bool(NodeId, NodeId)> eq = [&](NodeId x, NodeId y) {
    const HtmlNode& nx = a.node(x);
    const HtmlNode& ny = b.node(y);
    if (nx.kind != ny.kind || nx.tag != ny.tag || nx.text != ny.text ||
        nx.attributes != ny.attributes ||
        nx.children.size() != ny.children.size()) {
      return false;
    }
    if (options.compare_refs && nx.ref != ny.ref) return false;
    for (std::size_t i = 0; i < nx.children.size(); ++i) {
      if (!eq(nx.children[i], ny.children[i])) return false;
    }
    return true;
  };
  return eq(a.root(), b.root());
}

}  // namespace htmlu
