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

#include "oracles.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "htmlu/rng.hpp"

namespace htmlu::oracle {

namespace {

std::string slurp(const std::string& path) {
  gzFile f = gzopen(path.c_str(), "rb");  // reads plain files as-is
  if (f == nullptr) throw std::runtime_error("cannot open " + path);
  std::string out;
  char buf[1 << 14];
  int n;
  while ((n = gzread(f, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(n));
  gzclose(f);
  return out;
}

std::string lower(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

std::string strip(const std::string& s) {
  const char* ws = " \t\n\r\f\v";
  std::size_t b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::string field(const std::string& head, const std::string& name) {
  std::string lhead = lower(head);
  std::size_t at = lhead.find("\n" + lower(name) + ":");
  if (at == std::string::npos) return "";
  std::size_t start = at + name.size() + 2;
  return strip(head.substr(start, head.find('\n', start) - start));
}

struct Page {
  std::string url;
  std::string html;
};

// Whole-file WARC split on Content-Length.
std::vector<Page> read_pages(const std::string& path,
                             std::map<std::string, std::size_t>& counts) {
  std::string data = slurp(path);
  std::vector<Page> pages;
  std::size_t pos = data.find("WARC/");
  while (pos != std::string::npos && pos < data.size()) {
    std::size_t head_end = data.find("\r\n\r\n", pos);
    if (head_end == std::string::npos) break;
    std::string head = "\n" + data.substr(pos, head_end - pos);
    std::size_t length = std::stoul(field(head, "Content-Length"));
    std::string block = data.substr(head_end + 4, length);
    pos = data.find("WARC/", head_end + 4 + length);
    ++counts["warc_records"];
    std::size_t http_end = block.find("\r\n\r\n");
    std::string http_head = "\n" + block.substr(0, http_end);
    if (field(head, "WARC-Type") != "response" ||
        lower(field(http_head, "Content-Type")).find("text/html") == std::string::npos) {
      ++counts["non_html_skipped"];
      continue;
    }
    std::string url = field(head, "WARC-Target-URI");
    if (url.size() > 1 && url.front() == '<') url = url.substr(1, url.size() - 2);
    pages.push_back({url, block.substr(http_end + 4)});
  }
  return pages;
}

std::size_t subtree_elements(const HtmlDocument& doc, NodeId id) {
  std::size_t n = doc.node(id).is_element() ? 1 : 0;
  for (NodeId c : doc.node(id).children) n += subtree_elements(doc, c);
  return n;
}

std::string text_under(const HtmlDocument& doc, NodeId id) {
  const HtmlNode& n = doc.node(id);
  if (n.is_text()) return n.text;
  std::string out;
  for (NodeId c : n.children) out += text_under(doc, c);
  return out;
}

void collect_ids(const HtmlDocument& doc, NodeId id, const std::string& want,
                 std::vector<NodeId>& out) {
  const HtmlNode& n = doc.node(id);
  if (n.is_element()) {
    for (const auto& a : n.attributes) {
      if (a.name == "id" && a.value && *a.value == want) out.push_back(id);
    }
  }
  for (NodeId c : n.children) collect_ids(doc, c, want, out);
}

void collect_texts(const HtmlDocument& doc, NodeId id, std::set<std::string>& out) {
  const HtmlNode& n = doc.node(id);
  if (n.is_element() && (n.tag == "script" || n.tag == "style")) return;
  if (n.is_text()) {
    std::string t = strip(n.text);
    if (!t.empty()) out.insert(t);
  }
  for (NodeId c : n.children) collect_texts(doc, c, out);
}

bool usable_description(const std::string& s) {
  for (unsigned char c : s) {
    if (c < 0x20 && c != '\t' && c != '\n' && c != '\r') return false;
  }
  return std::any_of(s.begin(), s.end(), [](unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           c >= 0xC0;
  });
}

std::string top_level(const std::string& url) {
  std::size_t s = url.find("://");
  std::string host = url.substr(s == std::string::npos ? 0 : s + 3);
  host = host.substr(0, host.find_first_of("/?#:"));
  std::size_t dot = host.rfind('.');
  return dot == std::string::npos ? "" : lower(host.substr(dot + 1));
}

// Serializes the subtree at `id`, renaming labels as told and adding the
// target marker to `salient`.
void write(const HtmlDocument& doc, NodeId id, NodeId salient,
           const std::map<std::uint32_t, std::string>& renamed, std::string& out) {
  const HtmlNode& n = doc.node(id);
  if (n.is_text()) {
    out += n.text;
    return;
  }
  auto it = renamed.find(id.value);
  const std::string& tag = it == renamed.end() ? n.tag : it->second;
  out += "<" + tag;
  for (const auto& a : n.attributes) {
    if (!a.value && a.name == "target") continue;
    if (it != renamed.end() && a.name == "for") continue;
    out += " " + a.name;
    if (a.value) {
      char q = a.value->find('"') == std::string::npos ? '"' : '\'';
      out += std::string("=") + q + *a.value + q;
    }
  }
  if (id == salient) out += " target";
  out += ">";
  static const std::set<std::string> kVoid = {"area", "base", "br", "col", "embed",
                                              "hr", "img", "input", "link", "meta",
                                              "param", "source", "track", "wbr"};
  if (kVoid.count(n.tag)) return;
  for (NodeId c : n.children) write(doc, c, salient, renamed, out);
  out += "</" + tag + ">";
}

void labels_in(const HtmlDocument& doc, NodeId id, std::vector<NodeId>& out) {
  const HtmlNode& n = doc.node(id);
  if (n.is_element() && n.tag == "label") out.push_back(id);
  for (NodeId c : n.children) labels_in(doc, c, out);
}

}  // namespace

DistillRun distill(const std::vector<std::string>& warc_paths,
                   const DistillParams& params) {
  DistillRun run;
  auto& counts = run.counts;
  for (const char* k : {"warc_files", "warc_records", "non_html_skipped", "pages",
                        "raw_pairs", "unmatched_labels", "duplicate_id_warnings",
                        "dropped_unclean", "filtered", "dropped_ambiguous_id",
                        "dropped_single_text", "before_balancing", "dropped_by_cap",
                        "emitted", "unique_descriptions"}) {
    counts[k] = 0;
  }
  std::map<std::string, std::size_t> per_key;
  std::uint64_t page_index = 0;
  for (const auto& path : warc_paths) {
    ++counts["warc_files"];
    for (const Page& page : read_pages(path, counts)) {
      ++counts["pages"];
      HtmlDocument doc = parse_html(page.html);
      std::uint64_t k = 0;
      for (NodeId label : doc.elements()) {
        const HtmlNode& ln = doc.node(label);
        auto target_id = ln.attribute("for");
        if (ln.tag != "label" || !target_id) continue;
        std::vector<NodeId> hits;
        collect_ids(doc, doc.root(), *target_id, hits);
        if (hits.empty()) {
          ++counts["unmatched_labels"];
          continue;
        }
        if (hits.size() > 1) ++counts["duplicate_id_warnings"];
        ++counts["raw_pairs"];
        const std::uint64_t pair_index = k++;
        std::string description = strip(text_under(doc, label));
        if (!usable_description(description)) {
          ++counts["dropped_unclean"];
          continue;
        }
        ++counts["filtered"];
        const NodeId salient = hits.front();
        NodeId root = snippet_root(doc, salient, params.max_new_descendants_pct,
                                   params.max_height);
        std::vector<NodeId> in_snippet;
        collect_ids(doc, root, *target_id, in_snippet);
        if (in_snippet.size() != 1) {
          ++counts["dropped_ambiguous_id"];
          continue;
        }
        Rng rng(derive_seed({params.seed, page_index, pair_index}));
        std::vector<NodeId> labels;
        labels_in(doc, root, labels);
        std::map<std::uint32_t, std::string> renamed;
        for (NodeId l : labels) {
          renamed[l.value] = params.label_tag_pool[rng.uniform(params.label_tag_pool.size())];
        }
        std::set<std::string> texts;
        collect_texts(doc, root, texts);
        if (texts.size() < 2) {
          ++counts["dropped_single_text"];
          continue;
        }
        ++counts["before_balancing"];
        std::string key;
        bool space = false;
        for (char c : lower(description)) {
          bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
          if (ws) {
            space = !key.empty();
            continue;
          }
          if (space) key += ' ';
          space = false;
          key += c;
        }
        if (++per_key[key] > params.max_per_description) {
          ++counts["dropped_by_cap"];
          continue;
        }
        ++counts["emitted"];
        std::string html;
        write(doc, root, salient, renamed, html);
        nlohmann::json j = {{"snippet_html", html},
                            {"element_id", *target_id},
                            {"description", description},
                            {"source_url", page.url},
                            {"tld", top_level(page.url)}};
        run.jsonl += j.dump() + "\n";
      }
      ++page_index;
    }
  }
  counts["unique_descriptions"] = per_key.size();
  return run;
}

HtmlDocument random_tree(std::uint64_t seed, std::size_t n) {
  static const char* kTags[] = {"div", "span", "p", "ul", "li", "form", "label",
                                "section", "table", "td", "input", "button", "a"};
  Rng rng(seed);
  HtmlDocument doc;
  std::vector<NodeId> open = {doc.root()};
  for (std::size_t i = 0; i < n; ++i) {
    // Skew toward recent nodes so trees get deep as well as wide.
    std::size_t span = std::min<std::size_t>(open.size(), 1 + rng.uniform(6));
    NodeId parent = open[open.size() - 1 - rng.uniform(span)];
    if (i == 0) parent = doc.root();
    const char* tag = kTags[rng.uniform(std::size(kTags))];
    NodeId id = doc.append_element(parent, tag, {{"id", "n" + std::to_string(i)}});
    if (std::string_view(tag) != "input") {
      open.push_back(id);
      if (rng.uniform(3) == 0) doc.append_text(id, "t" + std::to_string(i));
    }
  }
  return doc;
}

NodeId snippet_root(const HtmlDocument& doc, NodeId salient, double pct, int height) {
  const double base = static_cast<double>(subtree_elements(doc, salient));
  NodeId accepted = salient;
  int hops = 0;
  for (auto p = doc.node(salient).parent; p; p = doc.node(*p).parent) {
    if (doc.node(*p).kind == NodeKind::Document) break;
    ++hops;
    const double grown = static_cast<double>(subtree_elements(doc, *p)) - base;
    if (hops > height || 100.0 * grown / std::max(base, 1.0) > pct) break;
    accepted = *p;
  }
  return accepted;
}

ClosestCase closest_case(std::uint64_t seed) {
  Rng rng(seed);
  ClosestCase c;
  const std::size_t items = 2 + rng.uniform(10);
  const std::size_t target_at = rng.uniform(items + 1);
  std::string body;
  bool last_bare_text = false;
  auto text = [&](std::size_t i) {
    std::string t = "txt" + std::to_string(seed) + "_" + std::to_string(i) + "z";
    if (rng.uniform(4) == 0) t = " " + t + "  ";  // surrounding blanks
    c.texts.push_back(t);
    return t;
  };
  for (std::size_t i = 0; i <= items; ++i) {
    if (i == target_at) {
      body += "<input type=\"text\" id=\"q\" target>";
      last_bare_text = false;
    }
    if (i == items) break;
    switch (rng.uniform(6)) {
      case 0:
        if (!last_bare_text) {
          body += text(i);
          last_bare_text = true;
          continue;
        }
        [[fallthrough]];
      case 1:
        body += "<span>" + text(i) + "</span>";
        break;
      case 2:
        body += "<div class=\"w\"><b>" + text(i) + "</b></div>";
        break;
      case 3:
        body += "<br>";
        break;
      case 4:
        body += "<style>.w{color:red}</style>";
        break;
      default:
        body += "<p class=\"pad" + std::string(rng.uniform(20), 'x') + "\"><i>" + text(i) +
                "</i></p>";
        break;
    }
    last_bare_text = false;
  }
  if (c.texts.empty()) {
    body += "<span>" + text(items) + "</span>";
  }
  c.html = "<div class=\"row\">" + body + "</div>";
  return c;
}

std::string closest_answer(const ClosestCase& c) {
  const std::size_t marker = c.html.find(" target>");
  const std::size_t anchor = c.html.rfind('<', marker);
  std::string best;
  std::size_t best_offset = 0;
  std::size_t best_distance = std::string::npos;
  for (const auto& t : c.texts) {
    std::size_t at = c.html.find(t);
    if (at == std::string::npos) throw std::logic_error("text not found: " + t);
    std::size_t d = at > anchor ? at - anchor : anchor - at;
    if (d < best_distance || (d == best_distance && at < best_offset)) {
      best = strip(t);
      best_offset = at;
      best_distance = d;
    }
  }
  return best;
}

}  // namespace htmlu::oracle
