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

#include "htmlu/distill.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include "htmlu/text_util.hpp"

namespace htmlu {

void DistillConfig::validate() const {
  if (max_per_description < 1) {
    throw UserError("max_per_description must be >= 1");
  }
  if (label_tag_pool.empty()) throw UserError("label tag pool is empty");
}

LabelPairScan extract_label_pairs(const HtmlDocument& doc) {
  LabelPairScan scan;
  for (NodeId id : doc.elements()) {
    const HtmlNode& n = doc.node(id);
    if (n.tag != "label") continue;
    auto target_id = n.attribute("for");
    if (!target_id) continue;
    std::vector<NodeId> matches = find_by_attr(doc, "id", *target_id);
    if (matches.empty()) {
      ++scan.unmatched_labels;
      continue;
    }
    if (matches.size() > 1) ++scan.duplicate_id_warnings;
    scan.pairs.push_back(LabelPair{id, matches.front(), inner_text(doc, id)});
  }
  return scan;
}

namespace {

bool is_disallowed_code_point(char32_t cp) {
  if (cp < 0x20) return cp != '\t' && cp != '\n' && cp != '\r';
  if (cp >= 0x7F && cp <= 0x9F) return true;
  return cp == 0xFFFD || cp == 0xFFFE || cp == 0xFFFF;
}

bool is_alphanumeric(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
           (cp >= 'A' && cp <= 'Z');
  }
  // Non-ASCII: anything outside the punctuation, symbol, private-use and
  // emoji blocks counts as a letter or digit.
  if (cp < 0xC0 || cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;
  if (cp >= 0x2E00 && cp <= 0x2E7F) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp >= 0xE000 && cp <= 0xF8FF) return false;
  if (cp >= 0xFE00 && cp <= 0xFE6F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF0F) return false;
  if (cp >= 0xFF1A && cp <= 0xFF20) return false;
  if (cp >= 0xFF3B && cp <= 0xFF40) return false;
  if (cp >= 0xFF5B && cp <= 0xFF65) return false;
  if (cp >= 0xFFF0) return cp >= 0x10000 && !(cp >= 0x1F000 && cp <= 0x1FAFF) &&
                          !(cp >= 0xE0000);
  return true;
}

}  // namespace

std::optional<std::string> clean_filter(std::string_view description) {
  if (first_invalid_utf8(description)) return std::nullopt;
  std::string_view trimmed = trim(description);
  bool any_alnum = false;
  for (char32_t cp : decode_utf8(trimmed)) {
    if (is_disallowed_code_point(cp)) return std::nullopt;
    any_alnum = any_alnum || is_alphanumeric(cp);
  }
  if (!any_alnum) return std::nullopt;
  return std::string(trimmed);
}

HtmlDocument randomize_label_tag(HtmlDocument doc, NodeId label_node, Rng& rng,
                                 const std::vector<std::string>& pool) {
  HtmlNode& n = doc.mutable_node(label_node);
  if (!n.is_element() || n.tag != "label") {
    throw NotALabel("node is not a label element");
  }
  if (pool.empty()) throw UserError("label tag pool is empty");
  n.tag = pool[rng.uniform(pool.size())];
  n.remove_attribute("for");
  return doc;
}

std::size_t distinct_text_count(const HtmlDocument& doc) {
  std::set<std::string_view> texts;
  for (NodeId id : visible_text_nodes(doc)) {
    std::string_view t = trim(doc.node(id).text);
    if (!t.empty()) texts.insert(t);
  }
  return texts.size();
}

std::string description_key(std::string_view description) {
  return normalize_whitespace_casefold(description);
}

std::string top_level_domain(std::string_view url) {
  std::size_t scheme = url.find("://");
  std::string_view rest =
      scheme == std::string_view::npos ? url : url.substr(scheme + 3);
  std::string_view host = rest.substr(0, rest.find_first_of("/?#"));
  if (std::size_t at = host.rfind('@'); at != std::string_view::npos) {
    host.remove_prefix(at + 1);
  }
  host = host.substr(0, host.find(':'));
  while (!host.empty() && host.back() == '.') host.remove_suffix(1);
  std::size_t dot = host.rfind('.');
  if (dot == std::string_view::npos) return "";
  std::string tld = ascii_lower(host.substr(dot + 1));
  if (std::all_of(tld.begin(), tld.end(),
                  [](char c) { return c >= '0' && c <= '9'; })) {
    return "";  // IPv4 address
  }
  return tld;
}

namespace {

struct PageResult {
  bool parse_failure = false;
  std::size_t raw_pairs = 0;
  std::size_t unmatched_labels = 0;
  std::size_t duplicate_id_warnings = 0;
  std::size_t dropped_unclean = 0;
  std::size_t filtered = 0;
  std::size_t dropped_ambiguous_id = 0;
  std::size_t dropped_single_text = 0;
  std::vector<Distiller::Candidate> candidates;
};

PageResult process_page(const HtmlPage& page, std::size_t page_index,
                        const DistillConfig& config,
                        const SnippetConfig& snippet_config) {
  PageResult r;
  HtmlDocument doc;
  try {
    doc = parse_html(page.html);
  } catch (const ParseError&) {
    r.parse_failure = true;
    return r;
  }
  doc.set_source_url(page.url);
  LabelPairScan scan = extract_label_pairs(doc);
  r.raw_pairs = scan.pairs.size();
  r.unmatched_labels = scan.unmatched_labels;
  r.duplicate_id_warnings = scan.duplicate_id_warnings;
  const std::string tld = top_level_domain(page.url);

  for (std::size_t k = 0; k < scan.pairs.size(); ++k) {
    const LabelPair& pair = scan.pairs[k];
    std::optional<std::string> description = clean_filter(pair.description);
    if (!description) {
      ++r.dropped_unclean;
      continue;
    }
    ++r.filtered;
    const std::string element_id = *doc.node(pair.target).attribute("id");
    Snippet snippet = extract_snippet(doc, pair.target, snippet_config);
    if (find_by_attr(snippet.doc, "id", element_id).size() != 1) {
      ++r.dropped_ambiguous_id;
      continue;
    }
    Rng rng(derive_seed({config.rng_seed, page_index, k}));
    for (NodeId id : snippet.doc.elements()) {
      if (snippet.doc.node(id).tag == "label") {
        snippet.doc = randomize_label_tag(std::move(snippet.doc), id, rng,
                                          config.label_tag_pool);
      }
    }
    if (config.drop_single_text && distinct_text_count(snippet.doc) < 2) {
      ++r.dropped_single_text;
      continue;
    }
    DescriptionExample ex{serialize(snippet.doc), element_id, *description,
                          page.url, tld};
    r.candidates.push_back({std::move(ex), description_key(*description)});
  }
  return r;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

Distiller::Distiller(DistillConfig config, SnippetConfig snippet_config,
                     ExampleSink sink)
    : config_(std::move(config)),
      snippet_config_(snippet_config),
      sink_(std::move(sink)) {
  config_.validate();
  snippet_config_.validate();
}

void Distiller::add_pages(const std::vector<HtmlPage>& pages) {
  std::vector<PageResult> results(pages.size());
  const std::size_t base = next_page_index_;
  unsigned jobs = config_.jobs != 0 ? config_.jobs
                                    : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, pages.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < pages.size(); i = next++) {
      results[i] = process_page(pages[i], base + i, config_, snippet_config_);
    }
  };
  if (jobs <= 1) {
    work();
  } else {
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < jobs; ++t) workers.emplace_back(work);
    for (auto& w : workers) w.join();
  }
  next_page_index_ += pages.size();

  for (PageResult& r : results) {
    ++report_.pages;
    report_.parse_failures += r.parse_failure ? 1 : 0;
    report_.raw_pairs += r.raw_pairs;
    report_.unmatched_labels += r.unmatched_labels;
    report_.duplicate_id_warnings += r.duplicate_id_warnings;
    report_.dropped_unclean += r.dropped_unclean;
    report_.filtered += r.filtered;
    report_.dropped_ambiguous_id += r.dropped_ambiguous_id;
    report_.dropped_single_text += r.dropped_single_text;
    accept(std::move(r.candidates));
  }
}

void Distiller::accept(std::vector<Candidate> candidates) {
  for (Candidate& c : candidates) {
    ++report_.before_balancing;
    std::size_t count = ++seen_[c.key];
    if (config_.random_retention) {
      retained_.push_back(std::move(c));
      continue;
    }
    if (count <= config_.max_per_description) {
      ++report_.emitted;
      if (sink_) sink_(c.example);
    } else {
      ++report_.dropped_by_cap;
    }
  }
}

void Distiller::add_warc(const std::string& path) {
  constexpr std::size_t kBatch = 256;
  WarcReader reader(path);
  std::vector<HtmlPage> batch;
  while (auto page = reader.next()) {
    batch.push_back(std::move(*page));
    if (batch.size() == kBatch) {
      add_pages(batch);
      batch.clear();
    }
  }
  if (!batch.empty()) add_pages(batch);
  const WarcStats& s = reader.stats();
  ++report_.warc_files;
  report_.warc_records += s.records;
  report_.non_html_skipped += s.skipped_non_html;
  report_.malformed_records += s.malformed;
}

DistillReport Distiller::finish() {
  if (finished_) return report_;
  finished_ = true;

  if (config_.random_retention) {
    // Per description, keep a seeded uniform subset of size <= cap, then
    // emit survivors in their original order.
    std::map<std::string, std::vector<std::size_t>> by_key;
    for (std::size_t i = 0; i < retained_.size(); ++i) {
      by_key[retained_[i].key].push_back(i);
    }
    std::vector<bool> keep(retained_.size(), false);
    for (auto& [key, indices] : by_key) {
      Rng rng(derive_seed({config_.rng_seed, fnv1a(key)}));
      std::size_t take = std::min(indices.size(), config_.max_per_description);
      for (std::size_t i = 0; i < take; ++i) {
        std::size_t j = i + rng.uniform(indices.size() - i);
        std::swap(indices[i], indices[j]);
        keep[indices[i]] = true;
      }
    }
    for (std::size_t i = 0; i < retained_.size(); ++i) {
      if (keep[i]) {
        ++report_.emitted;
        if (sink_) sink_(retained_[i].example);
      } else {
        ++report_.dropped_by_cap;
      }
    }
    retained_.clear();
  }

  report_.unique_descriptions = seen_.size();
  std::vector<std::pair<std::string, std::size_t>> counts(seen_.begin(),
                                                          seen_.end());
  std::stable_sort(counts.begin(), counts.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (counts.size() > 20) counts.resize(20);
  std::size_t covered = 0;
  for (const auto& [key, n] : counts) covered += n;
  report_.top_descriptions = std::move(counts);
  report_.top20_share =
      report_.before_balancing == 0
          ? 0.0
          : static_cast<double>(covered) /
                static_cast<double>(report_.before_balancing);
  return report_;
}

DistillReport distill(const std::vector<std::string>& warc_paths,
                      const DistillConfig& config,
                      const SnippetConfig& snippet_config,
                      const ExampleSink& sink) {
  Distiller d(config, snippet_config, sink);
  for (const auto& path : warc_paths) d.add_warc(path);
  return d.finish();
}

DistillReport distill_pages(const std::vector<HtmlPage>& pages,
                            const DistillConfig& config,
                            const SnippetConfig& snippet_config,
                            const ExampleSink& sink) {
  Distiller d(config, snippet_config, sink);
  d.add_pages(pages);
  return d.finish();
}

void to_json(nlohmann::json& j, const DescriptionExample& e) {
  j = nlohmann::json{{"snippet_html", e.snippet_html},
                     {"element_id", e.element_id},
                     {"description", e.description},
                     {"source_url", e.source_url},
                     {"tld", e.tld}};
}

void from_json(const nlohmann::json& j, DescriptionExample& e) {
  e.snippet_html = j.at("snippet_html").get<std::string>();
  e.element_id = j.at("element_id").get<std::string>();
  e.description = j.at("description").get<std::string>();
  e.source_url = j.value("source_url", "");
  e.tld = j.value("tld", "");
}

void to_json(nlohmann::json& j, const DistillReport& r) {
  nlohmann::json top = nlohmann::json::array();
  for (const auto& [d, n] : r.top_descriptions) {
    top.push_back({{"description", d}, {"count", n}});
  }
  j = nlohmann::json{{"warc_files", r.warc_files},
                     {"warc_records", r.warc_records},
                     {"non_html_skipped", r.non_html_skipped},
                     {"malformed_records", r.malformed_records},
                     {"pages", r.pages},
                     {"parse_failures", r.parse_failures},
                     {"raw_pairs", r.raw_pairs},
                     {"unmatched_labels", r.unmatched_labels},
                     {"duplicate_id_warnings", r.duplicate_id_warnings},
                     {"dropped_unclean", r.dropped_unclean},
                     {"filtered", r.filtered},
                     {"dropped_ambiguous_id", r.dropped_ambiguous_id},
                     {"dropped_single_text", r.dropped_single_text},
                     {"before_balancing", r.before_balancing},
                     {"dropped_by_cap", r.dropped_by_cap},
                     {"emitted", r.emitted},
                     {"unique_descriptions", r.unique_descriptions},
                     {"top20_share", r.top20_share},
                     {"top_descriptions", top}};
}

}  // namespace htmlu
