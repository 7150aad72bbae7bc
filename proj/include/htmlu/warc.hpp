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

#ifndef HTMLU_WARC_HPP_
#define HTMLU_WARC_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "htmlu/errors.hpp"

namespace htmlu {

// Raised when the file does not start with a WARC record header.
class MalformedWarc : public UserError {
 public:
  using UserError::UserError;
};

struct HtmlPage {
  std::string url;
  std::string html;
};

struct WarcStats {
  std::size_t records = 0;     // well-formed records seen
  std::size_t html_pages = 0;  // yielded
  std::size_t skipped_non_html = 0;
  std::size_t malformed = 0;   // skipped or truncated records
};

// Streams HTML response payloads out of a WARC 1.0 file. Plain and gzip
// (including per-record multi-member gzip) input are both accepted.
class WarcReader {
 public:
  explicit WarcReader(const std::string& path);
  ~WarcReader();
  WarcReader(const WarcReader&) = delete;
  WarcReader& operator=(const WarcReader&) = delete;

  // Next HTML page, or nullopt at end of input.
  std::optional<HtmlPage> next();
  const WarcStats& stats() const { return stats_; }

 private:
  class Source;

  bool read_record(std::vector<std::pair<std::string, std::string>>* headers,
                   std::string* block);

  std::unique_ptr<Source> source_;
  WarcStats stats_;
  bool first_record_ = true;
  bool done_ = false;
};

std::vector<HtmlPage> read_warc_html(const std::string& path,
                                     WarcStats* stats = nullptr);

// Helpers for writing fixtures and round-tripping.
std::string make_warc_response(const std::string& url, const std::string& html,
                               const std::string& content_type = "text/html");
std::string make_warc_record(const std::string& type, const std::string& url,
                             const std::string& content_type,
                             const std::string& block);

}  // namespace htmlu

#endif  // HTMLU_WARC_HPP_
