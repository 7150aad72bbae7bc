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

#include "htmlu/warc.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>

#include "htmlu/text_util.hpp"

namespace htmlu {

// Buffered byte source over gzread, which also passes plain files through.
class WarcReader::Source {
 public:
  explicit Source(const std::string& path) : file_(gzopen(path.c_str(), "rb")) {
    if (file_ == nullptr) throw IoError("cannot open WARC file " + path);
    gzbuffer(file_, 1 << 17);
  }
  ~Source() { gzclose(file_); }
  Source(const Source&) = delete;
  Source& operator=(const Source&) = delete;

  // Reads through the next '\n'; strips "\r\n". False at EOF with no data.
  bool read_line(std::string* line) {
    line->clear();
    bool any = false;
    while (true) {
      if (pos_ == buf_.size() && !fill()) break;
      any = true;
      auto begin = buf_.begin() + static_cast<std::ptrdiff_t>(pos_);
      auto nl = std::find(begin, buf_.end(), '\n');
      line->append(begin, nl);
      pos_ = static_cast<std::size_t>(nl - buf_.begin());
      if (nl != buf_.end()) {
        ++pos_;
        if (!line->empty() && line->back() == '\r') line->pop_back();
        return true;
      }
    }
    if (!line->empty() && line->back() == '\r') line->pop_back();
    return any;
  }

  // Appends up to n bytes; returns how many were read.
  std::size_t read(std::size_t n, std::string* out) {
    std::size_t got = 0;
    while (got < n) {
      if (pos_ == buf_.size() && !fill()) break;
      std::size_t take = std::min(n - got, buf_.size() - pos_);
      out->append(buf_, pos_, take);
      pos_ += take;
      got += take;
    }
    return got;
  }

 private:
  bool fill() {
    buf_.resize(1 << 16);
    int n = gzread(file_, buf_.data(), static_cast<unsigned>(buf_.size()));
    if (n < 0) {
      int err = 0;
      std::string msg = gzerror(file_, &err);
      throw IoError("WARC read error: " + msg);
    }
    buf_.resize(static_cast<std::size_t>(n));
    pos_ = 0;
    return n > 0;
  }

  gzFile file_;
  std::string buf_;
  std::size_t pos_ = 0;
};

WarcReader::WarcReader(const std::string& path)
    : source_(std::make_unique<Source>(path)) {}

WarcReader::~WarcReader() = default;

namespace {

std::optional<std::string> header(
    const std::vector<std::pair<std::string, std::string>>& headers,
    std::string_view name) {
  for (const auto& [k, v] : headers) {
    if (ascii_lower(k) == ascii_lower(name)) return v;
  }
  return std::nullopt;
}

bool is_version_line(const std::string& line) {
  return line.rfind("WARC/", 0) == 0;
}

// Splits an HTTP response into its Content-Type and body. Returns false if
// the block is not an HTTP response.
bool split_http(const std::string& block, std::string* content_type,
                std::string* body) {
  if (block.rfind("HTTP/", 0) != 0) return false;
  std::size_t end = block.find("\r\n\r\n");
  std::size_t skip = 4;
  if (end == std::string::npos) {
    end = block.find("\n\n");
    skip = 2;
  }
  std::string_view head(block.data(), end == std::string::npos ? block.size() : end);
  content_type->clear();
  std::size_t line_start = 0;
  while (line_start < head.size()) {
    std::size_t nl = head.find('\n', line_start);
    std::string_view line = head.substr(line_start, nl - line_start);
    std::size_t colon = line.find(':');
    if (colon != std::string_view::npos &&
        ascii_lower(trim(line.substr(0, colon))) == "content-type") {
      *content_type = ascii_lower(trim(line.substr(colon + 1)));
    }
    if (nl == std::string_view::npos) break;
    line_start = nl + 1;
  }
  *body = end == std::string::npos ? std::string() : block.substr(end + skip);
  return true;
}

bool looks_like_html(const std::string& content_type, const std::string& body) {
  if (!content_type.empty()) {
    return content_type.find("text/html") != std::string::npos ||
           content_type.find("application/xhtml") != std::string::npos;
  }
  std::string head = ascii_lower(body.substr(0, 1024));
  return head.find("<html") != std::string::npos ||
         head.find("<!doctype html") != std::string::npos;
}

}  // namespace

bool WarcReader::read_record(
    std::vector<std::pair<std::string, std::string>>* headers,
    std::string* block) {
  std::string line;
  while (true) {
    // Skip blank separator lines.
    do {
      if (!source_->read_line(&line)) return false;
    } while (line.empty());

    if (!is_version_line(line)) {
      if (first_record_) {
        throw MalformedWarc("input does not start with a WARC header");
      }
      ++stats_.malformed;
      while (source_->read_line(&line)) {
        if (is_version_line(line)) break;
      }
      if (!is_version_line(line)) return false;
    }
    first_record_ = false;

    headers->clear();
    bool terminated = false;
    while (source_->read_line(&line)) {
      if (line.empty()) {
        terminated = true;
        break;
      }
      std::size_t colon = line.find(':');
      if (colon == std::string::npos) continue;
      headers->emplace_back(std::string(trim(line.substr(0, colon))),
                            std::string(trim(line.substr(colon + 1))));
    }
    if (!terminated) {
      ++stats_.malformed;
      return false;
    }

    auto length_text = header(*headers, "Content-Length");
    std::size_t length = 0;
    bool ok = length_text.has_value();
    if (ok) {
      auto [ptr, ec] = std::from_chars(
          length_text->data(), length_text->data() + length_text->size(),
          length);
      ok = ec == std::errc() && ptr == length_text->data() + length_text->size();
    }
    if (!ok) {
      ++stats_.malformed;
      continue;
    }
    block->clear();
    if (source_->read(length, block) < length) {
      ++stats_.malformed;
      return false;
    }
    ++stats_.records;
    return true;
  }
}

std::optional<HtmlPage> WarcReader::next() {
  std::vector<std::pair<std::string, std::string>> headers;
  std::string block;
  while (!done_) {
    if (!read_record(&headers, &block)) {
      done_ = true;
      break;
    }
    auto type = header(headers, "WARC-Type");
    std::string content_type;
    std::string body;
    if (!type || *type != "response" || !split_http(block, &content_type, &body) ||
        !looks_like_html(content_type, body)) {
      ++stats_.skipped_non_html;
      continue;
    }
    std::string url = header(headers, "WARC-Target-URI").value_or("");
    if (url.size() >= 2 && url.front() == '<' && url.back() == '>') {
      url = url.substr(1, url.size() - 2);
    }
    ++stats_.html_pages;
    return HtmlPage{std::move(url), std::move(body)};
  }
  return std::nullopt;
}

std::vector<HtmlPage> read_warc_html(const std::string& path, WarcStats* stats) {
  WarcReader reader(path);
  std::vector<HtmlPage> out;
  while (auto page = reader.next()) out.push_back(std::move(*page));
  if (stats != nullptr) *stats = reader.stats();
  return out;
}

std::string make_warc_record(const std::string& type, const std::string& url,
                             const std::string& content_type,
                             const std::string& block) {
  std::string out = "WARC/1.0\r\n";
  out += "WARC-Type: " + type + "\r\n";
  if (!url.empty()) out += "WARC-Target-URI: " + url + "\r\n";
  out += "Content-Type: " + content_type + "\r\n";
  out += "Content-Length: " + std::to_string(block.size()) + "\r\n\r\n";
  out += block;
  out += "\r\n\r\n";
  return out;
}

std::string make_warc_response(const std::string& url, const std::string& html,
                               const std::string& content_type) {
  std::string http = "HTTP/1.1 200 OK\r\nContent-Type: " + content_type +
                     "\r\nContent-Length: " + std::to_string(html.size()) +
                     "\r\n\r\n" + html;
  return make_warc_record("response", url, "application/http; msgtype=response",
                          http);
}

}  // namespace htmlu
