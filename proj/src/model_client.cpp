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

#include "htmlu/model_client.hpp"

#include <httplib.h>

#include <array>
#include <iostream>
#include <thread>

#include <json.hpp>

#include "htmlu/codec.hpp"
#include "htmlu/html.hpp"
#include "htmlu/metrics.hpp"

namespace htmlu {

std::string truncate_input(std::string_view input, std::size_t budget,
                           std::size_t protected_prefix, bool* truncated) {
  std::size_t keep = std::max(budget, protected_prefix);
  if (input.size() <= keep) {
    if (truncated != nullptr) *truncated = false;
    return std::string(input);
  }
  // Back off continuation bytes so a multi-byte character is not split.
  while (keep > protected_prefix && keep < input.size() &&
         (static_cast<unsigned char>(input[keep]) & 0xC0) == 0x80) {
    --keep;
  }
  if (truncated != nullptr) *truncated = true;
  return std::string(input.substr(0, keep));
}

RemoteModel::RemoteModel(ModelEndpoint endpoint)
    : endpoint_(std::move(endpoint)) {
  const std::string& url = endpoint_.base_url;
  std::size_t scheme = url.find("://");
  if (scheme == std::string::npos || url.substr(0, scheme) != "http") {
    throw UserError("model endpoint must be an http:// URL: '" + url + "'");
  }
  std::size_t slash = url.find('/', scheme + 3);
  host_ = url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : url.substr(slash);
  if (endpoint_.max_in_flight == 0) endpoint_.max_in_flight = 1;
}

std::string RemoteModel::attempt(const std::string& body) {
  httplib::Client client(host_);
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(endpoint_.timeout);
  auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
      endpoint_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  httplib::Headers headers;
  if (!endpoint_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + endpoint_.api_key);
  }
  auto res = client.Post(path_, headers, body, "application/json");
  if (!res) {
    auto err = res.error();
    if (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout) {
      throw Timeout("model request timed out: " + httplib::to_string(err));
    }
    throw TransportError("model request failed: " + httplib::to_string(err));
  }
  if (res->status != 200) throw RemoteError(res->status, res->body);
  try {
    auto j = nlohmann::json::parse(res->body);
    return j.at("output").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw RemoteError(res->status, "bad response body: " + res->body);
  }
}

Generation RemoteModel::generate(const ModelRequest& request) {
  Generation out;
  std::string input = truncate_input(request.input, endpoint_.max_input_chars,
                                     request.protected_prefix, &out.truncated);
  if (out.truncated) {
    std::clog << "warning: model input truncated from " << request.input.size()
              << " to " << input.size() << " chars\n";
  }
  const std::string body = nlohmann::json{{"input", input},
                                          {"max_output_tokens",
                                           request.max_output_tokens},
                                          {"temperature", request.temperature}}
                               .dump();
  {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return in_flight_ < endpoint_.max_in_flight; });
    ++in_flight_;
  }
  struct Release {
    RemoteModel* self;
    ~Release() {
      std::lock_guard lock(self->mu_);
      --self->in_flight_;
      self->cv_.notify_one();
    }
  } release{this};

  auto backoff = endpoint_.initial_backoff;
  for (int attempt_no = 0;; ++attempt_no) {
    try {
      out.text = attempt(body);
      return out;
    } catch (const TransportError&) {
      if (attempt_no >= endpoint_.max_retries) throw;
    }
    std::this_thread::sleep_for(backoff);
    backoff *= 2;
  }
}

Generation EchoGoldModel::generate(const ModelRequest& request) {
  auto it = golds_.find(request.input);
  if (it != golds_.end()) return {it->second, false};
  std::size_t open = request.input.find("<gold>");
  if (open != std::string::npos) {
    std::size_t close = request.input.find("</gold>", open);
    return {request.input.substr(open + 6, close == std::string::npos
                                               ? std::string::npos
                                               : close - open - 6),
            false};
  }
  return {"", false};
}

Generation RandomActionModel::generate(const ModelRequest& request) {
  static constexpr std::array<std::string_view, 8> kWords = {
      "alpha", "bravo", "lyda", "N22t", "hello", "submit", "x", "test"};
  NavigationInput in = decode_navigation_input(request.input);
  std::size_t elements = 0;
  try {
    elements = parse_html(in.html).elements().size();
  } catch (const ParseError&) {
  }
  int ref = static_cast<int>(rng_.uniform(std::max<std::size_t>(elements, 1))) + 1;
  if (rng_.coin()) return {encode_action(Action::click(ref)), false};
  std::string word(kWords[rng_.uniform(kWords.size())]);
  return {encode_action(Action::type(ref, std::move(word))), false};
}

Generation ClosestDescriptionModel::generate(const ModelRequest& request) {
  try {
    return {closest_description(std::string_view(request.input)), false};
  } catch (const UserError&) {
    return {"", false};
  }
}

}  // namespace htmlu
