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

// Text-in/text-out model boundary. Everything that queries a model goes
// through Model::generate, so pipelines run unchanged against mocks or a
// remote inference server.

#ifndef HTMLU_MODEL_CLIENT_HPP_
#define HTMLU_MODEL_CLIENT_HPP_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <string_view>

#include "htmlu/errors.hpp"
#include "htmlu/rng.hpp"

namespace htmlu {

struct ModelRequest {
  std::string input;
  int max_output_tokens = 64;
  double temperature = 0.0;  // 0 = greedy
  // Leading bytes of `input` that truncation must keep (history and
  // instruction in a navigation input).
  std::size_t protected_prefix = 0;
};

struct Generation {
  std::string text;
  bool truncated = false;
};

class Model {
 public:
  virtual ~Model() = default;
  virtual Generation generate(const ModelRequest& request) = 0;
};

// Transport-level failures. Not user errors: the CLI reports them as
// internal failures unless an evaluator aggregates them.
class TransportError : public Error {
 public:
  using Error::Error;
};

class Timeout : public TransportError {
 public:
  using TransportError::TransportError;
};

class RemoteError : public TransportError {
 public:
  RemoteError(int status, std::string body)
      : TransportError("remote returned HTTP " + std::to_string(status)),
        status_(status),
        body_(std::move(body)) {}
  int status() const { return status_; }
  const std::string& body() const { return body_; }

 private:
  int status_;
  std::string body_;
};

struct ModelEndpoint {
  std::string base_url;  // http://host:port/path
  std::chrono::milliseconds timeout{30000};
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{200};
  std::size_t max_input_chars = 8000;
  std::size_t max_in_flight = 4;
  std::string api_key;  // sent as a Bearer token when non-empty
};

// Cuts `input` to `budget` bytes from the tail, never below
// `protected_prefix`, and never inside a UTF-8 sequence.
std::string truncate_input(std::string_view input, std::size_t budget,
                           std::size_t protected_prefix, bool* truncated);

// POSTs {"input", "max_output_tokens", "temperature"} and reads
// {"output"}. Failures are retried with exponential backoff.
class RemoteModel : public Model {
 public:
  explicit RemoteModel(ModelEndpoint endpoint);
  Generation generate(const ModelRequest& request) override;

 private:
  std::string attempt(const std::string& body);

  ModelEndpoint endpoint_;
  std::string host_;  // scheme://host:port
  std::string path_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::size_t in_flight_ = 0;
};

// Returns the gold answer registered for an input. Inputs that are not
// registered fall back to the text between <gold> and </gold>, if any.
class EchoGoldModel : public Model {
 public:
  EchoGoldModel() = default;
  explicit EchoGoldModel(std::map<std::string, std::string> golds)
      : golds_(std::move(golds)) {}
  void add(std::string input, std::string gold) {
    golds_.emplace(std::move(input), std::move(gold));
  }
  Generation generate(const ModelRequest& request) override;

 private:
  std::map<std::string, std::string> golds_;
};

class ConstantModel : public Model {
 public:
  explicit ConstantModel(std::string output) : output_(std::move(output)) {}
  Generation generate(const ModelRequest&) override { return {output_, false}; }

 private:
  std::string output_;
};

class FunctionModel : public Model {
 public:
  using Fn = std::function<std::string(std::string_view)>;
  explicit FunctionModel(Fn fn) : fn_(std::move(fn)) {}
  Generation generate(const ModelRequest& request) override {
    return {fn_(request.input), false};
  }

 private:
  Fn fn_;
};

// Uniform-random actions for navigation inputs: a ref drawn from the
// page's element count, click or type (with a random word) by coin flip.
class RandomActionModel : public Model {
 public:
  explicit RandomActionModel(std::uint64_t seed) : rng_(seed) {}
  Generation generate(const ModelRequest& request) override;

 private:
  Rng rng_;
};

// Closest Description baseline as a predictor over snippet inputs.
class ClosestDescriptionModel : public Model {
 public:
  Generation generate(const ModelRequest& request) override;
};

}  // namespace htmlu

#endif  // HTMLU_MODEL_CLIENT_HPP_
