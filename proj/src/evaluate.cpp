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

#include "htmlu/evaluate.hpp"

#include <atomic>
#include <exception>
#include <thread>

#include "htmlu/metrics.hpp"

namespace htmlu {

namespace {

std::string predict(Model& predictor, const std::string& input, EvalReport& report) {
  try {
    return predictor.generate(ModelRequest{input}).text;
  } catch (const Timeout&) {
    ++report.failure_mode_counts["timeout"];
  } catch (const RemoteError&) {
    ++report.failure_mode_counts["remote_error"];
  } catch (const TransportError&) {
    ++report.failure_mode_counts["transport"];
  }
  return "";
}

void text_metrics(EvalReport& report, const std::vector<std::string>& golds) {
  const auto& preds = report.predictions;
  std::size_t hits = 0;
  double rouge = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    hits += static_cast<std::size_t>(exact_match(preds[i], golds[i]));
    rouge += rouge1(preds[i], golds[i]).f1;
  }
  const double n = static_cast<double>(preds.size());
  report.exact_match_pct = 100.0 * static_cast<double>(hits) / n;
  report.rouge1_f = rouge / n;
  report.bleu = bleu(preds, golds);
}

}  // namespace

EvalReport evaluate_classification(const std::vector<ClassificationExample>& data,
                                   Model& predictor, const CategoryVocabulary& vocab) {
  if (data.empty()) throw EmptyInput("classification dataset is empty");
  EvalReport report;
  report.task = "classify";
  report.n = data.size();
  std::vector<std::string> golds;
  for (const auto& ex : data) {
    std::string raw = predict(predictor, encode_classification_input(ex.snippet_html), report);
    DecodedCategory decoded = decode_category(raw, vocab);
    if (!decoded.in_vocabulary) ++report.failure_mode_counts["out_of_vocabulary"];
    report.predictions.push_back(decoded.category);
    golds.push_back(ex.category);
  }
  text_metrics(report, golds);
  return report;
}

EvalReport evaluate_descriptions(const std::vector<DescriptionExample>& data,
                                 Model& predictor) {
  if (data.empty()) throw EmptyInput("description dataset is empty");
  EvalReport report;
  report.task = "describe";
  report.n = data.size();
  std::vector<std::string> golds;
  for (const auto& ex : data) {
    report.predictions.push_back(predict(predictor, ex.snippet_html, report));
    golds.push_back(ex.description);
  }
  text_metrics(report, golds);
  return report;
}

EvalReport evaluate_navigation(const std::vector<EpisodeSpec>& specs,
                               const PolicyFactory& factory,
                               std::vector<EpisodeRecord>* episodes, unsigned jobs) {
  if (specs.empty()) throw EmptyInput("no episodes to run");
  std::vector<EpisodeRecord> records(specs.size());
  std::vector<std::string> transport(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      try {
        const TaskSpec& task = find_task(specs[i].task);
        std::unique_ptr<Model> policy = factory(task, specs[i].seed);
        try {
          records[i] = run_episode(task, specs[i].seed, *policy);
        } catch (const TransportError&) {
          records[i] = EpisodeRecord{task.name, specs[i].seed, {}, Outcome::Failure, 0, {}};
          transport[i] = "transport";
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(specs.size())));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  EvalReport report;
  report.task = "navigate";
  report.n = records.size();
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (const auto& [kind, count] : records[i].parse_errors) {
      report.failure_mode_counts[kind] += static_cast<std::size_t>(count);
    }
    if (!transport[i].empty()) ++report.failure_mode_counts[transport[i]];
    report.predictions.push_back(std::string(to_string(records[i].outcome)));
  }
  report.success_rate_pct = success_rate_pct(records);
  if (episodes != nullptr) *episodes = std::move(records);
  return report;
}

void to_json(nlohmann::json& j, const EvalReport& r) {
  j = nlohmann::json{{"task", r.task},
                     {"n", r.n},
                     {"failure_mode_counts", r.failure_mode_counts}};
  if (r.exact_match_pct) j["exact_match_pct"] = *r.exact_match_pct;
  if (r.bleu) j["bleu"] = *r.bleu;
  if (r.rouge1_f) j["rouge1_f"] = *r.rouge1_f;
  if (r.success_rate_pct) j["success_rate_pct"] = *r.success_rate_pct;
}

}  // namespace htmlu
