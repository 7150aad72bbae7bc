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

// htmlu: command-line front end.
//
//   htmlu distill --warc 'crawl/*.warc.gz' --out corpus.jsonl --seed 7
//   htmlu snippet --html page.html --salient-id uName --pct 25 --height 3
//   htmlu encode --task navigate --input demos.jsonl --out encoded.jsonl
//   htmlu corrupt --html page.html
//   htmlu run-episodes --task login-user --episodes 100 --policy oracle
//   htmlu eval --task describe --predictor closest --data corpus.jsonl
//   htmlu report --distill report.json
//
// Exit status: 0 success, 1 user error (bad flags, bad input), 2 internal.

#include <glob.h>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "htmlu/codec.hpp"
#include "htmlu/config.hpp"
#include "htmlu/distill.hpp"
#include "htmlu/evaluate.hpp"
#include "htmlu/html.hpp"
#include "htmlu/metrics.hpp"
#include "htmlu/model_client.hpp"
#include "htmlu/nav_env.hpp"
#include "htmlu/snippet.hpp"
#include "htmlu/text_util.hpp"

namespace {

using htmlu::UserError;
using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw htmlu::IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to `path`, or stdout for "" and "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw htmlu::IoError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<json> read_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw htmlu::IoError("cannot open " + path);
  std::vector<json> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (htmlu::trim(line).empty()) continue;
    try {
      rows.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw UserError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

template <typename T>
std::vector<T> read_records(const std::string& path) {
  std::vector<T> out;
  std::size_t i = 0;
  for (const json& row : read_jsonl(path)) {
    ++i;
    try {
      out.push_back(row.get<T>());
    } catch (const json::exception& e) {
      throw UserError(path + ": record " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

std::vector<std::string> expand_globs(const std::vector<std::string>& patterns) {
  std::vector<std::string> paths;
  for (const auto& pattern : patterns) {
    glob_t g{};
    int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
    if (rc == GLOB_NOMATCH) {
      globfree(&g);
      throw UserError("no files match " + pattern);
    }
    if (rc != 0) {
      globfree(&g);
      throw htmlu::IoError("cannot expand " + pattern);
    }
    for (std::size_t i = 0; i < g.gl_pathc; ++i) paths.emplace_back(g.gl_pathv[i]);
    globfree(&g);
  }
  return paths;
}

unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

// "remote:URL" -> URL
std::optional<std::string> remote_url(const std::string& policy) {
  constexpr std::string_view kPrefix = "remote:";
  if (policy.rfind(kPrefix, 0) != 0) return std::nullopt;
  std::string url = policy.substr(kPrefix.size());
  if (url.empty()) throw UserError("remote predictor needs a URL");
  return url;
}

struct Globals {
  std::optional<std::string> config_path;
  std::optional<unsigned> jobs;
  htmlu::ToolkitConfig config;

  void load() {
    config = htmlu::ToolkitConfig::load(config_path, htmlu::process_env());
    if (jobs) config.jobs = *jobs;
    config.distill.jobs = config.jobs;
  }
};

// --- distill ---------------------------------------------------------------

struct DistillArgs {
  std::vector<std::string> warc;
  std::string out;
  std::string report;
  std::optional<std::size_t> max_per_desc;
  std::optional<std::uint64_t> seed;
  std::optional<double> pct;
  std::optional<int> height;
  bool random_retention = false;
};

int run_distill(Globals& g, const DistillArgs& a) {
  auto cfg = g.config;
  if (a.max_per_desc) cfg.distill.max_per_description = *a.max_per_desc;
  if (a.seed) cfg.distill.rng_seed = *a.seed;
  if (a.pct) cfg.snippet.max_new_descendants_pct = *a.pct;
  if (a.height) cfg.snippet.max_height = *a.height;
  if (a.random_retention) cfg.distill.random_retention = true;
  cfg.distill.jobs = resolve_jobs(cfg.jobs);
  cfg.distill.validate();
  cfg.snippet.validate();

  const auto paths = expand_globs(a.warc);
  Output out(a.out);
  auto& os = out.stream();
  htmlu::DistillReport report = htmlu::distill(
      paths, cfg.distill, cfg.snippet, [&](const htmlu::DescriptionExample& ex) {
        os << json(ex).dump() << '\n';
      });
  os.flush();
  json rj = report;
  if (!a.report.empty()) {
    Output rout(a.report);
    rout.stream() << rj.dump(2) << '\n';
  }
  std::cerr << "distill: " << report.pages << " pages, " << report.raw_pairs
            << " label pairs, " << report.emitted << " examples emitted\n";
  return 0;
}

// --- snippet ---------------------------------------------------------------

struct SnippetArgs {
  std::string html;
  std::string salient_id;
  std::optional<int> salient_ref;
  std::optional<double> pct;
  std::optional<int> height;
  std::string out;
  bool refs = false;
  bool stats = false;
};

int run_snippet(Globals& g, const SnippetArgs& a) {
  auto cfg = g.config.snippet;
  if (a.pct) cfg.max_new_descendants_pct = *a.pct;
  if (a.height) cfg.max_height = *a.height;
  cfg.validate();
  if (a.salient_id.empty() == !a.salient_ref.has_value()) {
    throw UserError("give exactly one of --salient-id or --salient-ref");
  }
  htmlu::HtmlDocument doc = htmlu::assign_refs(htmlu::parse_html(read_file(a.html)));
  std::optional<htmlu::NodeId> salient;
  if (a.salient_ref) {
    salient = htmlu::find_by_ref(doc, *a.salient_ref);
    if (!salient) throw UserError("no element with ref " + std::to_string(*a.salient_ref));
  } else {
    auto hits = htmlu::find_by_attr(doc, "id", a.salient_id);
    if (hits.empty()) throw UserError("no element with id '" + a.salient_id + "'");
    salient = hits.front();
  }
  htmlu::Snippet snip = htmlu::extract_snippet(doc, *salient, cfg);
  Output out(a.out);
  out.stream() << htmlu::serialize(snip.doc, {.emit_refs = a.refs}) << '\n';
  if (a.stats) {
    auto st = htmlu::snippet_stats(doc, *salient, cfg);
    std::cerr << "hops=" << st.hops << " new_desc_pct=" << st.new_desc_pct
              << " nodes=" << st.node_count << '\n';
  }
  return 0;
}

// --- encode ----------------------------------------------------------------

struct EncodeArgs {
  std::string task;
  std::string input;
  std::string out;
  bool no_history = false;
};

// One {"input", "target"} line per record: the model-side text pair.
int run_encode(Globals& g, const EncodeArgs& a) {
  Output out(a.out);
  auto& os = out.stream();
  auto emit = [&](const std::string& in, const std::string& target) {
    os << json{{"input", in}, {"target", target}}.dump() << '\n';
  };
  if (a.task == "navigate") {
    // Accepts single steps or whole episode records (run-episodes logs).
    std::vector<htmlu::NavigationStep> steps;
    std::size_t i = 0;
    for (const json& row : read_jsonl(a.input)) {
      ++i;
      try {
        if (row.contains("steps")) {
          auto tuples = htmlu::demos_to_training_tuples({row.get<htmlu::EpisodeRecord>()});
          steps.insert(steps.end(), tuples.begin(), tuples.end());
        } else {
          steps.push_back(row.get<htmlu::NavigationStep>());
        }
      } catch (const json::exception& e) {
        throw UserError(a.input + ": record " + std::to_string(i) + ": " + e.what());
      }
    }
    for (auto& step : steps) {
      if (a.no_history) step.action_history.clear();
      emit(htmlu::encode_navigation_input(step), htmlu::encode_action(step.action));
    }
  } else if (a.task == "classify") {
    const auto vocab = g.config.vocabulary();
    for (const auto& ex : read_records<htmlu::ClassificationExample>(a.input)) {
      if (!vocab.contains(ex.category)) {
        throw UserError("category '" + ex.category + "' is not in the vocabulary");
      }
      emit(htmlu::encode_classification_input(ex.snippet_html), ex.category);
    }
  } else if (a.task == "describe") {
    for (const auto& ex : read_records<htmlu::DescriptionExample>(a.input)) {
      emit(ex.snippet_html, ex.description);
    }
  } else {
    throw UserError("unknown task '" + a.task + "'");
  }
  return 0;
}

// --- corrupt ---------------------------------------------------------------

int run_corrupt(const std::string& html) {
  std::string text = htmlu::strip_closing_tags(htmlu::parse_html(read_file(html)));
  std::cout << text;
  if (text.empty() || text.back() != '\n') std::cout << '\n';
  return 0;
}

// --- run-episodes ----------------------------------------------------------

struct EpisodeArgs {
  std::vector<std::string> tasks;
  int episodes = 100;
  std::string policy = "oracle";
  std::uint64_t seed = 0;
  std::string out;
};

htmlu::PolicyFactory make_policy(const std::string& policy,
                                 const htmlu::ToolkitConfig& cfg) {
  if (policy == "oracle") {
    return [](const htmlu::TaskSpec& task, std::uint64_t) {
      return std::make_unique<htmlu::ScriptedOracleModel>(task);
    };
  }
  if (policy == "random") {
    return [](const htmlu::TaskSpec& task, std::uint64_t seed) {
      std::uint64_t h = 0;
      for (char c : task.name) h = h * 131 + static_cast<unsigned char>(c);
      return std::make_unique<htmlu::RandomActionModel>(htmlu::derive_seed({seed, h}));
    };
  }
  if (auto url = remote_url(policy)) {
    auto endpoint = cfg.endpoint;
    endpoint.base_url = *url;
    auto shared = std::make_shared<htmlu::RemoteModel>(endpoint);
    struct Handle : htmlu::Model {
      std::shared_ptr<htmlu::RemoteModel> inner;
      htmlu::Generation generate(const htmlu::ModelRequest& r) override {
        return inner->generate(r);
      }
    };
    return [shared](const htmlu::TaskSpec&, std::uint64_t) {
      auto h = std::make_unique<Handle>();
      h->inner = shared;
      return h;
    };
  }
  throw UserError("unknown policy '" + policy + "' (oracle, random, remote:URL)");
}

std::vector<htmlu::EpisodeSpec> episode_specs(const std::vector<std::string>& tasks,
                                              int episodes, std::uint64_t seed) {
  if (episodes < 1) throw UserError("--episodes must be at least 1");
  std::vector<std::string> names = tasks;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) names = htmlu::task_names();
  std::vector<htmlu::EpisodeSpec> specs;
  for (const auto& name : names) {
    htmlu::find_task(name);  // validates
    for (int i = 0; i < episodes; ++i) {
      specs.push_back({name, seed + static_cast<std::uint64_t>(i)});
    }
  }
  return specs;
}

int run_episodes(Globals& g, const EpisodeArgs& a) {
  auto specs = episode_specs(a.tasks, a.episodes, a.seed);
  std::vector<htmlu::EpisodeRecord> records;
  auto report = htmlu::evaluate_navigation(specs, make_policy(a.policy, g.config), &records,
                                           resolve_jobs(g.config.jobs));
  if (auto it = report.failure_mode_counts.find("transport");
      it != report.failure_mode_counts.end()) {
    std::cerr << "warning: " << it->second << " episode(s) lost to model transport errors\n";
  }
  Output out(a.out);
  for (const auto& r : records) out.stream() << json(r).dump() << '\n';
  std::map<std::string, std::vector<htmlu::EpisodeRecord>> by_task;
  for (auto& r : records) by_task[r.task].push_back(r);
  for (const auto& [task, rs] : by_task) {
    std::cerr << task << ": success " << htmlu::success_rate_pct(rs) << "% over "
              << rs.size() << " episodes\n";
  }
  return 0;
}

// --- eval ------------------------------------------------------------------

struct EvalArgs {
  std::string task;
  std::string predictor = "gold";
  std::string data;
  std::vector<std::string> nav_tasks;
  int episodes = 100;
  std::uint64_t seed = 0;
  std::string out;
  bool predictions = false;
};

std::unique_ptr<htmlu::Model> remote_model(const std::string& url,
                                           const htmlu::ToolkitConfig& cfg) {
  auto endpoint = cfg.endpoint;
  endpoint.base_url = url;
  return std::make_unique<htmlu::RemoteModel>(endpoint);
}

int run_eval(Globals& g, const EvalArgs& a) {
  htmlu::EvalReport report;
  if (a.task == "navigate") {
    std::string policy = a.predictor == "gold" ? "oracle" : a.predictor;
    if (policy == "closest") throw UserError("closest predictor does not apply to navigate");
    report = htmlu::evaluate_navigation(episode_specs(a.nav_tasks, a.episodes, a.seed),
                                        make_policy(policy, g.config), nullptr,
                                        resolve_jobs(g.config.jobs));
  } else if (a.task == "classify" || a.task == "describe") {
    if (a.data.empty()) throw UserError("--data is required for " + a.task);
    std::unique_ptr<htmlu::Model> model;
    if (auto url = remote_url(a.predictor)) {
      model = remote_model(*url, g.config);
    } else if (a.predictor == "closest") {
      if (a.task != "describe") throw UserError("closest predictor only applies to describe");
      model = std::make_unique<htmlu::ClosestDescriptionModel>();
    } else if (a.predictor != "gold") {
      throw UserError("unknown predictor '" + a.predictor + "' (gold, closest, remote:URL)");
    }
    if (a.task == "classify") {
      auto data = read_records<htmlu::ClassificationExample>(a.data);
      if (!model) {
        auto echo = std::make_unique<htmlu::EchoGoldModel>();
        for (const auto& ex : data) {
          echo->add(htmlu::encode_classification_input(ex.snippet_html), ex.category);
        }
        model = std::move(echo);
      }
      report = htmlu::evaluate_classification(data, *model, g.config.vocabulary());
    } else {
      auto data = read_records<htmlu::DescriptionExample>(a.data);
      if (!model) {
        auto echo = std::make_unique<htmlu::EchoGoldModel>();
        for (const auto& ex : data) echo->add(ex.snippet_html, ex.description);
        model = std::move(echo);
      }
      report = htmlu::evaluate_descriptions(data, *model);
    }
  } else {
    throw UserError("unknown task '" + a.task + "' (classify, describe, navigate)");
  }
  json j = report;
  if (a.predictions) j["predictions"] = report.predictions;
  Output out(a.out);
  out.stream() << j.dump(2) << '\n';
  return 0;
}

// --- report ----------------------------------------------------------------

struct ReportArgs {
  std::string distill;
  std::string episodes;
};

int run_report(const ReportArgs& a) {
  if (a.distill.empty() == a.episodes.empty()) {
    throw UserError("give exactly one of --distill or --episodes");
  }
  if (!a.distill.empty()) {
    json r;
    try {
      r = json::parse(read_file(a.distill));
    } catch (const json::exception& e) {
      throw UserError(a.distill + ": " + e.what());
    }
    static const char* kFunnel[] = {
        "warc_files",       "warc_records",      "non_html_skipped",
        "malformed_records", "pages",            "parse_failures",
        "raw_pairs",        "unmatched_labels",  "duplicate_id_warnings",
        "dropped_unclean",  "filtered",          "dropped_ambiguous_id",
        "dropped_single_text", "before_balancing", "dropped_by_cap",
        "emitted",          "unique_descriptions"};
    for (const char* key : kFunnel) {
      if (r.contains(key)) std::printf("%-24s %12s\n", key, r[key].dump().c_str());
    }
    if (r.contains("top20_share")) {
      std::printf("%-24s %11.1f%%\n", "top20_share", 100.0 * r["top20_share"].get<double>());
    }
    if (r.contains("top_descriptions")) {
      std::printf("\nmost frequent descriptions:\n");
      for (const auto& row : r["top_descriptions"]) {
        std::printf("  %6s  %s\n", row.at("count").dump().c_str(),
                    row.at("description").get<std::string>().c_str());
      }
    }
    return 0;
  }
  auto records = read_records<htmlu::EpisodeRecord>(a.episodes);
  std::map<std::string, std::vector<htmlu::EpisodeRecord>> by_task;
  std::map<std::string, std::map<std::string, int>> errors;
  for (auto& r : records) {
    for (const auto& [k, v] : r.parse_errors) errors[r.task][k] += v;
    by_task[r.task].push_back(std::move(r));
  }
  std::printf("%-20s %9s %9s  %s\n", "task", "episodes", "success%", "parse errors");
  for (const auto& [task, rs] : by_task) {
    std::string errs;
    for (const auto& [k, v] : errors[task]) {
      errs += (errs.empty() ? "" : ", ") + k + "=" + std::to_string(v);
    }
    std::printf("%-20s %9zu %9.1f  %s\n", task.c_str(), rs.size(),
                htmlu::success_rate_pct(rs), errs.empty() ? "-" : errs.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"htmlu: HTML understanding toolkit", "htmlu"};
  app.require_subcommand(0, 1);
  Globals g;
  app.add_option("--config", g.config_path, "JSON config file");
  app.add_option("--jobs", g.jobs, "worker threads (default: logical cores)");

  DistillArgs da;
  auto* distill = app.add_subcommand("distill", "build a description corpus from WARC files");
  distill->add_option("--warc", da.warc, "WARC file or glob (repeatable)")->required();
  distill->add_option("--out", da.out, "JSONL output (default stdout)");
  distill->add_option("--report", da.report, "write the DistillReport JSON here");
  distill->add_option("--max-per-desc", da.max_per_desc, "cap per description");
  distill->add_option("--seed", da.seed, "seed for label-tag randomization");
  distill->add_option("--pct", da.pct, "snippet new-descendants limit (%)");
  distill->add_option("--height", da.height, "snippet height limit");
  distill->add_flag("--random-retention", da.random_retention,
                    "keep a seeded random subset per description instead of the earliest");

  SnippetArgs sa;
  auto* snippet = app.add_subcommand("snippet", "extract the snippet around one element");
  snippet->add_option("--html", sa.html, "HTML file")->required();
  snippet->add_option("--salient-id", sa.salient_id, "id of the salient element");
  snippet->add_option("--salient-ref", sa.salient_ref, "ref of the salient element");
  snippet->add_option("--pct", sa.pct, "new-descendants limit (%)");
  snippet->add_option("--height", sa.height, "height limit");
  snippet->add_option("--out", sa.out, "output file (default stdout)");
  snippet->add_flag("--refs", sa.refs, "serialize ref attributes");
  snippet->add_flag("--stats", sa.stats, "print hops and growth to stderr");

  EncodeArgs ea;
  auto* encode = app.add_subcommand("encode", "encode a dataset into model input/target text");
  encode->add_option("--task", ea.task, "navigate, classify or describe")->required();
  encode->add_option("--input", ea.input, "JSONL records")->required();
  encode->add_option("--out", ea.out, "JSONL output (default stdout)");
  encode->add_flag("--no-history", ea.no_history, "drop action histories");

  std::string corrupt_html;
  auto* corrupt = app.add_subcommand("corrupt", "print a page with closing tags removed");
  corrupt->add_option("--html", corrupt_html, "HTML file")->required();

  EpisodeArgs pa;
  auto* episodes = app.add_subcommand("run-episodes", "run navigation episodes");
  episodes->add_option("--task", pa.tasks, "task name(s) or 'all'");
  episodes->add_option("--episodes", pa.episodes, "episodes per task");
  episodes->add_option("--policy", pa.policy, "oracle, random or remote:URL");
  episodes->add_option("--seed", pa.seed, "first episode seed");
  episodes->add_option("--out", pa.out, "JSONL episode log (default stdout)");

  EvalArgs va;
  auto* eval = app.add_subcommand("eval", "score a predictor");
  eval->add_option("--task", va.task, "classify, describe or navigate")->required();
  eval->add_option("--predictor", va.predictor, "gold, closest or remote:URL");
  eval->add_option("--data", va.data, "JSONL dataset (classify, describe)");
  eval->add_option("--nav-task", va.nav_tasks, "navigation task(s) (default all)");
  eval->add_option("--episodes", va.episodes, "episodes per navigation task");
  eval->add_option("--seed", va.seed, "first episode seed");
  eval->add_option("--out", va.out, "report output (default stdout)");
  eval->add_flag("--predictions", va.predictions, "include predictions in the report");

  ReportArgs ra;
  auto* report = app.add_subcommand("report", "summarize a distill report or episode log");
  report->add_option("--distill", ra.distill, "DistillReport JSON");
  report->add_option("--episodes", ra.episodes, "episode log JSONL");

  if (argc <= 1) {
    std::cout << app.help();
    return 1;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  if (app.get_subcommands().empty()) {
    std::cout << app.help();
    return 1;
  }

  try {
    g.load();
    if (distill->parsed()) return run_distill(g, da);
    if (snippet->parsed()) return run_snippet(g, sa);
    if (encode->parsed()) return run_encode(g, ea);
    if (corrupt->parsed()) return run_corrupt(corrupt_html);
    if (episodes->parsed()) return run_episodes(g, pa);
    if (eval->parsed()) return run_eval(g, va);
    if (report->parsed()) return run_report(ra);
  } catch (const UserError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
