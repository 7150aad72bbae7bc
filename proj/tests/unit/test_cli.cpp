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
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"

using htmlu::testing::data_path;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded unless `merge_stderr`.
Run cli(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string(HTMLU_CLI_PATH) + " " + args +
                    (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_tmp(const std::string& name, const std::string& body) {
  std::string path = "/tmp/htmlu_cli_" + name;
  std::ofstream(path) << body;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit with status 1") {
  Run none = cli("", true);
  CHECK(none.code == 1);
  CHECK(none.out.find("Subcommands:") != std::string::npos);
  CHECK(cli("bogus").code == 1);
  CHECK(cli("snippet --html /nonexistent.html --salient-id a").code == 1);
  CHECK(cli("run-episodes --task nope").code == 1);
  CHECK(cli("--config /nonexistent.json corrupt --html /dev/null").code == 1);
}

TEST_CASE("snippet and corrupt") {
  const std::string page = write_tmp("page.html", R"(<div><p>a<b>b</b></p><i id="x">c</i></div>)");
  Run wide = cli("snippet --html " + page + " --salient-id x --pct 300");
  CHECK(wide.code == 0);
  CHECK(wide.out == "<div><p>a<b>b</b></p><i id=\"x\" target>c</i></div>\n");
  Run tight = cli("snippet --html " + page + " --salient-id x --refs");
  CHECK(tight.out == "<i id=\"x\" target ref=\"4\">c</i>\n");
  CHECK(cli("snippet --html " + page + " --salient-ref 4 --pct 300").out == wide.out);
  CHECK(cli("snippet --html " + page + " --salient-id missing").code == 1);
  CHECK(cli("snippet --html " + page + " --salient-id x --height 0").code == 1);
  CHECK(cli("corrupt --html " + page).out == "<div><p>a<b>b<i id=\"x\">c\n");
}

TEST_CASE("distill is deterministic and honors the cap") {
  const std::string warcs = data_path("corpus") + "/crawl-*";
  const std::string flags = "distill --warc '" + warcs + "' --pct 300 --seed 5 --max-per-desc 3";
  REQUIRE(cli(flags + " --out /tmp/htmlu_cli_a.jsonl --report /tmp/htmlu_cli_r.json").code == 0);
  REQUIRE(cli("--jobs 2 " + flags + " --out /tmp/htmlu_cli_b.jsonl").code == 0);
  const std::string a = slurp("/tmp/htmlu_cli_a.jsonl");
  CHECK(!a.empty());
  CHECK(a == slurp("/tmp/htmlu_cli_b.jsonl"));

  std::map<std::string, int> per;
  std::istringstream lines(a);
  for (std::string line; std::getline(lines, line);) {
    auto j = nlohmann::json::parse(line);
    std::string d = j.at("description");
    for (char& c : d) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    ++per[d];
  }
  for (const auto& [d, n] : per) CHECK(n <= 3);
  auto report = nlohmann::json::parse(slurp("/tmp/htmlu_cli_r.json"));
  CHECK(report.at("emitted") == std::count(a.begin(), a.end(), '\n'));
  Run summary = cli("report --distill /tmp/htmlu_cli_r.json");
  CHECK(summary.code == 0);
  CHECK(summary.out.find("email") != std::string::npos);

  CHECK(cli("distill --warc /nonexistent/*.warc --out /tmp/htmlu_cli_c.jsonl").code == 1);
}

TEST_CASE("episodes, encoding and evaluation") {
  Run eps = cli("run-episodes --task login-user --episodes 3 --policy oracle --seed 1 "
                "--out /tmp/htmlu_cli_eps.jsonl");
  REQUIRE(eps.code == 0);
  const std::string log = slurp("/tmp/htmlu_cli_eps.jsonl");
  CHECK(std::count(log.begin(), log.end(), '\n') == 3);
  CHECK(log.find("\"outcome\":\"success\"") != std::string::npos);

  Run enc = cli("encode --task navigate --input /tmp/htmlu_cli_eps.jsonl");
  REQUIRE(enc.code == 0);
  auto first = nlohmann::json::parse(enc.out.substr(0, enc.out.find('\n')));
  CHECK(first.at("target").get<std::string>().rfind("{action: type, ref: ", 0) == 0);

  Run eval = cli("eval --task navigate --predictor gold --nav-task click-button --episodes 5");
  REQUIRE(eval.code == 0);
  CHECK(nlohmann::json::parse(eval.out).at("success_rate_pct") == 100.0);

  const std::string data = write_tmp(
      "cls.jsonl", "{\"snippet_html\": \"<input>\", \"category\": \"email\"}\n"
                   "{\"snippet_html\": \"<input id=\\\"p\\\">\", \"category\": \"password\"}\n");
  Run cls = cli("eval --task classify --predictor gold --data " + data);
  REQUIRE(cls.code == 0);
  CHECK(nlohmann::json::parse(cls.out).at("exact_match_pct") == 100.0);
  CHECK(cli("eval --task classify --predictor gold --data /nonexistent.jsonl").code == 1);
  CHECK(cli("eval --task classify --predictor remote:ftp://x --data " + data).code == 1);
}
