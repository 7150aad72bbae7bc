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

#include <cmath>
#include <map>
#include <sstream>

#include "fixtures.hpp"
#include "htmlu/metrics.hpp"
#include "htmlu/rng.hpp"
#include "oracles.hpp"

using namespace htmlu;
using htmlu::testing::by_id;
using htmlu::testing::kLoginPage;

namespace {

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// Textbook corpus BLEU: sum matches and totals per order, geometric mean,
// brevity penalty.
double reference_bleu(const std::vector<std::string>& preds,
                      const std::vector<std::string>& golds) {
  double match[4] = {}, total[4] = {};
  double c = 0, r = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    auto h = words(preds[i]);
    auto g = words(golds[i]);
    c += h.size();
    r += g.size();
    for (std::size_t n = 1; n <= 4; ++n) {
      std::map<std::vector<std::string>, int> hc, gc;
      for (std::size_t k = 0; k + n <= h.size(); ++k) ++hc[{h.begin() + k, h.begin() + k + n}];
      for (std::size_t k = 0; k + n <= g.size(); ++k) ++gc[{g.begin() + k, g.begin() + k + n}];
      for (const auto& [gram, cnt] : hc) {
        match[n - 1] += std::min(cnt, gc[gram]);
        total[n - 1] += cnt;
      }
    }
  }
  double log_sum = 0;
  for (int n = 0; n < 4; ++n) {
    if (match[n] == 0) return 0;
    log_sum += std::log(match[n] / total[n]) / 4;
  }
  double bp = c > r ? 1.0 : std::exp(1 - r / c);
  return 100 * bp * std::exp(log_sum);
}

std::string random_sentence(Rng& rng) {
  static const char* vocab[] = {"enter", "your", "email", "address", "password", "name", "the"};
  std::string s;
  std::size_t n = 1 + rng.uniform(8);
  for (std::size_t i = 0; i < n; ++i) s += std::string(i ? " " : "") + vocab[rng.uniform(7)];
  return s;
}

}  // namespace

TEST_CASE("exact match trims but keeps case") {
  CHECK(exact_match("Enter Email Address", "Enter Email Address") == 1);
  CHECK(exact_match("email", " email ") == 1);
  CHECK(exact_match("Email", "email") == 0);
  CHECK(exact_match("", "  ") == 1);
}

TEST_CASE("bleu on hand-counted sentences") {
  CHECK(bleu({"a b c d", "x y z w v"}, {"a b c d", "x y z w v"}) == doctest::Approx(100.0));
  // Precisions 5/6, 3/5, 2/4, 1/3; equal lengths.
  BleuScore s = corpus_bleu({"the cat sat on the mat"}, {"the cat sat on a mat"});
  CHECK(s.precisions[1] == doctest::Approx(0.6));
  CHECK(s.brevity_penalty == doctest::Approx(1.0));
  CHECK(s.score == doctest::Approx(100 * std::pow(1.0 / 12, 0.25)).epsilon(1e-12));
  // Shorter hypothesis: penalty exp(1 - 6/4).
  BleuScore short_hyp = corpus_bleu({"the cat sat on"}, {"the cat sat on a mat"});
  CHECK(short_hyp.brevity_penalty == doctest::Approx(std::exp(1 - 6.0 / 4)));
  CHECK(bleu({"a b c"}, {"d e f"}) == 0.0);
  CHECK(bleu({"a b c"}, {"a b c"}) == 0.0);  // no 4-grams at all
  CHECK_THROWS_AS(bleu({}, {}), EmptyInput);
  CHECK_THROWS_AS(bleu({"a"}, {"a", "b"}), UserError);
}

TEST_CASE("bleu agrees with the textbook formula on random corpora") {
  Rng rng(derive_seed({31}));
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> p, g;
    std::size_t n = 1 + rng.uniform(12);
    for (std::size_t i = 0; i < n; ++i) {
      p.push_back(random_sentence(rng));
      g.push_back(random_sentence(rng));
    }
    CHECK(bleu(p, g) == doctest::Approx(reference_bleu(p, g)).epsilon(1e-9));
  }
}

TEST_CASE("rouge-1 precision, recall and f1") {
  Rouge1 r = rouge1("enter your email", "enter email");
  CHECK(r.precision == doctest::Approx(2.0 / 3));
  CHECK(r.recall == doctest::Approx(1.0));
  CHECK(r.f1 == doctest::Approx(0.8));
  Rouge1 same = rouge1("Email Address", "email address");
  CHECK(same.f1 == doctest::Approx(1.0));
  Rouge1 clipped = rouge1("the the the", "the cat");
  CHECK(clipped.precision == doctest::Approx(1.0 / 3));
  CHECK(clipped.recall == doctest::Approx(0.5));
  CHECK(rouge1("a", "b").f1 == 0.0);
  CHECK(rouge1("", "b").f1 == 0.0);
  // Dropping an overlapping word never raises recall.
  CHECK(rouge1("enter email", "enter your email").recall >
        rouge1("enter", "enter your email").recall);
}

TEST_CASE("closest description picks the nearest text by offset") {
  CHECK(closest_description(R"(<div><label>Name</label><input target></div>)") == "Name");

  HtmlDocument doc = parse_html(kLoginPage);
  doc = mark_target(doc, by_id(doc, "uName"));
  const std::string html = serialize(doc);
  const auto tag = static_cast<long>(html.find("<input type=\"email\""));
  std::string best;
  long best_d = -1;
  for (const char* t : {"Email Address", "Enter Password:", "Please enter your password.", "Sign In"}) {
    long d = std::labs(static_cast<long>(html.find(t)) - tag);
    if (best_d < 0 || d < best_d) best = t, best_d = d;
  }
  CHECK(closest_description(doc) == best);
  CHECK(closest_description(html) == best);

  CHECK_THROWS_AS(closest_description(R"(<div><input target></div>)"), NoTextNodes);
  CHECK_THROWS_AS(closest_description(R"(<p>x</p><input>)"), UserError);
}

TEST_CASE("closest description on synthetic snippets") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    oracle::ClosestCase c = oracle::closest_case(seed);
    CHECK(closest_description(c.html) == oracle::closest_answer(c));
  }
}
