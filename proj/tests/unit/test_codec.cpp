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

#include <algorithm>

#include <json.hpp>

#include "fixtures.hpp"
#include "htmlu/codec.hpp"
#include "htmlu/config.hpp"
#include "htmlu/errors.hpp"
#include "htmlu/html.hpp"
#include "htmlu/rng.hpp"

using namespace htmlu;

namespace {

ActionErrorKind parse_kind(std::string_view text) {
  try {
    parse_action(text);
  } catch (const ActionParseError& e) {
    return e.kind();
  }
  FAIL("parsed without error: " << text);
  return ActionErrorKind::MalformedRecord;
}

FewShotErrorKind fewshot_kind(const std::vector<ClassificationExample>& ex,
                              const CategoryVocabulary& vocab) {
  try {
    build_fewshot_prompt(ex, "<input>", vocab);
  } catch (const FewShotError& e) {
    return e.kind();
  }
  FAIL("prompt built without error");
  return FewShotErrorKind::UnknownCategory;
}

CategoryVocabulary small_vocab() {
  return CategoryVocabulary({"email", "first_name", "password_new", "street_line1_address"},
                            {{"e mail", "email"}, {"given name", "first_name"}});
}

}  // namespace

TEST_CASE("actions render as key-value records") {
  CHECK(encode_action(Action::click(6)) == "{action: click, ref: 6}");
  CHECK(encode_action(Action::type(5, "username@email.com")) ==
        "{action: type, ref: 5, text: username@email.com}");
  CHECK(parse_action("{action: click, ref: 12}") == Action::click(12));
  CHECK(parse_action("  {action: type, ref: 3, text: a, b }\n") == Action::type(3, "a, b "));
}

TEST_CASE("each malformed action maps to its own error kind") {
  CHECK(parse_kind("click ref 3") == ActionErrorKind::MalformedRecord);
  CHECK(parse_kind("{action: click}") == ActionErrorKind::MalformedRecord);
  CHECK(parse_kind("{ref: 3, action: click}") == ActionErrorKind::MalformedRecord);
  CHECK(parse_kind("") == ActionErrorKind::MalformedRecord);
  CHECK(parse_kind("{action: click, ref: abc}") == ActionErrorKind::NonIntegerRef);
  CHECK(parse_kind("{action: click, ref: 0}") == ActionErrorKind::NonIntegerRef);
  CHECK(parse_kind("{action: click, ref: 2.5}") == ActionErrorKind::NonIntegerRef);
  CHECK(parse_kind("{action: hover, ref: 2}") == ActionErrorKind::UnknownFunction);
  CHECK(parse_kind("{action: type, ref: 2}") == ActionErrorKind::MissingText);
  CHECK(to_string(ActionErrorKind::MissingText) == "MissingText");
}

TEST_CASE("action codec round-trips random actions") {
  Rng rng(derive_seed({7, 1}));
  const std::string alphabet = "abc XYZ,:{}@.0";
  for (int i = 0; i < 1000; ++i) {
    int ref = static_cast<int>(1 + rng.uniform(100000));
    Action a = Action::click(ref);
    if (rng.coin()) {
      std::string text;
      std::size_t len = rng.uniform(13);
      for (std::size_t k = 0; k < len; ++k) text += alphabet[rng.uniform(alphabet.size())];
      a = Action::type(ref, text);
    }
    CHECK(parse_action(encode_action(a)) == a);
  }
}

TEST_CASE("navigation inputs carry history only when present") {
  NavigationStep step;
  step.instruction = "click the button";
  step.html = "<button>Go</button>";
  const std::string bare = encode_navigation_input(step);
  CHECK(bare == "click the button\n<button>Go</button>");

  step.action_history = {Action::click(6), Action::type(2, "x")};
  const std::string with = encode_navigation_input(step);
  CHECK(with == "{action: click, ref: 6} {action: type, ref: 2, text: x}\n" + bare);
  CHECK(with.substr(with.size() - bare.size()) == bare);

  NavigationInput in = decode_navigation_input(with);
  CHECK(in.history == "{action: click, ref: 6} {action: type, ref: 2, text: x}");
  CHECK(in.instruction == "click the button");
  CHECK(in.html == "<button>Go</button>");
  NavigationInput none = decode_navigation_input(bare);
  CHECK(none.history.empty());
  CHECK(none.instruction == "click the button");
}

TEST_CASE("vocabulary construction validates its inputs") {
  CHECK_THROWS_AS(CategoryVocabulary({"a", "a"}, {}), UserError);
  CHECK_THROWS_AS(CategoryVocabulary({"a"}, {{"b b", "missing"}}), UserError);
  CHECK_THROWS_AS(CategoryVocabulary::from_json(nlohmann::json::object()), UserError);
  CHECK_THROWS_AS(CategoryVocabulary::load("/nonexistent/vocab.json"), IoError);
  auto v = CategoryVocabulary::from_json(
      nlohmann::json::parse(R"({"categories": ["x", "y"], "paraphrases": {"why": "y"}})"));
  CHECK(v.index_of("y") == 1u);
  CHECK(v.paraphrase("  WHY ") == "y");
  CHECK_FALSE(v.contains("z"));
}

TEST_CASE("categories decode through trim, paraphrase and token rewriting") {
  const auto vocab = small_vocab();
  CHECK(decode_category("password_new", vocab).category == "password_new");
  auto trimmed = decode_category(" email ", vocab);
  CHECK(trimmed.category == "email");
  CHECK(trimmed.in_vocabulary);
  CHECK(decode_category("e mail", vocab).category == "email");
  CHECK(decode_category("name_first", vocab).category == "first_name");
  auto oov = decode_category(" zipcode ", vocab);
  CHECK(oov.category == "zipcode");
  CHECK_FALSE(oov.in_vocabulary);

  CHECK(canonicalize_category("address_street_line1", vocab) == "street_line1_address");
  CHECK(canonicalize_category("line1_street_address", vocab) == "street_line1_address");
  CHECK_FALSE(canonicalize_category("street_address", vocab).has_value());
  for (const auto& name : vocab.names()) CHECK(canonicalize_category(name, vocab) == name);
}

TEST_CASE("rotations of the shipped vocabulary resolve back") {
  const auto vocab = builtin_vocabulary();
  REQUIRE(vocab.names().size() == 66);
  for (const auto& name : vocab.names()) {
    CHECK(canonicalize_category(name, vocab) == name);
    std::vector<std::string> toks;
    std::size_t start = 0;
    for (std::size_t pos; (pos = name.find('_', start)) != std::string::npos; start = pos + 1)
      toks.push_back(name.substr(start, pos - start));
    toks.push_back(name.substr(start));
    if (toks.size() < 2) continue;
    std::rotate(toks.begin(), toks.begin() + 1, toks.end());
    std::string rotated = toks[0];
    for (std::size_t i = 1; i < toks.size(); ++i) rotated += "_" + toks[i];
    auto got = canonicalize_category(rotated, vocab);
    REQUIRE(got.has_value());
    // A rotation may collide with another category; it must then be that one.
    CHECK((*got == name || (vocab.contains(rotated) && *got == rotated)));
  }
}

TEST_CASE("prompt examples lose media elements and classes") {
  CHECK(clean_prompt_example(R"(<div class="a"><img src="x"><span>hi</span></div>)") ==
        "<div><span>hi</span></div>");
  const std::string plain = R"(<form id="f"><input type="text"></form>)";
  CHECK(clean_prompt_example(plain) == plain);

  const std::string nested =
      R"(<p>a<svg><g><path d="M0"></path><circle></circle></g></svg><iframe src="y"></iframe>b</p>)";
  HtmlDocument before = parse_html(nested);
  std::size_t removed = 0;
  for (NodeId id : before.elements()) {
    for (NodeId a = id; a != before.root(); a = *before.node(a).parent) {
      const auto& tag = before.node(a).tag;
      if (tag == "svg" || tag == "iframe") {
        ++removed;
        break;
      }
    }
  }
  const std::string cleaned = clean_prompt_example(nested);
  CHECK(parse_html(cleaned).elements().size() == before.elements().size() - removed);
  CHECK(clean_prompt_example(cleaned) == cleaned);
  CHECK_THROWS_AS(clean_prompt_example("\xff"), ParseError);
}

TEST_CASE("few-shot prompts follow vocabulary order") {
  const auto vocab = small_vocab();
  std::vector<ClassificationExample> ex = {{"<input id=\"p\">", "password_new"},
                                           {"<input class=\"c\">", "email"}};
  CHECK(build_fewshot_prompt(ex, "<input class=\"q\">", vocab) ==
        "<input>\nRole: email\n\n<input id=\"p\">\nRole: password_new\n\n<input>\nRole:");
  CHECK(build_fewshot_prompt({}, "<b>q</b>", vocab) == "<b>q</b>\nRole:");

  ex.push_back({"<i></i>", "email"});
  CHECK(fewshot_kind(ex, vocab) == FewShotErrorKind::DuplicateCategory);
  CHECK(fewshot_kind({{"<i></i>", "shoe_size"}}, vocab) == FewShotErrorKind::UnknownCategory);

  const auto full = builtin_vocabulary();
  std::vector<ClassificationExample> all;
  for (auto it = full.names().rbegin(); it != full.names().rend(); ++it)
    all.push_back({"<input>", *it});
  const std::string prompt = build_fewshot_prompt(all, "<input>", full);
  std::size_t pos = 0;
  for (const auto& name : full.names()) {
    std::size_t hit = prompt.find("Role: " + name + "\n", pos);
    REQUIRE(hit != std::string::npos);
    pos = hit + 1;
  }
}

TEST_CASE("records convert to and from json") {
  nlohmann::json j = Action::type(4, "hi");
  CHECK(j.get<Action>() == Action::type(4, "hi"));
  CHECK_THROWS(nlohmann::json::parse(R"({"function": "type", "ref": 2})").get<Action>());
  CHECK_THROWS(nlohmann::json::parse(R"({"function": "click", "ref": 0})").get<Action>());

  NavigationStep s{{Action::click(1)}, "go", "<a></a>", Action::click(2)};
  auto back = nlohmann::json(s).get<NavigationStep>();
  CHECK(back.action_history == s.action_history);
  CHECK(back.html == s.html);
  CHECK(back.action == s.action);

  auto e = nlohmann::json(ClassificationExample{"<b></b>", "email"}).get<ClassificationExample>();
  CHECK(e.category == "email");
  CHECK(encode_classification_input("<b> x </b>") == "<b> x </b>");
}
