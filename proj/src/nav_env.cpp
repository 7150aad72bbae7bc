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

#include "htmlu/nav_env.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <regex>
#include <set>

#include "htmlu/rng.hpp"
#include "htmlu/text_util.hpp"

namespace htmlu {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Running:
      return "running";
    case Outcome::Success:
      return "success";
    case Outcome::Failure:
      return "failure";
  }
  return "unknown";
}

std::optional<int> element_ref(const HtmlDocument& doc, NodeId id) {
  const HtmlNode& n = doc.node(id);
  if (n.ref) return n.ref;
  auto attr = n.attribute("ref");
  if (!attr) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(attr->data(), attr->data() + attr->size(), value);
  if (ec != std::errc() || ptr != attr->data() + attr->size()) return std::nullopt;
  return value;
}

namespace {

constexpr std::array<std::string_view, 40> kWords = {
    "apple",  "river",  "stone",  "cloud",  "maple",  "tiger",  "lemon",
    "pixel",  "orbit",  "candle", "harbor", "violet", "falcon", "meadow",
    "copper", "willow", "ember",  "quartz", "cobalt", "saffron", "juniper",
    "glacier", "prairie", "thistle", "lantern", "marble", "nectar", "pepper",
    "raven",  "sierra", "tundra", "velvet", "walnut", "yonder", "zephyr",
    "basil",  "cedar",  "delta",  "fjord",  "garnet"};

constexpr std::array<std::string_view, 16> kNames = {
    "lyda", "kasey", "ronny", "ana",   "marcus", "ilse", "tomas", "dara",
    "jin",  "olga",  "pavel", "sunny", "wren",   "yuki", "zora",  "bram"};

std::uint64_t name_hash(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

Rng task_rng(std::string_view task, std::uint64_t seed) {
  return Rng(derive_seed({name_hash(task), seed}));
}

std::string random_token(Rng& rng, std::size_t length) {
  static constexpr std::string_view kAlnum =
      "ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz23456789";
  std::string out;
  for (std::size_t i = 0; i < length; ++i) out += kAlnum[rng.uniform(kAlnum.size())];
  return out;
}

std::vector<std::string> distinct_words(Rng& rng, std::size_t n) {
  std::vector<std::string> pool(kWords.begin(), kWords.end());
  for (std::size_t i = 0; i < n; ++i) {
    std::swap(pool[i], pool[i + rng.uniform(pool.size() - i)]);
  }
  pool.resize(n);
  return pool;
}

std::string dquote(const std::string& s) { return "\"" + s + "\""; }

// <div id="wrap"><div id="query">instruction</div><div id="area"></div></div>
NodeId scaffold(HtmlDocument& doc, const std::string& instruction) {
  NodeId wrap = doc.append_element(doc.root(), "div", {{"id", "wrap"}});
  NodeId query = doc.append_element(wrap, "div", {{"id", "query"}});
  doc.append_text(query, instruction);
  return doc.append_element(wrap, "div", {{"id", "area"}});
}

NodeId add_text_element(HtmlDocument& doc, NodeId parent, std::string tag,
                        std::vector<Attribute> attrs, std::string text) {
  NodeId id = doc.append_element(parent, std::move(tag), std::move(attrs));
  doc.append_text(id, std::move(text));
  return id;
}

std::optional<NodeId> by_id(const HtmlDocument& doc, std::string_view id) {
  auto found = find_by_attr(doc, "id", id);
  if (found.empty()) return std::nullopt;
  return found.front();
}

std::string value_of(const HtmlDocument& doc, NodeId id) {
  return doc.node(id).attribute("value").value_or("");
}

std::string value_by_id(const HtmlDocument& doc, std::string_view id) {
  auto node = by_id(doc, id);
  return node ? value_of(doc, *node) : std::string();
}

std::string text_of(const HtmlDocument& doc, NodeId id) {
  return std::string(trim(inner_text(doc, id)));
}

std::vector<std::string> quoted_values(const std::string& instruction) {
  std::vector<std::string> out;
  static const std::regex kQuoted("\"([^\"]*)\"");
  for (auto it = std::sregex_iterator(instruction.begin(), instruction.end(), kQuoted);
       it != std::sregex_iterator(); ++it) {
    out.push_back((*it)[1]);
  }
  return out;
}

Action click_node(const HtmlDocument& doc, NodeId id) {
  return Action::click(element_ref(doc, id).value_or(1));
}

Action type_node(const HtmlDocument& doc, NodeId id, std::string text) {
  return Action::type(element_ref(doc, id).value_or(1), std::move(text));
}

std::optional<NodeId> first_tag(const HtmlDocument& doc, std::string_view tag) {
  for (NodeId id : doc.elements()) {
    if (doc.node(id).tag == tag) return id;
  }
  return std::nullopt;
}

TriggerFn tag_is(std::string tag) {
  return [tag](const HtmlDocument& doc, NodeId id) { return doc.node(id).tag == tag; };
}

TriggerFn id_is(std::string value) {
  return [value](const HtmlDocument& doc, NodeId id) {
    return doc.node(id).attribute("id") == value;
  };
}

GeneratedPage finish_page(HtmlDocument doc, std::string instruction,
                          std::vector<Transition> transitions, SuccessFn success) {
  auto rules = std::make_shared<PageRules>();
  rules->transitions = std::move(transitions);
  rules->success = std::move(success);
  return GeneratedPage{assign_refs(std::move(doc)), std::move(instruction),
                       std::move(rules)};
}

// --- click-button -------------------------------------------------------

GeneratedPage click_button_page(std::uint64_t seed) {
  Rng rng = task_rng("click-button", seed);
  std::size_t n = 2 + rng.uniform(4);
  std::vector<std::string> words = distinct_words(rng, n);
  std::string target = words[rng.uniform(n)];
  std::string instruction = "Click on the " + dquote(target) + " button.";
  HtmlDocument doc;
  NodeId area = scaffold(doc, instruction);
  for (const auto& w : words) add_text_element(doc, area, "button", {{"class", "btn"}}, w);
  return finish_page(
      std::move(doc), instruction, {{tag_is("button"), Transition::Effect::Submit, {}}},
      [target](const EnvState& s) {
        return s.submitted && s.last_trigger && text_of(s.doc, *s.last_trigger) == target;
      });
}

Action click_button_oracle(const std::string& instruction, const HtmlDocument& doc) {
  auto values = quoted_values(instruction);
  for (NodeId id : doc.elements()) {
    if (doc.node(id).tag == "button" && !values.empty() && text_of(doc, id) == values[0]) {
      return click_node(doc, id);
    }
  }
  return Action::click(1);
}

// --- click-checkboxes ---------------------------------------------------

GeneratedPage click_checkboxes_page(std::uint64_t seed) {
  Rng rng = task_rng("click-checkboxes", seed);
  std::size_t n = 3 + rng.uniform(4);
  std::vector<std::string> words = distinct_words(rng, n);
  std::vector<std::string> targets;
  for (const auto& w : words) {
    if (rng.coin()) targets.push_back(w);
  }
  if (targets.empty()) targets.push_back(words[rng.uniform(n)]);

  std::string instruction = "Select words ";
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (i > 0) instruction += ", ";
    instruction += dquote(targets[i]);
  }
  instruction += " and click Submit.";

  HtmlDocument doc;
  NodeId area = scaffold(doc, instruction);
  NodeId boxes = doc.append_element(area, "div", {{"id", "boxes"}});
  for (std::size_t i = 0; i < n; ++i) {
    NodeId label = doc.append_element(boxes, "label");
    doc.append_element(label, "input",
                       {{"type", "checkbox"}, {"id", "ch" + std::to_string(i)}});
    doc.append_text(label, words[i]);
    doc.append_element(boxes, "br");
  }
  add_text_element(doc, area, "button", {{"id", "subbtn"}}, "Submit");

  std::set<std::string> wanted(targets.begin(), targets.end());
  return finish_page(
      std::move(doc), instruction, {{id_is("subbtn"), Transition::Effect::Submit, {}}},
      [wanted, n](const EnvState& s) {
        if (!s.submitted) return false;
        for (std::size_t i = 0; i < n; ++i) {
          auto box = by_id(s.doc, "ch" + std::to_string(i));
          if (!box) return false;
          bool checked = s.doc.node(*box).has_attribute("checked");
          bool want = wanted.count(text_of(s.doc, *s.doc.node(*box).parent)) > 0;
          if (checked != want) return false;
        }
        return true;
      });
}

Action click_checkboxes_oracle(const std::string& instruction, const HtmlDocument& doc) {
  auto values = quoted_values(instruction);
  std::set<std::string> wanted(values.begin(), values.end());
  for (NodeId id : doc.elements()) {
    const HtmlNode& n = doc.node(id);
    if (n.tag != "input" || n.attribute("type") != "checkbox") continue;
    bool want = wanted.count(text_of(doc, *n.parent)) > 0;
    if (n.has_attribute("checked") != want) return click_node(doc, id);
  }
  if (auto submit = by_id(doc, "subbtn")) return click_node(doc, *submit);
  return Action::click(1);
}

// --- enter-text ---------------------------------------------------------

GeneratedPage enter_text_page(std::uint64_t seed) {
  Rng rng = task_rng("enter-text", seed);
  std::string word = std::string(kWords[rng.uniform(kWords.size())]);
  if (rng.coin()) word += random_token(rng, 2);
  std::string instruction =
      "Enter " + dquote(word) + " into the text field and press Submit.";
  HtmlDocument doc;
  NodeId area = scaffold(doc, instruction);
  NodeId form = doc.append_element(area, "div", {{"id", "form"}});
  doc.append_element(form, "input", {{"type", "text"}, {"id", "tt"}});
  add_text_element(doc, form, "button", {{"id", "subbtn"}}, "Submit");
  return finish_page(std::move(doc), instruction,
                     {{id_is("subbtn"), Transition::Effect::Submit, {}}},
                     [word](const EnvState& s) {
                       return s.submitted && value_by_id(s.doc, "tt") == word;
                     });
}

Action enter_text_oracle(const std::string& instruction, const HtmlDocument& doc) {
  auto values = quoted_values(instruction);
  std::string word = values.empty() ? "" : values[0];
  auto input = by_id(doc, "tt");
  if (input && value_of(doc, *input) != word) return type_node(doc, *input, word);
  if (auto submit = by_id(doc, "subbtn")) return click_node(doc, *submit);
  return Action::click(1);
}

// --- login-user ---------------------------------------------------------

GeneratedPage login_user_page(std::uint64_t seed) {
  Rng rng = task_rng("login-user", seed);
  std::string username(kNames[rng.uniform(kNames.size())]);
  std::string password = random_token(rng, 4);
  std::string instruction = "Enter the username " + dquote(username) +
                            " and the password " + dquote(password) +
                            " into the text fields and press login.";
  HtmlDocument doc;
  NodeId area = scaffold(doc, instruction);
  NodeId form = doc.append_element(area, "div", {{"id", "form"}});
  NodeId p1 = doc.append_element(form, "p");
  add_text_element(doc, p1, "label", {{"class", "bold"}}, "Username");
  doc.append_element(p1, "input", {{"type", "text"}, {"id", "username"}});
  NodeId p2 = doc.append_element(form, "p");
  add_text_element(doc, p2, "label", {{"class", "bold"}}, "Password");
  doc.append_element(p2, "input", {{"type", "password"}, {"id", "password"}});
  add_text_element(doc, form, "button", {{"class", "secondary-action"}}, "Login");
  return finish_page(std::move(doc), instruction,
                     {{tag_is("button"), Transition::Effect::Submit, {}}},
                     [username, password](const EnvState& s) {
                       return s.submitted && value_by_id(s.doc, "username") == username &&
                              value_by_id(s.doc, "password") == password;
                     });
}

Action login_user_oracle(const std::string& instruction, const HtmlDocument& doc) {
  auto values = quoted_values(instruction);
  if (values.size() >= 2) {
    auto user = by_id(doc, "username");
    if (user && value_of(doc, *user) != values[0]) return type_node(doc, *user, values[0]);
    auto pass = by_id(doc, "password");
    if (pass && value_of(doc, *pass) != values[1]) return type_node(doc, *pass, values[1]);
  }
  if (auto button = first_tag(doc, "button")) return click_node(doc, *button);
  return Action::click(1);
}

// --- multi-layouts ------------------------------------------------------

struct FieldSpec {
  std::string_view label;
  std::string_view kind;
};

constexpr std::array<FieldSpec, 6> kFields = {{{"First name", "name"},
                                               {"Last name", "name"},
                                               {"Email", "email"},
                                               {"Username", "name"},
                                               {"Password", "token"},
                                               {"Phone", "phone"}}};

std::string field_value(Rng& rng, std::string_view kind) {
  if (kind == "email") {
    return std::string(kNames[rng.uniform(kNames.size())]) + "@" +
           std::string(kWords[rng.uniform(kWords.size())]) + ".com";
  }
  if (kind == "phone") {
    std::string out;
    for (int i = 0; i < 7; ++i) out += static_cast<char>('0' + rng.uniform(10));
    return out;
  }
  if (kind == "token") return random_token(rng, 5);
  return std::string(kNames[rng.uniform(kNames.size())]);
}

GeneratedPage multi_layouts_page(std::uint64_t seed) {
  Rng rng = task_rng("multi-layouts", seed);
  std::vector<std::size_t> order(kFields.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    std::swap(order[i], order[i + rng.uniform(order.size() - i)]);
  }
  order.resize(3);

  struct Field {
    std::string label;
    std::string id;
    std::string value;
  };
  std::vector<Field> fields;
  for (std::size_t idx : order) {
    fields.push_back({std::string(kFields[idx].label), "fld-" + random_token(rng, 4),
                      field_value(rng, kFields[idx].kind)});
  }
  static constexpr std::array<std::string_view, 3> kButtons = {"Submit", "Next", "Done"};
  std::string button(kButtons[rng.uniform(kButtons.size())]);
  std::size_t layout = rng.uniform(3);
  bool button_first = rng.coin();

  std::string instruction = "Enter ";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) instruction += ", ";
    instruction += dquote(fields[i].value) + " as " + ascii_lower(fields[i].label);
  }
  instruction += " and press " + button + ".";

  // Field display order is shuffled independently of the instruction order.
  std::vector<std::size_t> display = {0, 1, 2};
  for (std::size_t i = 0; i + 1 < display.size(); ++i) {
    std::swap(display[i], display[i + rng.uniform(display.size() - i)]);
  }

  HtmlDocument doc;
  NodeId area = scaffold(doc, instruction);
  NodeId form = doc.append_element(area, "form", {{"id", "form"}});
  auto add_button = [&] {
    add_text_element(doc, form, "button", {{"type", "button"}, {"id", "go"}}, button);
  };
  if (button_first) add_button();
  NodeId container = form;
  if (layout == 1) container = doc.append_element(form, "table");
  if (layout == 2) container = doc.append_element(form, "ul");
  for (std::size_t d : display) {
    const Field& f = fields[d];
    std::vector<Attribute> label_attrs = {{"for", f.id}};
    std::vector<Attribute> input_attrs = {{"type", "text"}, {"id", f.id}};
    if (layout == 0) {
      NodeId row = doc.append_element(container, "div", {{"class", "row"}});
      add_text_element(doc, row, "label", label_attrs, f.label);
      doc.append_element(row, "input", input_attrs);
    } else if (layout == 1) {
      NodeId tr = doc.append_element(container, "tr");
      NodeId td1 = doc.append_element(tr, "td");
      add_text_element(doc, td1, "label", label_attrs, f.label);
      NodeId td2 = doc.append_element(tr, "td");
      doc.append_element(td2, "input", input_attrs);
    } else {
      NodeId li = doc.append_element(container, "li");
      add_text_element(doc, li, "label", label_attrs, f.label);
      doc.append_element(li, "input", input_attrs);
    }
  }
  if (!button_first) add_button();

  return finish_page(std::move(doc), instruction,
                     {{id_is("go"), Transition::Effect::Submit, {}}},
                     [fields](const EnvState& s) {
                       if (!s.submitted) return false;
                       for (const auto& f : fields) {
                         if (value_by_id(s.doc, f.id) != f.value) return false;
                       }
                       return true;
                     });
}

Action multi_layouts_oracle(const std::string& instruction, const HtmlDocument& doc) {
  static const std::regex kPair("\"([^\"]*)\" as ([A-Za-z ]+?)(?=, | and press)");
  for (auto it = std::sregex_iterator(instruction.begin(), instruction.end(), kPair);
       it != std::sregex_iterator(); ++it) {
    const std::string value = (*it)[1];
    const std::string field = (*it)[2];
    for (NodeId id : doc.elements()) {
      const HtmlNode& n = doc.node(id);
      if (n.tag != "label" || ascii_lower(text_of(doc, id)) != field) continue;
      auto input = by_id(doc, n.attribute("for").value_or(""));
      if (input && value_of(doc, *input) != value) return type_node(doc, *input, value);
    }
  }
  if (auto button = first_tag(doc, "button")) return click_node(doc, *button);
  return Action::click(1);
}

std::vector<TaskSpec> make_tasks() {
  return {
      {"click-button", 5, click_button_page, click_button_oracle},
      {"click-checkboxes", 12, click_checkboxes_page, click_checkboxes_oracle},
      {"enter-text", 6, enter_text_page, enter_text_oracle},
      {"login-user", 8, login_user_page, login_user_oracle},
      {"multi-layouts", 10, multi_layouts_page, multi_layouts_oracle},
  };
}

bool is_text_entry(const HtmlNode& n) {
  if (n.tag == "textarea") return true;
  if (n.tag != "input") return false;
  std::string type = ascii_lower(n.attribute("type").value_or("text"));
  static const std::set<std::string> kNonText = {"checkbox", "radio", "submit",
                                                 "button",   "reset", "image",
                                                 "file",     "hidden"};
  return kNonText.count(type) == 0;
}

}  // namespace

const std::vector<TaskSpec>& builtin_tasks() {
  static const std::vector<TaskSpec> tasks = make_tasks();
  return tasks;
}

const TaskSpec& find_task(const std::string& name) {
  for (const auto& t : builtin_tasks()) {
    if (t.name == name) return t;
  }
  throw UnknownTask("unknown task '" + name + "'");
}

std::vector<std::string> task_names() {
  std::vector<std::string> out;
  for (const auto& t : builtin_tasks()) out.push_back(t.name);
  return out;
}

EnvState reset(const TaskSpec& task, std::uint64_t seed) {
  GeneratedPage page = task.generate(seed);
  EnvState state;
  state.task = task.name;
  state.doc = assign_refs(std::move(page.doc));
  state.instruction = std::move(page.instruction);
  state.max_steps = task.max_steps;
  state.rules = std::move(page.rules);
  return state;
}

EnvState reset(const std::string& task, std::uint64_t seed) {
  return reset(find_task(task), seed);
}

std::optional<NodeId> apply_to_page(HtmlDocument& doc, const Action& action) {
  std::optional<NodeId> id = find_by_ref(doc, action.ref);
  if (!id) return std::nullopt;
  HtmlNode& n = doc.mutable_node(*id);
  if (action.function == ActionFunction::Click) {
    if (n.tag != "input") return id;
    std::string type = ascii_lower(n.attribute("type").value_or("text"));
    if (type == "checkbox") {
      if (!n.remove_attribute("checked")) n.set_attribute("checked", std::nullopt);
    } else if (type == "radio") {
      std::string group = n.attribute("name").value_or("");
      for (NodeId other : doc.elements()) {
        HtmlNode& o = doc.mutable_node(other);
        if (other != *id && o.tag == "input" && o.attribute("type") == "radio" &&
            o.attribute("name").value_or("") == group) {
          o.remove_attribute("checked");
        }
      }
      doc.mutable_node(*id).set_attribute("checked", std::nullopt);
    }
  } else if (is_text_entry(n)) {
    n.set_attribute("value", action.text.value_or(""));
  }
  return id;
}

EnvState step(EnvState state, const Action& action) {
  if (state.terminal != Outcome::Running) {
    throw EpisodeFinished("episode already finished");
  }
  ++state.step_count;
  state.action_history.push_back(action);
  std::optional<NodeId> hit = apply_to_page(state.doc, action);
  if (hit && action.function == ActionFunction::Click && state.rules) {
    for (const Transition& t : state.rules->transitions) {
      if (!t.trigger(state.doc, *hit)) continue;
      if (t.effect == Transition::Effect::Submit) {
        state.submitted = true;
        state.last_trigger = hit;
      } else if (t.next_page) {
        state.doc = assign_refs(t.next_page(state.doc));
      }
      break;
    }
  }
  if (state.rules && state.rules->success && state.rules->success(state)) {
    state.terminal = Outcome::Success;
  } else if (state.submitted || state.step_count >= state.max_steps) {
    state.terminal = Outcome::Failure;
  }
  return state;
}

EnvState noop_step(EnvState state) {
  if (state.terminal != Outcome::Running) {
    throw EpisodeFinished("episode already finished");
  }
  ++state.step_count;
  if (state.step_count >= state.max_steps) state.terminal = Outcome::Failure;
  return state;
}

std::string render(const EnvState& state) {
  return serialize(state.doc, SerializeOptions{.emit_refs = true});
}

EpisodeRecord run_episode(const TaskSpec& task, std::uint64_t seed, Model& policy,
                          RunOptions options) {
  EpisodeRecord record;
  record.task = task.name;
  record.seed = seed;
  EnvState state = reset(task, seed);
  while (state.terminal == Outcome::Running) {
    NavigationStep tuple{state.action_history, state.instruction, render(state), {}};
    ModelRequest request;
    request.input = encode_navigation_input(tuple);
    request.max_output_tokens = options.max_output_tokens;
    request.protected_prefix = request.input.size() - tuple.html.size();
    Generation output = policy.generate(request);
    Action action;
    try {
      action = parse_action(output.text);
    } catch (const ActionParseError& e) {
      ++record.parse_errors[std::string(to_string(e.kind()))];
      state = noop_step(std::move(state));
      continue;
    }
    tuple.action = action;
    record.steps.push_back(std::move(tuple));
    state = step(std::move(state), action);
  }
  record.outcome = state.terminal;
  record.step_count = state.step_count;
  return record;
}

Generation ScriptedOracleModel::generate(const ModelRequest& request) {
  NavigationInput in = decode_navigation_input(request.input);
  HtmlDocument doc = parse_html(in.html);
  return {encode_action(task_->oracle(in.instruction, doc)), false};
}

std::vector<NavigationStep> demos_to_training_tuples(
    const std::vector<EpisodeRecord>& episodes, bool with_history) {
  std::vector<NavigationStep> out;
  for (const auto& ep : episodes) {
    for (const auto& s : ep.steps) {
      out.push_back(s);
      if (!with_history) out.back().action_history.clear();
    }
  }
  return out;
}

double success_rate_pct(const std::vector<EpisodeRecord>& episodes) {
  if (episodes.empty()) return 0.0;
  std::size_t wins = std::count_if(episodes.begin(), episodes.end(), [](const auto& e) {
    return e.outcome == Outcome::Success;
  });
  return 100.0 * static_cast<double>(wins) / static_cast<double>(episodes.size());
}

void to_json(nlohmann::json& j, const EpisodeRecord& r) {
  j = nlohmann::json{{"task", r.task},
                     {"seed", r.seed},
                     {"steps", r.steps},
                     {"outcome", std::string(to_string(r.outcome))},
                     {"step_count", r.step_count},
                     {"parse_errors", r.parse_errors}};
}

void from_json(const nlohmann::json& j, EpisodeRecord& r) {
  r.task = j.at("task").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.steps = j.at("steps").get<std::vector<NavigationStep>>();
  std::string outcome = j.at("outcome").get<std::string>();
  r.outcome = outcome == "success" ? Outcome::Success : Outcome::Failure;
  r.step_count = j.value("step_count", static_cast<int>(r.steps.size()));
  r.parse_errors = j.value("parse_errors", std::map<std::string, int>{});
}

}  // namespace htmlu
