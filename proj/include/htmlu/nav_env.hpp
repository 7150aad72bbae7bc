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

// Headless simulated websites in the style of MiniWoB. A page is an
// HtmlDocument with refs assigned; clicks flip checkboxes or fire declared
// triggers, typing sets an input's value attribute. No scripts run.

#ifndef HTMLU_NAV_ENV_HPP_
#define HTMLU_NAV_ENV_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "htmlu/codec.hpp"
#include "htmlu/html.hpp"
#include "htmlu/model_client.hpp"

namespace htmlu {

enum class Outcome { Running, Success, Failure };
std::string_view to_string(Outcome outcome);

struct EnvState;

using TriggerFn = std::function<bool(const HtmlDocument&, NodeId)>;
using PageFn = std::function<HtmlDocument(const HtmlDocument&)>;
using SuccessFn = std::function<bool(const EnvState&)>;

// Clicking an element matched by `trigger` either submits the episode
// (Success iff the task's predicate holds, Failure otherwise) or replaces
// the page with `next_page(current)`.
struct Transition {
  enum class Effect { Submit, Navigate };
  TriggerFn trigger;
  Effect effect = Effect::Submit;
  PageFn next_page;
};

struct PageRules {
  std::vector<Transition> transitions;
  SuccessFn success;
};

struct GeneratedPage {
  HtmlDocument doc;
  std::string instruction;
  std::shared_ptr<const PageRules> rules;
};

struct TaskSpec {
  std::string name;
  int max_steps = 10;
  std::function<GeneratedPage(std::uint64_t seed)> generate;
  // Next action of a scripted expert, computed from the instruction and the
  // visible page alone. Refs are read from node refs or `ref` attributes.
  std::function<Action(const std::string& instruction, const HtmlDocument& doc)>
      oracle;
};

struct EnvState {
  std::string task;
  HtmlDocument doc;  // refs assigned
  std::string instruction;
  std::vector<Action> action_history;
  int step_count = 0;
  int max_steps = 0;
  Outcome terminal = Outcome::Running;
  bool submitted = false;
  std::optional<NodeId> last_trigger;  // element that fired the submit
  std::shared_ptr<const PageRules> rules;
};

class UnknownTask : public UserError {
 public:
  using UserError::UserError;
};

class EpisodeFinished : public UserError {
 public:
  using UserError::UserError;
};

// The five shipped tasks: click-button, click-checkboxes, enter-text,
// login-user, multi-layouts.
const std::vector<TaskSpec>& builtin_tasks();
const TaskSpec& find_task(const std::string& name);
std::vector<std::string> task_names();

EnvState reset(const TaskSpec& task, std::uint64_t seed);
EnvState reset(const std::string& task, std::uint64_t seed);

// Page effect of one action, without episode bookkeeping. Returns the node
// the action resolved to, if any.
std::optional<NodeId> apply_to_page(HtmlDocument& doc, const Action& action);

EnvState step(EnvState state, const Action& action);
// A step that was consumed without a valid action (unparseable output).
EnvState noop_step(EnvState state);

// The page as the model sees it: serialized with ref attributes.
std::string render(const EnvState& state);

// Ref of an element from its numbering or, on re-parsed pages, its `ref`
// attribute.
std::optional<int> element_ref(const HtmlDocument& doc, NodeId id);

struct EpisodeRecord {
  std::string task;
  std::uint64_t seed = 0;
  std::vector<NavigationStep> steps;
  Outcome outcome = Outcome::Failure;
  int step_count = 0;
  std::map<std::string, int> parse_errors;  // ActionErrorKind name -> count
};

struct RunOptions {
  int max_output_tokens = 64;
};

EpisodeRecord run_episode(const TaskSpec& task, std::uint64_t seed,
                          Model& policy, RunOptions options = {});

// Reads the page out of an encoded navigation input and answers with the
// task's scripted expert action.
class ScriptedOracleModel : public Model {
 public:
  explicit ScriptedOracleModel(const TaskSpec& task) : task_(&task) {}
  Generation generate(const ModelRequest& request) override;

 private:
  const TaskSpec* task_;
};

// One training tuple per step; `with_history = false` clears histories.
std::vector<NavigationStep> demos_to_training_tuples(
    const std::vector<EpisodeRecord>& episodes, bool with_history = true);

double success_rate_pct(const std::vector<EpisodeRecord>& episodes);

void to_json(nlohmann::json& j, const EpisodeRecord& r);
void from_json(const nlohmann::json& j, EpisodeRecord& r);

}  // namespace htmlu

#endif  // HTMLU_NAV_ENV_HPP_
