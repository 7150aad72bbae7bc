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
// Python bindings. Pages cross the boundary as HTML text and records as
// plain dicts, so nothing here holds on to C++ node handles.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "htmlu/codec.hpp"
#include "htmlu/config.hpp"
#include "htmlu/distill.hpp"
#include "htmlu/errors.hpp"
#include "htmlu/html.hpp"
#include "htmlu/metrics.hpp"
#include "htmlu/nav_env.hpp"
#include "htmlu/snippet.hpp"
#include "htmlu/warc.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null:
      return py::none();
    case json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case json::value_t::number_integer:
      return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned:
      return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float:
      return py::float_(j.get<double>());
    case json::value_t::string:
      return py::str(j.get_ref<const std::string&>());
    case json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(to_py(v));
      return std::move(out);
    }
    case json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it) out[py::str(it.key())] = to_py(it.value());
      return std::move(out);
    }
    default:
      throw htmlu::UserError("unsupported value");
  }
}

json from_py(const py::handle& obj) {
  return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

htmlu::NodeId resolve(const htmlu::HtmlDocument& doc, const std::optional<std::string>& id,
                      const std::optional<int>& ref) {
  if (id.has_value() == ref.has_value()) {
    throw htmlu::UserError("give exactly one of salient_id or salient_ref");
  }
  if (id) {
    auto hits = htmlu::find_by_attr(doc, "id", *id);
    if (hits.empty()) throw htmlu::UserError("no element with id '" + *id + "'");
    return hits.front();
  }
  auto hit = htmlu::find_by_ref(doc, *ref);
  if (!hit) throw htmlu::UserError("no element with ref " + std::to_string(*ref));
  return *hit;
}

std::unique_ptr<htmlu::Model> make_policy(const std::string& policy,
                                          const htmlu::TaskSpec& task,
                                          std::uint64_t seed) {
  if (policy == "oracle") return std::make_unique<htmlu::ScriptedOracleModel>(task);
  if (policy == "random") {
    return std::make_unique<htmlu::RandomActionModel>(
        htmlu::derive_seed({seed, std::hash<std::string>{}(task.name)}));
  }
  throw htmlu::UserError("policy must be 'oracle' or 'random'");
}

}  // namespace

PYBIND11_MODULE(_htmlu, m) {
  m.doc() = "HTML understanding toolkit: snippets, corpora, codecs, metrics.";

  auto error = py::register_exception<htmlu::Error>(m, "Error", PyExc_RuntimeError);
  auto user_error = py::register_exception<htmlu::UserError>(m, "UserError", error.ptr());
  py::register_exception<htmlu::ParseError>(m, "ParseError", user_error.ptr());
  py::register_exception<htmlu::IoError>(m, "IoError", user_error.ptr());
  py::register_exception<htmlu::MalformedWarc>(m, "MalformedWarc", user_error.ptr());
  py::register_exception<htmlu::TransportError>(m, "TransportError", error.ptr());
  static py::exception<htmlu::ActionParseError> action_error(m, "ActionParseError",
                                                             user_error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const htmlu::ActionParseError& e) {
      py::object err = py::handle(action_error.ptr())(e.what());
      err.attr("kind") = std::string(htmlu::to_string(e.kind()));
      PyErr_SetObject(action_error.ptr(), err.ptr());
    }
  });

  // html
  m.def(
      "normalize",
      [](const std::string& html, bool refs) {
        auto doc = htmlu::parse_html(html);
        if (refs) doc = htmlu::assign_refs(std::move(doc));
        return htmlu::serialize(doc, {.emit_refs = refs});
      },
      py::arg("html"), py::arg("refs") = false,
      "Parse and re-serialize, optionally with ref attributes.");
  m.def(
      "element_refs",
      [](const std::string& html) {
        auto doc = htmlu::assign_refs(htmlu::parse_html(html));
        std::vector<std::pair<std::string, int>> out;
        for (auto id : doc.elements()) out.emplace_back(doc.node(id).tag, *doc.node(id).ref);
        return out;
      },
      py::arg("html"), "(tag, ref) for every element in document order.");
  m.def(
      "strip_closing_tags",
      [](const std::string& html) { return htmlu::strip_closing_tags(htmlu::parse_html(html)); },
      py::arg("html"));

  // snippet
  m.def(
      "extract_snippet",
      [](const std::string& html, std::optional<std::string> salient_id,
         std::optional<int> salient_ref, double pct, int height) {
        auto doc = htmlu::assign_refs(htmlu::parse_html(html));
        htmlu::SnippetConfig cfg{pct, height};
        auto snip = htmlu::extract_snippet(doc, resolve(doc, salient_id, salient_ref), cfg);
        return htmlu::serialize(snip.doc);
      },
      py::arg("html"), py::kw_only(), py::arg("salient_id") = py::none(),
      py::arg("salient_ref") = py::none(), py::arg("pct") = 25.0, py::arg("height") = 3);

  // codec
  m.def(
      "encode_action",
      [](const std::string& function, int ref, std::optional<std::string> text) {
        json j{{"function", function}, {"ref", ref}};
        if (text) j["text"] = *text;
        return htmlu::encode_action(j.get<htmlu::Action>());
      },
      py::arg("function"), py::arg("ref"), py::arg("text") = py::none());
  m.def(
      "parse_action",
      [](const std::string& text) { return to_py(json(htmlu::parse_action(text))); },
      py::arg("text"), "Parse model output into {'function', 'ref'[, 'text']}.");
  m.def(
      "encode_navigation_input",
      [](const py::list& history, const std::string& instruction, const std::string& html) {
        htmlu::NavigationStep step;
        step.action_history = from_py(history).get<std::vector<htmlu::Action>>();
        step.instruction = instruction;
        step.html = html;
        return htmlu::encode_navigation_input(step);
      },
      py::arg("history"), py::arg("instruction"), py::arg("html"));
  m.def("categories", [] { return htmlu::builtin_vocabulary().names(); });
  m.def(
      "decode_category",
      [](const std::string& output) {
        auto d = htmlu::decode_category(output, htmlu::builtin_vocabulary());
        return std::make_pair(d.category, d.in_vocabulary);
      },
      py::arg("output"), "(category, in_vocabulary) against the shipped vocabulary.");
  m.def("clean_prompt_example", &htmlu::clean_prompt_example, py::arg("html"));
  m.def(
      "build_fewshot_prompt",
      [](const std::vector<std::pair<std::string, std::string>>& examples,
         const std::string& query) {
        std::vector<htmlu::ClassificationExample> ex;
        for (const auto& [html, cat] : examples) ex.push_back({html, cat});
        return htmlu::build_fewshot_prompt(ex, query, htmlu::builtin_vocabulary());
      },
      py::arg("examples"), py::arg("query_html"));

  // metrics
  m.def("exact_match", &htmlu::exact_match, py::arg("pred"), py::arg("gold"));
  m.def("bleu", &htmlu::bleu, py::arg("preds"), py::arg("golds"));
  m.def(
      "rouge1",
      [](const std::string& pred, const std::string& gold) {
        auto r = htmlu::rouge1(pred, gold);
        return std::make_tuple(r.precision, r.recall, r.f1);
      },
      py::arg("pred"), py::arg("gold"), "(precision, recall, f1)");
  m.def(
      "closest_description",
      [](const std::string& html) { return htmlu::closest_description(std::string_view(html)); },
      py::arg("html"));

  // corpus
  m.def(
      "read_warc",
      [](const std::string& path) {
        htmlu::WarcStats stats;
        std::vector<std::pair<std::string, std::string>> pages;
        {
          py::gil_scoped_release release;
          for (auto& p : htmlu::read_warc_html(path, &stats)) pages.emplace_back(p.url, p.html);
        }
        py::dict s;
        s["records"] = stats.records;
        s["html_pages"] = stats.html_pages;
        s["skipped_non_html"] = stats.skipped_non_html;
        s["malformed"] = stats.malformed;
        return std::make_pair(pages, s);
      },
      py::arg("path"), "([(url, html)], stats) for the HTML responses in a WARC file.");
  m.def(
      "distill",
      [](const std::vector<std::string>& paths, double pct, int height,
         std::size_t max_per_description, std::uint64_t seed, unsigned jobs) {
        htmlu::DistillConfig cfg;
        cfg.max_per_description = max_per_description;
        cfg.rng_seed = seed;
        cfg.jobs = jobs;
        std::vector<htmlu::DescriptionExample> examples;
        htmlu::DistillReport report;
        {
          py::gil_scoped_release release;
          report = htmlu::distill(paths, cfg, {pct, height},
                                  [&](const auto& e) { examples.push_back(e); });
        }
        return std::make_pair(to_py(json(examples)), to_py(json(report)));
      },
      py::arg("paths"), py::kw_only(), py::arg("pct") = 25.0, py::arg("height") = 3,
      py::arg("max_per_description") = 10, py::arg("seed") = 0, py::arg("jobs") = 0,
      "(examples, report) for the given WARC files.");

  // navigation
  m.def("task_names", &htmlu::task_names);
  m.def(
      "run_episode",
      [](const std::string& task, std::uint64_t seed, const std::string& policy) {
        const auto& task_spec = htmlu::find_task(task);
        auto model = make_policy(policy, task_spec, seed);
        return to_py(json(htmlu::run_episode(task_spec, seed, *model)));
      },
      py::arg("task"), py::arg("seed"), py::arg("policy") = "oracle");
}
