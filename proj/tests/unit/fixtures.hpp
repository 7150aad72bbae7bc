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

#ifndef HTMLU_TESTS_UNIT_FIXTURES_HPP_
#define HTMLU_TESTS_UNIT_FIXTURES_HPP_

#include <string>

#include "htmlu/html.hpp"

namespace htmlu::testing {

// Login form with three top-level divs: two labels, two inputs, a button.
inline constexpr const char* kLoginPage =
    R"(<div><label class="form-label" for="uName">Email Address</label>)"
    R"(<label class="form-label" for="pass">Enter Password:</label></div>)"
    R"(<div><input type="email" id="uName"><input type="password" id="pass">)"
    R"(<span class="hidden">Please enter your password.</span></div>)"
    R"(<div><button type="submit">Sign In</button></div>)";

inline NodeId by_id(const HtmlDocument& doc, const std::string& id) {
  auto hits = find_by_attr(doc, "id", id);
  return hits.at(0);
}

inline std::string data_path(const std::string& name) {
  return std::string(HTMLU_TEST_DATA_DIR) + "/" + name;
}

}  // namespace htmlu::testing

#endif  // HTMLU_TESTS_UNIT_FIXTURES_HPP_
