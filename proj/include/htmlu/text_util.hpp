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

// Small string helpers shared by the modules.

#ifndef HTMLU_TEXT_UTIL_HPP_
#define HTMLU_TEXT_UTIL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace htmlu {

// Byte offset of the first malformed UTF-8 sequence, if any.
std::optional<std::size_t> first_invalid_utf8(std::string_view s);

// Decodes valid UTF-8 into code points. Precondition: input is valid.
std::vector<char32_t> decode_utf8(std::string_view s);

// ASCII whitespace trim.
std::string_view trim(std::string_view s);

std::string ascii_lower(std::string_view s);

// Lower-cases ASCII and collapses runs of whitespace to one space.
std::string normalize_whitespace_casefold(std::string_view s);

std::vector<std::string> split_whitespace(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace htmlu

#endif  // HTMLU_TEXT_UTIL_HPP_
