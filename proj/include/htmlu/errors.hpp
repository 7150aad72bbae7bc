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

#ifndef HTMLU_ERRORS_HPP_
#define HTMLU_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace htmlu {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Errors caused by caller input (bad files, unknown names, bad configs).
// The CLI maps these to exit code 1.
class UserError : public Error {
 public:
  using Error::Error;
};

class ParseError : public UserError {
 public:
  using UserError::UserError;
};

class NotAnElement : public UserError {
 public:
  using UserError::UserError;
};

class UnknownNode : public UserError {
 public:
  using UserError::UserError;
};

class IoError : public UserError {
 public:
  using UserError::UserError;
};

}  // namespace htmlu

#endif  // HTMLU_ERRORS_HPP_
