// Copyright 2026 The Newsbot Authors.
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

#ifndef NEWSBOT_ERROR_H_
#define NEWSBOT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace newsbot {

enum class ErrorKind {
  kParse,        // malformed input record or file
  kValidation,   // well-formed input violating a domain invariant
  kSyntax,       // template source does not match the grammar
  kRender,       // template evaluation failed
  kLookup,       // missing key in a keyed collection
  kContract,     // a pluggable component broke its interface contract
  kIntegrity,    // placeholders lost or duplicated across translation
  kNumeric,      // non-finite value in a numeric computation
  kTraining,     // training diverged
  kShape,        // tensor or layer dimensions do not chain
  kUsage,        // invalid command-line or configuration value
  kIo,           // file could not be read or written
};

std::string_view ErrorKindName(ErrorKind kind);

// All library failures are reported through this exception type. The kind
// lets callers (notably the CLI) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace newsbot

#endif  // NEWSBOT_ERROR_H_
