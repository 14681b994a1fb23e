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

#include "newsbot/error.h"

namespace newsbot {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kValidation: return "validation error";
    case ErrorKind::kSyntax: return "syntax error";
    case ErrorKind::kRender: return "render error";
    case ErrorKind::kLookup: return "lookup error";
    case ErrorKind::kContract: return "contract violation";
    case ErrorKind::kIntegrity: return "integrity error";
    case ErrorKind::kNumeric: return "numeric error";
    case ErrorKind::kTraining: return "training error";
    case ErrorKind::kShape: return "invalid shape";
    case ErrorKind::kUsage: return "usage error";
    case ErrorKind::kIo: return "i/o error";
  }
  return "error";
}

}  // namespace newsbot
