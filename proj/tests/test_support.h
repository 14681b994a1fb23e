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

#ifndef NEWSBOT_TESTS_TEST_SUPPORT_H_
#define NEWSBOT_TESTS_TEST_SUPPORT_H_

#include <filesystem>
#include <optional>
#include <string>

#include "newsbot/error.h"
#include "newsbot/text_util.h"

namespace newsbot::testing {

inline std::filesystem::path DataDir() { return NEWSBOT_DATA_DIR; }

inline std::string ReadData(const std::string &name) { return ReadFile(DataDir() / name); }

// Runs fn and returns the kind of the newsbot::Error it throws; fails the
// calling check when nothing is thrown.
template <typename Fn>
std::optional<ErrorKind> ThrownKind(Fn &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.kind();
  }
  return std::nullopt;
}

template <typename Fn>
std::string ThrownMessage(Fn &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.what();
  }
  return {};
}

// Fresh directory under the build tree's scratch area.
inline std::filesystem::path ScratchDir(const std::string &name) {
  const std::filesystem::path dir = std::filesystem::path(NEWSBOT_SCRATCH_DIR) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace newsbot::testing

#endif  // NEWSBOT_TESTS_TEST_SUPPORT_H_
