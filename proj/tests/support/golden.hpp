// Copyright 2026 The lagsim Authors
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

#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>

#include "lagsim/util/io.hpp"

namespace lagsim::testing {

/// Compares `actual` with a pinned file under tests/golden. Set
/// LAGSIM_UPDATE_GOLDEN=1 to (re)write the file instead.
inline bool matches_golden(const std::string& name, const std::string& actual) {
  const std::filesystem::path path = std::filesystem::path(LAGSIM_GOLDEN_DIR) / name;
  if (const char* upd = std::getenv("LAGSIM_UPDATE_GOLDEN"); upd && std::string(upd) == "1") {
    util::write_file_atomic(path, actual);
    return true;
  }
  if (!std::filesystem::exists(path)) return false;
  return util::read_file(path) == actual;
}

}  // namespace lagsim::testing
