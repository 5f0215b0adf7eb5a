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

#include <string>
#include <string_view>

#include "lagsim/sessions/log.hpp"

namespace lagsim::sessions {

inline constexpr int kCanonicalVersion = 1;
inline constexpr std::string_view kCanonicalFormat = "lagsim.sessionlog";

/// Canonical UTF-8 JSON form. Keys are emitted in sorted order and numbers in
/// shortest round-trip form, so equal logs serialize to identical bytes.
std::string write_canonical(const SessionLog& log);

/// Throws ParseError on bad JSON, SchemaError on a missing field or a format
/// or version mismatch.
SessionLog read_canonical(std::string_view bytes);

}  // namespace lagsim::sessions
