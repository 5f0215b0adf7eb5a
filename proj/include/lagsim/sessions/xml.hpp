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

#include <string_view>

#include "lagsim/sessions/log.hpp"

namespace lagsim::sessions {

/// Parses a Session Track style XML log.
///
/// Every <session> element anywhere in the document is read; elements the
/// parser does not know are skipped. Interactions need `num` and `starttime`
/// attributes, results need `rank`; a missing one raises SchemaError naming the
/// element. Results take their docid from <clueweb12id>, <docno> or <docid>.
/// Clicks are matched by docid, falling back to the clicked rank within the
/// same interaction. A trailing <currentquery> becomes a final interaction
/// without results.
///
/// Throws ParseError (with line and column) on malformed XML.
SessionLog parse_xml_log(std::string_view bytes);

}  // namespace lagsim::sessions
