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
#include <vector>

namespace lagsim::retrieval {

/// Splits UTF-8 text on non-alphanumeric code points and lowercases each
/// token. Case folding covers Latin-1, Latin Extended-A, Greek and Cyrillic;
/// other scripts pass through unchanged. Invalid UTF-8 acts as a separator.
/// No stemming and no stopwords.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace lagsim::retrieval
