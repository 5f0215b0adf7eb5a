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

namespace lagsim::util {

enum class Delimiter : char { Comma = ',', Tab = '\t' };

/// Minimal delimited-text writer. Fields containing the delimiter, quotes or
/// newlines are quoted RFC 4180 style.
class TableWriter {
 public:
  explicit TableWriter(Delimiter delim = Delimiter::Comma) : delim_(static_cast<char>(delim)) {}

  TableWriter& row(const std::vector<std::string>& fields);
  const std::string& str() const { return out_; }

 private:
  char delim_;
  std::string out_;
};

/// Splits delimited text into rows of fields; understands the quoting that
/// TableWriter produces. Blank lines are skipped.
std::vector<std::vector<std::string>> parse_table(std::string_view text,
                                                  Delimiter delim = Delimiter::Comma);

/// Fixed-point formatting used for all report numbers.
std::string fixed(double value, int decimals = 3);

/// Shortest round-trip representation of a double.
std::string exact(double value);

}  // namespace lagsim::util
