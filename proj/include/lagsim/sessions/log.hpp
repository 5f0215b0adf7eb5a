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

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lagsim::sessions {

struct ResultEntry {
  int rank = 0;
  std::string url;
  std::string docid;
  std::optional<std::string> title;
  std::optional<std::string> snippet;

  bool operator==(const ResultEntry&) const = default;
};

struct Click {
  std::string docid;
  double starttime_s = 0.0;
  std::optional<double> endtime_s;

  /// Last logged instant of the click: its end when known, else its start.
  double last_time() const { return endtime_s.value_or(starttime_s); }

  bool operator==(const Click&) const = default;
};

enum class InteractionKind { Initial, Reformulate };

const char* to_string(InteractionKind kind);
InteractionKind interaction_kind_from_string(const std::string& s);

struct Interaction {
  int num = 0;
  /// Seconds since the user began considering the search problem, which is
  /// not necessarily when the first query was issued.
  double starttime_s = 0.0;
  InteractionKind kind = InteractionKind::Initial;
  std::string query;
  std::vector<ResultEntry> results;
  std::vector<Click> clicks;

  bool operator==(const Interaction&) const = default;
};

struct Session {
  std::string id;
  std::vector<Interaction> interactions;

  bool operator==(const Session&) const = default;
};

struct SessionLog {
  std::vector<Session> sessions;
  std::string source;

  bool operator==(const SessionLog&) const = default;
};

/// Structural problems found by validate(); empty means the log satisfies
/// every invariant.
std::vector<std::string> validate(const SessionLog& log);

/// Session length: the latest interaction start, click start or click end.
/// The session ends at its last logged timestamp (no trailing dwell).
double session_duration(const Session& session);

struct UniqueFetches {
  std::size_t unique_queries = 0;
  std::size_t unique_clicked_pages = 0;
  /// Union of result docids over the first occurrence of each distinct query.
  std::set<std::string> serp_linked_pages;
};

/// What a Mars client actually has to fetch when each distinct query string
/// and each distinct clicked docid is retrieved only once.
UniqueFetches unique_fetches(const Session& session);

/// Pages delivered to an Earth browser, which caches nothing: one per
/// interaction (its SERP) plus one per click.
std::size_t earth_page_count(const Session& session);

std::size_t total_clicks(const Session& session);

}  // namespace lagsim::sessions
