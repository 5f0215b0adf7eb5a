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

#include "lagsim/sessions/log.hpp"

#include <algorithm>
#include <unordered_set>

#include "lagsim/util/error.hpp"

namespace lagsim::sessions {

const char* to_string(InteractionKind kind) {
  return kind == InteractionKind::Initial ? "initial" : "reformulate";
}

InteractionKind interaction_kind_from_string(const std::string& s) {
  if (s == "initial") return InteractionKind::Initial;
  if (s == "reformulate") return InteractionKind::Reformulate;
  throw SchemaError("unknown interaction kind '" + s + "'");
}

std::vector<std::string> validate(const SessionLog& log) {
  std::vector<std::string> problems;
  std::unordered_set<std::string> ids;
  for (const Session& s : log.sessions) {
    const std::string where = "session " + s.id;
    if (!ids.insert(s.id).second) problems.push_back(where + ": duplicate id");
    if (s.interactions.empty()) problems.push_back(where + ": no interactions");
    for (std::size_t i = 0; i < s.interactions.size(); ++i) {
      const Interaction& it = s.interactions[i];
      const std::string iw = where + " interaction " + std::to_string(it.num);
      if (it.num <= 0) problems.push_back(iw + ": num must be positive");
      if (!(it.starttime_s >= 0.0)) problems.push_back(iw + ": negative starttime");
      if (i > 0 && it.starttime_s < s.interactions[i - 1].starttime_s)
        problems.push_back(iw + ": out of order");
      for (std::size_t r = 0; r < it.results.size(); ++r) {
        if (it.results[r].rank != static_cast<int>(r + 1))
          problems.push_back(iw + ": result ranks not 1..n");
        if (it.results[r].docid.empty()) problems.push_back(iw + ": result without docid");
      }
      for (const Click& c : it.clicks) {
        if (c.starttime_s < it.starttime_s) problems.push_back(iw + ": click precedes its query");
        if (c.endtime_s && *c.endtime_s < c.starttime_s)
          problems.push_back(iw + ": click ends before it starts");
      }
    }
  }
  return problems;
}

double session_duration(const Session& session) {
  double end = 0.0;
  for (const Interaction& it : session.interactions) {
    end = std::max(end, it.starttime_s);
    for (const Click& c : it.clicks) end = std::max({end, c.starttime_s, c.last_time()});
  }
  return end;
}

UniqueFetches unique_fetches(const Session& session) {
  UniqueFetches out;
  std::unordered_set<std::string> queries;
  std::unordered_set<std::string> clicked;
  for (const Interaction& it : session.interactions) {
    if (queries.insert(it.query).second) {
      for (const ResultEntry& r : it.results) out.serp_linked_pages.insert(r.docid);
    }
    for (const Click& c : it.clicks) clicked.insert(c.docid);
  }
  out.unique_queries = queries.size();
  out.unique_clicked_pages = clicked.size();
  return out;
}

std::size_t total_clicks(const Session& session) {
  std::size_t n = 0;
  for (const Interaction& it : session.interactions) n += it.clicks.size();
  return n;
}

std::size_t earth_page_count(const Session& session) {
  return session.interactions.size() + total_clicks(session);
}

}  // namespace lagsim::sessions
