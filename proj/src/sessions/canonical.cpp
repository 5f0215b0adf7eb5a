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

#include "lagsim/sessions/canonical.hpp"

#include <json.hpp>

#include "lagsim/util/error.hpp"

namespace lagsim::sessions {
namespace {

using nlohmann::json;

json to_json(const Interaction& it) {
  json results = json::array();
  for (const ResultEntry& r : it.results) {
    json jr = {{"rank", r.rank}, {"url", r.url}, {"docid", r.docid}};
    if (r.title) jr["title"] = *r.title;
    if (r.snippet) jr["snippet"] = *r.snippet;
    results.push_back(std::move(jr));
  }
  json clicks = json::array();
  for (const Click& c : it.clicks) {
    json jc = {{"docid", c.docid}, {"starttime", c.starttime_s}};
    if (c.endtime_s) jc["endtime"] = *c.endtime_s;
    clicks.push_back(std::move(jc));
  }
  return {{"num", it.num},           {"starttime", it.starttime_s}, {"kind", to_string(it.kind)},
          {"query", it.query},       {"results", std::move(results)},
          {"clicks", std::move(clicks)}};
}

template <class T>
T field(const json& j, const char* key, const char* where) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string(where) + ": missing field '" + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw SchemaError(std::string(where) + ": field '" + key + "' has the wrong type");
  }
}

template <class T>
std::optional<T> optional_field(const json& j, const char* key, const char* where) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return field<T>(j, key, where);
}

Interaction interaction_from_json(const json& j) {
  Interaction it;
  it.num = field<int>(j, "num", "interaction");
  it.starttime_s = field<double>(j, "starttime", "interaction");
  it.kind = interaction_kind_from_string(field<std::string>(j, "kind", "interaction"));
  it.query = field<std::string>(j, "query", "interaction");
  for (const json& jr : field<json>(j, "results", "interaction")) {
    ResultEntry r;
    r.rank = field<int>(jr, "rank", "result");
    r.url = field<std::string>(jr, "url", "result");
    r.docid = field<std::string>(jr, "docid", "result");
    r.title = optional_field<std::string>(jr, "title", "result");
    r.snippet = optional_field<std::string>(jr, "snippet", "result");
    it.results.push_back(std::move(r));
  }
  for (const json& jc : field<json>(j, "clicks", "interaction")) {
    Click c;
    c.docid = field<std::string>(jc, "docid", "click");
    c.starttime_s = field<double>(jc, "starttime", "click");
    c.endtime_s = optional_field<double>(jc, "endtime", "click");
    it.clicks.push_back(std::move(c));
  }
  return it;
}

}  // namespace

std::string write_canonical(const SessionLog& log) {
  json sessions = json::array();
  for (const Session& s : log.sessions) {
    json interactions = json::array();
    for (const Interaction& it : s.interactions) interactions.push_back(to_json(it));
    sessions.push_back({{"id", s.id}, {"interactions", std::move(interactions)}});
  }
  json doc = {{"format", kCanonicalFormat},
              {"version", kCanonicalVersion},
              {"source", log.source},
              {"sessions", std::move(sessions)}};
  return doc.dump(1, '\t') + "\n";
}

SessionLog read_canonical(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("session log: top level must be an object");
  if (doc.contains("format") && doc["format"] != kCanonicalFormat)
    throw SchemaError("session log: unexpected format " + doc["format"].dump());
  const int version = field<int>(doc, "version", "session log");
  if (version != kCanonicalVersion) {
    throw SchemaError("session log: version " + std::to_string(version) + " is not supported (expected " +
                      std::to_string(kCanonicalVersion) + ")");
  }
  SessionLog log;
  log.source = optional_field<std::string>(doc, "source", "session log").value_or("");
  for (const json& js : field<json>(doc, "sessions", "session log")) {
    Session s;
    s.id = field<std::string>(js, "id", "session");
    for (const json& ji : field<json>(js, "interactions", "session"))
      s.interactions.push_back(interaction_from_json(ji));
    log.sessions.push_back(std::move(s));
  }
  return log;
}

}  // namespace lagsim::sessions
