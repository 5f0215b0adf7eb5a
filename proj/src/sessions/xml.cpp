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

#include "lagsim/sessions/xml.hpp"

#include <boost/property_tree/detail/rapidxml.hpp>

#include <algorithm>
#include <charconv>
#include <optional>
#include <string>
#include <vector>

#include "lagsim/util/error.hpp"

namespace lagsim::sessions {
namespace {

namespace rx = boost::property_tree::detail::rapidxml;
using Node = rx::xml_node<char>;

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string text_of(const Node* node) {
  std::string out;
  for (const Node* c = node->first_node(); c; c = c->next_sibling()) {
    if (c->type() == rx::node_data || c->type() == rx::node_cdata)
      out.append(c->value(), c->value_size());
  }
  return std::string(trim(out));
}

std::optional<std::string> attr(const Node* node, const char* name) {
  if (const auto* a = node->first_attribute(name)) return std::string(trim({a->value(), a->value_size()}));
  return std::nullopt;
}

std::optional<std::string> child_text(const Node* node, const char* name) {
  if (const Node* c = node->first_node(name)) return text_of(c);
  return std::nullopt;
}

std::string element(const Node* node) { return std::string(node->name(), node->name_size()); }

double to_double(const std::string& s, const Node* node, const char* what) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw SchemaError(element(node) + ": attribute '" + what + "' is not a number: '" + s + "'");
  return v;
}

int to_int(const std::string& s, const Node* node, const char* what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw SchemaError(element(node) + ": '" + what + "' is not an integer: '" + s + "'");
  return v;
}

std::string required_attr(const Node* node, const char* name) {
  auto v = attr(node, name);
  if (!v) throw SchemaError(element(node) + ": missing attribute '" + name + "'");
  return *v;
}

std::optional<std::string> docid_of(const Node* node) {
  for (const char* name : {"clueweb12id", "docno", "docid", "clueweb09id"}) {
    if (auto v = child_text(node, name); v && !v->empty()) return v;
  }
  if (auto v = attr(node, "docid"); v && !v->empty()) return v;
  return std::nullopt;
}

ResultEntry parse_result(const Node* node) {
  ResultEntry r;
  r.rank = to_int(required_attr(node, "rank"), node, "rank");
  r.url = child_text(node, "url").value_or("");
  auto id = docid_of(node);
  if (!id) throw SchemaError("result rank=" + std::to_string(r.rank) + ": missing docid");
  r.docid = *id;
  r.title = child_text(node, "title");
  r.snippet = child_text(node, "snippet");
  return r;
}

Click parse_click(const Node* node, const Interaction& owner) {
  Click c;
  c.starttime_s = owner.starttime_s;
  if (auto s = attr(node, "starttime")) c.starttime_s = to_double(*s, node, "starttime");
  if (auto e = attr(node, "endtime")) c.endtime_s = to_double(*e, node, "endtime");
  if (auto id = docid_of(node)) {
    c.docid = *id;
    return c;
  }
  std::optional<std::string> rank = child_text(node, "rank");
  if (!rank) rank = attr(node, "rank");
  if (rank) {
    const int want = to_int(*rank, node, "rank");
    for (const ResultEntry& r : owner.results) {
      if (r.rank == want) {
        c.docid = r.docid;
        return c;
      }
    }
    throw SchemaError("click: rank " + *rank + " is not among the results of interaction " +
                      std::to_string(owner.num));
  }
  throw SchemaError("click: needs a docid or a rank");
}

Interaction parse_interaction(const Node* node) {
  Interaction it;
  it.num = to_int(required_attr(node, "num"), node, "num");
  it.starttime_s = to_double(required_attr(node, "starttime"), node, "starttime");
  it.query = child_text(node, "query").value_or("");
  if (const Node* results = node->first_node("results")) {
    for (const Node* r = results->first_node("result"); r; r = r->next_sibling("result"))
      it.results.push_back(parse_result(r));
  }
  std::stable_sort(it.results.begin(), it.results.end(),
                   [](const ResultEntry& a, const ResultEntry& b) { return a.rank < b.rank; });
  for (const char* group : {"clicked", "clicks"}) {
    for (const Node* g = node->first_node(group); g; g = g->next_sibling(group)) {
      for (const Node* c = g->first_node("click"); c; c = c->next_sibling("click"))
        it.clicks.push_back(parse_click(c, it));
    }
  }
  std::stable_sort(it.clicks.begin(), it.clicks.end(),
                   [](const Click& a, const Click& b) { return a.starttime_s < b.starttime_s; });
  return it;
}

std::optional<Session> parse_session(const Node* node) {
  Session s;
  std::optional<std::string> id = attr(node, "num");
  if (!id) id = attr(node, "id");
  if (!id) id = attr(node, "sessionid");
  if (!id) throw SchemaError("session: missing attribute 'num'");
  s.id = *id;

  std::vector<std::optional<std::string>> types;
  for (const Node* c = node->first_node("interaction"); c; c = c->next_sibling("interaction")) {
    s.interactions.push_back(parse_interaction(c));
    types.push_back(attr(c, "type"));
  }
  if (const Node* cq = node->first_node("currentquery")) {
    Interaction it;
    int last_num = 0;
    double last_time = 0.0;
    for (const Interaction& prev : s.interactions) {
      last_num = std::max(last_num, prev.num);
      last_time = std::max(last_time, prev.starttime_s);
    }
    it.num = last_num + 1;
    it.starttime_s = last_time;
    if (auto t = attr(cq, "starttime")) it.starttime_s = to_double(*t, cq, "starttime");
    it.query = child_text(cq, "query").value_or("");
    s.interactions.push_back(std::move(it));
    types.push_back(std::nullopt);
  }
  if (s.interactions.empty()) return std::nullopt;

  std::vector<std::size_t> order(s.interactions.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return s.interactions[a].starttime_s < s.interactions[b].starttime_s;
  });
  std::vector<Interaction> sorted;
  sorted.reserve(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    Interaction it = std::move(s.interactions[order[pos]]);
    const auto& type = types[order[pos]];
    if (type == "initial")
      it.kind = InteractionKind::Initial;
    else if (type == "reformulate")
      it.kind = InteractionKind::Reformulate;
    else
      it.kind = pos == 0 ? InteractionKind::Initial : InteractionKind::Reformulate;
    sorted.push_back(std::move(it));
  }
  s.interactions = std::move(sorted);
  return s;
}

void collect_sessions(const Node* node, SessionLog& log) {
  for (const Node* c = node->first_node(); c; c = c->next_sibling()) {
    if (c->type() != rx::node_element) continue;
    if (element(c) == "session") {
      if (auto s = parse_session(c)) log.sessions.push_back(std::move(*s));
    } else {
      collect_sessions(c, log);
    }
  }
}

}  // namespace

SessionLog parse_xml_log(std::string_view bytes) {
  std::vector<char> buf(bytes.begin(), bytes.end());
  buf.push_back('\0');
  rx::xml_document<char> doc;
  try {
    doc.parse<rx::parse_validate_closing_tags>(buf.data());
  } catch (const rx::parse_error& e) {
    const char* where = e.where<char>();
    std::size_t line = 1, column = 1;
    if (where && where >= buf.data() && where <= buf.data() + bytes.size()) {
      // rapidxml writes terminators into the buffer while parsing, so count
      // against the original bytes.
      const std::size_t offset = static_cast<std::size_t>(where - buf.data());
      for (std::size_t i = 0; i < offset; ++i) {
        if (bytes[i] == '\n') {
          ++line;
          column = 1;
        } else {
          ++column;
        }
      }
    }
    throw ParseError(std::string("malformed XML: ") + e.what(), line, column);
  }
  SessionLog log;
  collect_sessions(&doc, log);
  return log;
}

}  // namespace lagsim::sessions
