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

#include "lagsim/retrieval/corpus.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lagsim/util/error.hpp"

namespace lagsim::retrieval {
namespace {

using nlohmann::json;

const char* kind_name(Label::Kind k) {
  switch (k) {
    case Label::Kind::Relevant: return "relevant";
    case Label::Kind::Nonrelevant: return "nonrelevant";
    case Label::Kind::Spam: return "spam";
  }
  return "?";
}

Label::Kind kind_from(const std::string& s, std::size_t line) {
  if (s == "relevant") return Label::Kind::Relevant;
  if (s == "nonrelevant") return Label::Kind::Nonrelevant;
  if (s == "spam") return Label::Kind::Spam;
  throw ParseError("unknown label kind '" + s + "'", line, 1);
}

}  // namespace

bool Document::relevant_to(std::string_view topic) const {
  return std::any_of(labels.begin(), labels.end(), [&](const Label& l) {
    return l.kind == Label::Kind::Relevant && l.topic == topic;
  });
}

bool Document::judged_nonrelevant() const {
  return std::any_of(labels.begin(), labels.end(),
                     [](const Label& l) { return l.kind == Label::Kind::Nonrelevant; });
}

bool Document::spam() const {
  return std::any_of(labels.begin(), labels.end(), [](const Label& l) { return l.kind == Label::Kind::Spam; });
}

bool Document::relevant_to_any() const {
  return std::any_of(labels.begin(), labels.end(),
                     [](const Label& l) { return l.kind == Label::Kind::Relevant; });
}

std::size_t whitespace_word_count(std::string_view text) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : text) {
    const bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    if (!ws && !in_word) ++n;
    in_word = !ws;
  }
  return n;
}

Document make_document(std::string docid, std::string text) {
  Document d;
  d.docid = std::move(docid);
  d.word_count = whitespace_word_count(text);
  d.text = std::move(text);
  return d;
}

const Document* Corpus::find(std::string_view docid) const {
  for (const Document& d : documents)
    if (d.docid == docid) return &d;
  return nullptr;
}

const Topic* Corpus::topic(std::string_view id) const {
  for (const Topic& t : topics)
    if (t.id == id) return &t;
  return nullptr;
}

Corpus read_corpus_jsonl(std::string_view text) {
  Corpus corpus;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("corpus: ") + e.what(), line_no, e.byte);
    }
    try {
      const std::string type = j.value("type", "doc");
      if (type == "topic") {
        corpus.topics.push_back(Topic{j.at("id").get<std::string>(), j.value("description", "")});
        continue;
      }
      if (type != "doc") throw ParseError("corpus: unknown record type '" + type + "'", line_no, 1);
      Document d = make_document(j.at("docid").get<std::string>(), j.value("text", ""));
      if (auto it = j.find("labels"); it != j.end()) {
        for (const json& jl : *it)
          d.labels.push_back(Label{kind_from(jl.at("kind").get<std::string>(), line_no),
                                   jl.value("topic", "")});
      }
      if (auto it = j.find("quality"); it != j.end() && !it->is_null()) d.quality = it->get<double>();
      corpus.documents.push_back(std::move(d));
    } catch (const json::exception& e) {
      throw ParseError(std::string("corpus: bad record: ") + e.what(), line_no, 1);
    }
  }
  return corpus;
}

std::string write_corpus_jsonl(const Corpus& corpus) {
  std::string out;
  for (const Topic& t : corpus.topics) {
    json j = {{"type", "topic"}, {"id", t.id}, {"description", t.description}};
    out += j.dump() + "\n";
  }
  for (const Document& d : corpus.documents) {
    json j = {{"type", "doc"}, {"docid", d.docid}, {"text", d.text}};
    if (!d.labels.empty()) {
      json labels = json::array();
      for (const Label& l : d.labels) {
        json jl = {{"kind", kind_name(l.kind)}};
        if (!l.topic.empty()) jl["topic"] = l.topic;
        labels.push_back(std::move(jl));
      }
      j["labels"] = std::move(labels);
    }
    if (d.quality) j["quality"] = *d.quality;
    out += j.dump() + "\n";
  }
  return out;
}

Qrels read_qrels(std::string_view text) {
  Qrels q;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string topic, iter, docid;
    int grade = 0;
    if (!(fields >> topic >> iter >> docid >> grade))
      throw ParseError("qrels: expected 'topic iteration docid grade'", line_no, 1);
    q[topic][docid] = grade;
  }
  return q;
}

std::string write_qrels(const Qrels& qrels) {
  std::string out;
  for (const auto& [topic, docs] : qrels)
    for (const auto& [docid, grade] : docs) out += topic + " 0 " + docid + " " + std::to_string(grade) + "\n";
  return out;
}

Qrels qrels_from_corpus(const Corpus& corpus) {
  Qrels q;
  for (const Topic& t : corpus.topics) q[t.id];
  for (const Document& d : corpus.documents) {
    for (const Label& l : d.labels) {
      if (l.kind == Label::Kind::Relevant) q[l.topic][d.docid] = 1;
      if (l.kind == Label::Kind::Nonrelevant) q[l.topic].emplace(d.docid, 0);
    }
  }
  return q;
}

std::vector<std::string> chronological_prefix(const Corpus& corpus, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw InvalidArgument("fraction must lie in [0, 1]");
  const auto n = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(corpus.documents.size()) - 1e-9));
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n && i < corpus.documents.size(); ++i) out.push_back(corpus.documents[i].docid);
  return out;
}

}  // namespace lagsim::retrieval
