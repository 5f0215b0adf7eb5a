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

#include "run.hpp"

#include "lagsim/util/error.hpp"
#include "lagsim/util/io.hpp"

namespace lagsim::cli {

namespace {
constexpr const char* kVersion = "1.0.0";
}

std::string Run::read_input(const std::string& path) {
  std::string bytes = util::read_file(path);
  inputs_[path] = util::sha256_hex(bytes);
  return bytes;
}

void Run::emit(const std::string& name, std::string contents) {
  if (name == "manifest.json") throw Error("output name 'manifest.json' is reserved");
  outputs_[name] = std::move(contents);
}

void Run::commit() {
  nlohmann::json manifest;
  manifest["tool"] = "lagsim";
  manifest["version"] = kVersion;
  manifest["command"] = command_;
  manifest["config"] = config_;
  manifest["seed"] = seed_ ? nlohmann::json(*seed_) : nlohmann::json(nullptr);
  manifest["inputs"] = nlohmann::json::object();
  for (const auto& [path, digest] : inputs_) manifest["inputs"][path] = {{"sha256", digest}};
  manifest["outputs"] = nlohmann::json::object();
  for (const auto& [name, contents] : outputs_) {
    util::write_file_atomic(out_dir_ / name, contents);
    manifest["outputs"][name] = {{"sha256", util::sha256_hex(contents)}, {"bytes", contents.size()}};
  }
  util::write_file_atomic(out_dir_ / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace lagsim::cli
