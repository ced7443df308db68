// csasr/manifest.cc

// Copyright 2026  CSASR Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "csasr/manifest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "csasr/common.h"
#include "csasr/textnorm.h"
#include "json.hpp"

namespace csasr {

namespace {
using nlohmann::ordered_json;
}  // namespace

void ValidateRecord(const UtteranceRecord& record, const std::string& where) {
  if (record.id.empty()) {
    throw std::invalid_argument(where + ": record id must be non-empty");
  }
  if (record.lang_tags.has_value()) {
    size_t tokens = SplitTokens(record.text).size();
    if (record.lang_tags->size() != tokens) {
      throw std::invalid_argument(
          where + ": record '" + record.id + "' has " +
          std::to_string(record.lang_tags->size()) + " lang tags for " +
          std::to_string(tokens) + " tokens");
    }
  }
  if (record.duration_s.has_value() && !(*record.duration_s >= 0.0)) {
    throw std::invalid_argument(where + ": record '" + record.id +
                                "' has negative duration");
  }
}

UtteranceRecord RecordFromJsonLine(const std::string& line,
                                   const std::string& where) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const ordered_json::parse_error& e) {
    throw std::invalid_argument(where + ": malformed JSON: " + e.what());
  }
  if (!j.is_object()) {
    throw std::invalid_argument(where + ": expected a JSON object");
  }
  UtteranceRecord record;
  try {
    record.id = j.at("id").get<std::string>();
    if (j.contains("audio")) record.audio_path = j["audio"].get<std::string>();
    if (j.contains("text")) record.text = j["text"].get<std::string>();
    if (j.contains("lang") && !j["lang"].is_null()) {
      record.lang_tags = j["lang"].get<std::vector<std::string>>();
    }
    if (j.contains("dur") && !j["dur"].is_null()) {
      record.duration_s = j["dur"].get<double>();
    }
  } catch (const ordered_json::exception& e) {
    throw std::invalid_argument(where + ": bad field: " + e.what());
  }
  ValidateRecord(record, where);
  return record;
}

std::string RecordToJsonLine(const UtteranceRecord& record) {
  ordered_json j;
  j["id"] = record.id;
  if (!record.audio_path.empty()) j["audio"] = record.audio_path;
  j["text"] = record.text;
  if (record.lang_tags.has_value()) j["lang"] = *record.lang_tags;
  if (record.duration_s.has_value()) j["dur"] = *record.duration_s;
  return j.dump();
}

DatasetManifest ParseManifest(std::istream& in) {
  DatasetManifest manifest;
  std::unordered_set<std::string> seen;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    UtteranceRecord record =
        RecordFromJsonLine(line, "line " + std::to_string(line_no));
    if (!seen.insert(record.id).second) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": duplicate id '" + record.id + "'");
    }
    manifest.records.push_back(std::move(record));
  }
  return manifest;
}

DatasetManifest LoadManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest '" + path + "'");
  return ParseManifest(in);
}

void WriteManifest(const DatasetManifest& manifest, std::ostream& out) {
  std::unordered_set<std::string> seen;
  for (size_t i = 0; i < manifest.records.size(); ++i) {
    const UtteranceRecord& record = manifest.records[i];
    ValidateRecord(record, "record " + std::to_string(i));
    if (!seen.insert(record.id).second) {
      throw std::invalid_argument("duplicate id '" + record.id + "'");
    }
    out << RecordToJsonLine(record) << '\n';
  }
}

void SaveManifest(const DatasetManifest& manifest, const std::string& path) {
  std::ostringstream buffer;
  WriteManifest(manifest, buffer);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write manifest '" + path + "'");
  out << buffer.str();
  if (!out) throw IoError("failed writing manifest '" + path + "'");
}

std::string ResolveAudioPath(const std::string& manifest_path,
                             const UtteranceRecord& record) {
  namespace fs = std::filesystem;
  fs::path audio(record.audio_path);
  if (audio.is_absolute()) return audio.string();
  return (fs::path(manifest_path).parent_path() / audio).string();
}

}  // namespace csasr
