// csasr/manifest.h

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

#ifndef CSASR_MANIFEST_H_
#define CSASR_MANIFEST_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace csasr {

// One audio+transcript item. JSON Lines representation:
//   {"id": "...", "audio": "...", "text": "...", "lang": [...], "dur": 1.5}
// "audio", "lang" and "dur" are optional; "lang" is parallel to the
// whitespace tokens of "text".
struct UtteranceRecord {
  std::string id;
  std::string audio_path;  // empty for text-only records
  std::string text;
  std::optional<std::vector<std::string>> lang_tags;
  std::optional<double> duration_s;

  bool operator==(const UtteranceRecord&) const = default;
};

struct DatasetManifest {
  std::vector<UtteranceRecord> records;

  bool operator==(const DatasetManifest&) const = default;
};

// Checks the record invariants: non-empty id, lang_tags length matching the
// whitespace-token count of text, non-negative duration. The `where` string
// is prefixed to error messages (e.g. "line 3").
void ValidateRecord(const UtteranceRecord& record, const std::string& where);

// Parses JSON Lines. Rejects malformed lines (error names the line number)
// and duplicate ids (error names the id). Order-preserving.
DatasetManifest ParseManifest(std::istream& in);
DatasetManifest LoadManifest(const std::string& path);

void WriteManifest(const DatasetManifest& manifest, std::ostream& out);
void SaveManifest(const DatasetManifest& manifest, const std::string& path);

// Single-record JSONL codecs, used by streaming CLI paths.
std::string RecordToJsonLine(const UtteranceRecord& record);
UtteranceRecord RecordFromJsonLine(const std::string& line,
                                   const std::string& where);

// Audio paths are resolved relative to the directory holding the manifest.
std::string ResolveAudioPath(const std::string& manifest_path,
                             const UtteranceRecord& record);

}  // namespace csasr

#endif  // CSASR_MANIFEST_H_
