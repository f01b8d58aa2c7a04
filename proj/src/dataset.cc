// Copyright 2026 The PauseProbe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pauseprobe/dataset.h"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "pauseprobe/errors.h"

namespace pauseprobe {

namespace {

using nlohmann::json;

DataError LineError(size_t line, const std::string& message) {
  return DataError("dataset line " + std::to_string(line) + ": " + message);
}

DatasetRecord RecordFromJson(const json& obj, size_t line) {
  if (!obj.is_object()) throw LineError(line, "expected a JSON object");

  DatasetRecord record;
  if (!obj.contains("id") || !obj["id"].is_string()) {
    throw LineError(line, "missing string field 'id'");
  }
  record.id = obj["id"].get<std::string>();

  if (!obj.contains("label") || !obj["label"].is_string()) {
    throw LineError(line, "missing string field 'label'");
  }
  std::optional<Label> label = LabelFromToken(obj["label"].get<std::string>());
  if (!label) {
    throw LineError(line, "label must be \"AD\" or \"non-AD\"");
  }
  record.label = *label;

  if (!obj.contains("words") || !obj["words"].is_array()) {
    throw LineError(line, "missing array field 'words'");
  }
  for (const json& w : obj["words"]) {
    if (!w.is_string()) throw LineError(line, "words must be strings");
    record.words.push_back(w.get<std::string>());
  }

  const bool has_pauses = obj.contains("pauses");
  const bool has_marks = obj.contains("marks");
  if (has_pauses == has_marks) {
    throw LineError(line, "exactly one of 'pauses' or 'marks' is required");
  }

  if (has_pauses) {
    if (!obj["pauses"].is_array()) {
      throw LineError(line, "'pauses' must be an array of numbers");
    }
    std::vector<double> pauses;
    for (const json& p : obj["pauses"]) {
      if (!p.is_number()) throw LineError(line, "pauses must be numbers");
      pauses.push_back(p.get<double>());
    }
    if (pauses.size() + 1 != record.words.size()) {
      throw LineError(line, "expected len(pauses) == len(words) - 1");
    }
    record.pauses = std::move(pauses);
  } else {
    if (!obj["marks"].is_array()) {
      throw LineError(line, "'marks' must be an array");
    }
    std::vector<std::optional<PauseMark>> marks;
    for (const json& m : obj["marks"]) {
      if (m.is_null()) {
        marks.push_back(std::nullopt);
        continue;
      }
      if (!m.is_string()) {
        throw LineError(line, "marks must be null, \",\", \";\" or \".\"");
      }
      std::optional<PauseMark> mark = MarkFromToken(m.get<std::string>());
      if (!mark) {
        throw LineError(line, "unknown mark '" + m.get<std::string>() + "'");
      }
      marks.push_back(mark);
    }
    if (marks.size() + 1 != record.words.size()) {
      throw LineError(line, "expected len(marks) == len(words) - 1");
    }
    record.marks = std::move(marks);
  }
  return record;
}

json RecordToJson(const DatasetRecord& record) {
  json obj;
  obj["id"] = record.id;
  obj["label"] = LabelToken(record.label);
  obj["words"] = record.words;
  if (record.pauses.has_value()) {
    obj["pauses"] = *record.pauses;
  } else if (record.marks.has_value()) {
    json marks = json::array();
    for (const std::optional<PauseMark>& m : *record.marks) {
      if (m.has_value()) {
        marks.push_back(MarkToken(*m));
      } else {
        marks.push_back(nullptr);
      }
    }
    obj["marks"] = std::move(marks);
  } else {
    throw DataError("record '" + record.id + "' has neither pauses nor marks");
  }
  return obj;
}

}  // namespace

std::vector<DatasetRecord> ParseJsonl(std::istream& in) {
  std::vector<DatasetRecord> records;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw LineError(line_number, e.what());
    }
    records.push_back(RecordFromJson(obj, line_number));
  }
  return records;
}

std::vector<DatasetRecord> ParseJsonlString(const std::string& text) {
  std::istringstream in(text);
  return ParseJsonl(in);
}

std::vector<DatasetRecord> ReadJsonlFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dataset file: " + path);
  return ParseJsonl(in);
}

void WriteJsonl(const std::vector<DatasetRecord>& records, std::ostream& out) {
  for (const DatasetRecord& record : records) {
    out << RecordToJson(record).dump() << '\n';
  }
}

std::string WriteJsonlString(const std::vector<DatasetRecord>& records) {
  std::ostringstream out;
  WriteJsonl(records, out);
  return out.str();
}

void WriteJsonlFile(const std::vector<DatasetRecord>& records,
                    const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write dataset file: " + path);
  WriteJsonl(records, out);
}

Sample ToSample(const DatasetRecord& record, Level level,
                const QuantizationConfig& cfg) {
  Sample sample;
  sample.id = record.id;
  sample.label = record.label;
  if (record.pauses.has_value()) {
    RawTranscript raw{record.words, *record.pauses};
    sample.transcript = Quantize(raw, level, cfg);
  } else if (record.marks.has_value()) {
    sample.transcript.words = record.words;
    sample.transcript.gaps = *record.marks;
    sample.transcript.level = level;
    ValidatePausedTranscript(sample.transcript);
  } else {
    throw DataError("record '" + record.id + "' has neither pauses nor marks");
  }
  return sample;
}

std::vector<Sample> ToSamples(const std::vector<DatasetRecord>& records,
                              Level level, const QuantizationConfig& cfg) {
  std::vector<Sample> samples;
  samples.reserve(records.size());
  std::set<std::string> ids;
  for (const DatasetRecord& record : records) {
    if (!ids.insert(record.id).second) {
      throw DataError("duplicate sample id '" + record.id + "'");
    }
    samples.push_back(ToSample(record, level, cfg));
  }
  return samples;
}

DatasetRecord ToRecord(const Sample& sample) {
  DatasetRecord record;
  record.id = sample.id;
  record.label = sample.label;
  record.words = sample.transcript.words;
  record.marks = sample.transcript.gaps;
  return record;
}

}  // namespace pauseprobe
