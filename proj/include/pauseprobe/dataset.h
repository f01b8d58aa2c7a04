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

#ifndef PAUSEPROBE_DATASET_H_
#define PAUSEPROBE_DATASET_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pauseprobe/transcript.h"

namespace pauseprobe {

// One dataset JSONL record. Exactly one of `pauses` (raw durations in
// seconds) or `marks` (pre-quantized pause marks) is present; both have
// length words.size() - 1.
struct DatasetRecord {
  std::string id;
  Label label = Label::kNonAD;
  std::vector<std::string> words;
  std::optional<std::vector<double>> pauses;
  std::optional<std::vector<std::optional<PauseMark>>> marks;

  bool operator==(const DatasetRecord& other) const = default;
};

// Parses dataset JSONL. Malformed lines raise DataError naming the
// 1-based line number; blank lines are not allowed between records.
std::vector<DatasetRecord> ParseJsonl(std::istream& in);
std::vector<DatasetRecord> ParseJsonlString(const std::string& text);
// Throws ConfigError when the file cannot be opened.
std::vector<DatasetRecord> ReadJsonlFile(const std::string& path);

// One compact JSON object per line; parse(write(d)) == d and a second
// write is byte-identical.
void WriteJsonl(const std::vector<DatasetRecord>& records, std::ostream& out);
std::string WriteJsonlString(const std::vector<DatasetRecord>& records);
void WriteJsonlFile(const std::vector<DatasetRecord>& records,
                    const std::string& path);

// Quantizes a raw record (or validates a pre-quantized one) under the given
// level. Pre-quantized marks not admitted by the level raise DataError.
Sample ToSample(const DatasetRecord& record, Level level,
                const QuantizationConfig& cfg);

// ToSample over a dataset; also enforces id uniqueness.
std::vector<Sample> ToSamples(const std::vector<DatasetRecord>& records,
                              Level level, const QuantizationConfig& cfg);

// Marks-form record of a sample.
DatasetRecord ToRecord(const Sample& sample);

}  // namespace pauseprobe

#endif  // PAUSEPROBE_DATASET_H_
