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

#ifndef PAUSEPROBE_TRANSCRIPT_H_
#define PAUSEPROBE_TRANSCRIPT_H_

#include <optional>
#include <string>
#include <vector>

#include "pauseprobe/pause_mark.h"

namespace pauseprobe {

// Transcript as it comes out of ASR alignment: lowercase word tokens plus
// the measured silence after each word. pause_durations[i] is the pause
// between words[i] and words[i+1], in seconds.
struct RawTranscript {
  std::vector<std::string> words;
  std::vector<double> pause_durations;
};

// Pause-length thresholds, in seconds. A gap gets the longest mark whose
// threshold it reaches. Aligners that report pause length as a count of
// blank frames can be mapped here via a seconds-per-frame factor (Wav2vec
// emits fixed-rate frames, 0.02 s each by default).
struct QuantizationConfig {
  double t_comma = 0.5;
  double t_semicolon = 1.0;
  double t_period = 2.0;

  static QuantizationConfig FromBlankCounts(double comma_frames,
                                            double semicolon_frames,
                                            double period_frames,
                                            double seconds_per_frame = 0.02);
};

// Throws ConfigError unless 0 < t_comma <= t_semicolon <= t_period.
void ValidateQuantizationConfig(const QuantizationConfig& cfg);

// Word sequence with an optional pause mark in each of the W-1 inter-word
// gaps. Every present mark must be admitted by `level`.
struct PausedTranscript {
  std::vector<std::string> words;
  std::vector<std::optional<PauseMark>> gaps;
  Level level = Level::kLevel3;

  int GapCount() const { return static_cast<int>(gaps.size()); }
  bool operator==(const PausedTranscript& other) const = default;
};

enum class Label { kAD = 0, kNonAD = 1 };

// "AD" / "non-AD", the dataset wire strings.
const char* LabelToken(Label label);
std::optional<Label> LabelFromToken(const std::string& token);

struct Sample {
  std::string id;
  Label label = Label::kNonAD;
  PausedTranscript transcript;
};

// Throws DataError when an invariant is broken. Words must be nonempty,
// lowercase letters or apostrophes; durations non-negative; sizes W-1.
void ValidateRawTranscript(const RawTranscript& raw);
void ValidatePausedTranscript(const PausedTranscript& t);

// Quantizes pause durations into marks: gap i gets the longest admitted
// mark whose threshold is <= pause_durations[i], or none when the duration
// is below every admitted threshold.
PausedTranscript Quantize(const RawTranscript& raw, Level level,
                          const QuantizationConfig& cfg);

// Words joined by spaces with "#" at each marked gap; verbose mode renders
// the mark kind ("#," "#;" "#.").
std::string RenderDebug(const PausedTranscript& t, bool verbose = false);

}  // namespace pauseprobe

#endif  // PAUSEPROBE_TRANSCRIPT_H_
