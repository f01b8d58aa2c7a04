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

#include "pauseprobe/transcript.h"

#include <cmath>
#include <string>

#include "pauseprobe/errors.h"

namespace pauseprobe {

QuantizationConfig QuantizationConfig::FromBlankCounts(
    double comma_frames, double semicolon_frames, double period_frames,
    double seconds_per_frame) {
  if (seconds_per_frame <= 0.0) {
    throw ConfigError("seconds_per_frame must be positive");
  }
  QuantizationConfig cfg;
  cfg.t_comma = comma_frames * seconds_per_frame;
  cfg.t_semicolon = semicolon_frames * seconds_per_frame;
  cfg.t_period = period_frames * seconds_per_frame;
  return cfg;
}

void ValidateQuantizationConfig(const QuantizationConfig& cfg) {
  if (!(cfg.t_comma > 0.0) || !(cfg.t_comma <= cfg.t_semicolon) ||
      !(cfg.t_semicolon <= cfg.t_period)) {
    throw ConfigError("pause thresholds must satisfy 0 < t_comma <= "
                      "t_semicolon <= t_period");
  }
}

const char* LabelToken(Label label) {
  return label == Label::kAD ? "AD" : "non-AD";
}

std::optional<Label> LabelFromToken(const std::string& token) {
  if (token == "AD") return Label::kAD;
  if (token == "non-AD") return Label::kNonAD;
  return std::nullopt;
}

namespace {

bool IsValidWord(const std::string& word) {
  if (word.empty()) return false;
  for (char c : word) {
    if (!((c >= 'a' && c <= 'z') || c == '\'')) return false;
  }
  return true;
}

}  // namespace

void ValidateRawTranscript(const RawTranscript& raw) {
  if (raw.words.empty()) {
    throw DataError("transcript must contain at least one word");
  }
  if (raw.pause_durations.size() != raw.words.size() - 1) {
    throw DataError("expected " + std::to_string(raw.words.size() - 1) +
                    " pause durations for " + std::to_string(raw.words.size()) +
                    " words, got " + std::to_string(raw.pause_durations.size()));
  }
  for (const std::string& word : raw.words) {
    if (!IsValidWord(word)) {
      throw DataError("invalid word token '" + word +
                      "' (lowercase letters and apostrophes only)");
    }
  }
  for (double d : raw.pause_durations) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw DataError("pause durations must be finite and non-negative");
    }
  }
}

void ValidatePausedTranscript(const PausedTranscript& t) {
  if (t.words.empty()) {
    throw DataError("transcript must contain at least one word");
  }
  if (t.gaps.size() != t.words.size() - 1) {
    throw DataError("expected " + std::to_string(t.words.size() - 1) +
                    " gaps for " + std::to_string(t.words.size()) +
                    " words, got " + std::to_string(t.gaps.size()));
  }
  for (const std::string& word : t.words) {
    if (!IsValidWord(word)) {
      throw DataError("invalid word token '" + word +
                      "' (lowercase letters and apostrophes only)");
    }
  }
  for (const std::optional<PauseMark>& mark : t.gaps) {
    if (mark.has_value() && !Admits(t.level, *mark)) {
      throw DataError(std::string("mark '") + MarkToken(*mark) +
                      "' is not admitted by level " +
                      std::to_string(LevelNumber(t.level)));
    }
  }
}

PausedTranscript Quantize(const RawTranscript& raw, Level level,
                          const QuantizationConfig& cfg) {
  ValidateRawTranscript(raw);
  ValidateQuantizationConfig(cfg);

  PausedTranscript out;
  out.words = raw.words;
  out.level = level;
  out.gaps.resize(raw.pause_durations.size());
  for (size_t i = 0; i < raw.pause_durations.size(); ++i) {
    double d = raw.pause_durations[i];
    std::optional<PauseMark> mark;
    // Longest admitted mark whose threshold the duration reaches.
    for (PauseMark candidate : AdmittedMarks(level)) {
      double threshold = candidate == PauseMark::kComma ? cfg.t_comma
                         : candidate == PauseMark::kSemicolon
                             ? cfg.t_semicolon
                             : cfg.t_period;
      if (d >= threshold) mark = candidate;
    }
    out.gaps[i] = mark;
  }
  return out;
}

std::string RenderDebug(const PausedTranscript& t, bool verbose) {
  std::string out;
  for (size_t i = 0; i < t.words.size(); ++i) {
    if (i > 0) out += ' ';
    out += t.words[i];
    if (i < t.gaps.size() && t.gaps[i].has_value()) {
      out += verbose ? std::string(" #") + MarkToken(*t.gaps[i]) : " #";
    }
  }
  return out;
}

}  // namespace pauseprobe
