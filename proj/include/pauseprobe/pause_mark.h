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

#ifndef PAUSEPROBE_PAUSE_MARK_H_
#define PAUSEPROBE_PAUSE_MARK_H_

#include <optional>
#include <string>
#include <vector>

namespace pauseprobe {

// Punctuation mark standing for a quantized speech pause, ordered by the
// pause length it represents: comma < semicolon < period.
enum class PauseMark { kComma = 0, kSemicolon = 1, kPeriod = 2 };

inline int MarkRank(PauseMark m) { return static_cast<int>(m); }

// "," / ";" / "."
const char* MarkToken(PauseMark m);

// Inverse of MarkToken; nullopt for anything else.
std::optional<PauseMark> MarkFromToken(const std::string& token);

// Which marks a model variant uses. Level 1: period. Level 2: comma +
// period. Level 3: comma + semicolon + period.
enum class Level { kLevel1 = 1, kLevel2 = 2, kLevel3 = 3 };

// Admitted marks in ascending pause-length order; level k admits k marks.
const std::vector<PauseMark>& AdmittedMarks(Level level);

bool Admits(Level level, PauseMark m);

inline int LevelNumber(Level level) { return static_cast<int>(level); }

// Throws ConfigError unless v is 1, 2 or 3.
Level LevelFromNumber(int v);

}  // namespace pauseprobe

#endif  // PAUSEPROBE_PAUSE_MARK_H_
