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

#include "pauseprobe/pause_mark.h"

#include <string>

#include "pauseprobe/errors.h"

namespace pauseprobe {

const char* MarkToken(PauseMark m) {
  switch (m) {
    case PauseMark::kComma:
      return ",";
    case PauseMark::kSemicolon:
      return ";";
    case PauseMark::kPeriod:
      return ".";
  }
  return "?";
}

std::optional<PauseMark> MarkFromToken(const std::string& token) {
  if (token == ",") return PauseMark::kComma;
  if (token == ";") return PauseMark::kSemicolon;
  if (token == ".") return PauseMark::kPeriod;
  return std::nullopt;
}

const std::vector<PauseMark>& AdmittedMarks(Level level) {
  static const std::vector<PauseMark> kLevel1 = {PauseMark::kPeriod};
  static const std::vector<PauseMark> kLevel2 = {PauseMark::kComma,
                                                 PauseMark::kPeriod};
  static const std::vector<PauseMark> kLevel3 = {
      PauseMark::kComma, PauseMark::kSemicolon, PauseMark::kPeriod};
  switch (level) {
    case Level::kLevel1:
      return kLevel1;
    case Level::kLevel2:
      return kLevel2;
    case Level::kLevel3:
      return kLevel3;
  }
  return kLevel3;
}

bool Admits(Level level, PauseMark m) {
  for (PauseMark admitted : AdmittedMarks(level)) {
    if (admitted == m) return true;
  }
  return false;
}

Level LevelFromNumber(int v) {
  switch (v) {
    case 1:
      return Level::kLevel1;
    case 2:
      return Level::kLevel2;
    case 3:
      return Level::kLevel3;
    default:
      throw ConfigError("level must be 1, 2 or 3, got " + std::to_string(v));
  }
}

}  // namespace pauseprobe
