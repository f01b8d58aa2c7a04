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

#include "pauseprobe/context_window.h"

#include <stdexcept>
#include <string>

namespace pauseprobe {

std::string ExtractContext(const PausedTranscript& t, int gap, int r) {
  if (r < 1) throw std::invalid_argument("context range must be >= 1");
  if (gap < 0 || gap >= t.GapCount()) {
    throw std::invalid_argument("gap " + std::to_string(gap) +
                                " out of range for " +
                                std::to_string(t.GapCount()) + " gaps");
  }
  // Gap i sits between words[i] and words[i+1].
  int left_begin = std::max(0, gap + 1 - r);
  int right_end = std::min(static_cast<int>(t.words.size()), gap + 1 + r);
  std::string out;
  for (int i = left_begin; i <= gap; ++i) {
    out += t.words[i];
    out += ' ';
  }
  out += '#';
  for (int i = gap + 1; i < right_end; ++i) {
    out += ' ';
    out += t.words[i];
  }
  return out;
}

}  // namespace pauseprobe
