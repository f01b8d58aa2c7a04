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

#ifndef PAUSEPROBE_CONTEXT_WINDOW_H_
#define PAUSEPROBE_CONTEXT_WINDOW_H_

#include <string>

#include "pauseprobe/transcript.h"

namespace pauseprobe {

// Context window around a gap: up to r words each side with "#" standing
// for the pause, e.g. "the mother # and the" for gap 1, r 2. Truncates at
// transcript boundaries; the result always contains exactly one "#".
// Throws std::invalid_argument when the gap is out of range or r < 1.
std::string ExtractContext(const PausedTranscript& t, int gap, int r);

}  // namespace pauseprobe

#endif  // PAUSEPROBE_CONTEXT_WINDOW_H_
