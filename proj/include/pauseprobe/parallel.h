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

#ifndef PAUSEPROBE_PARALLEL_H_
#define PAUSEPROBE_PARALLEL_H_

#include <functional>

namespace pauseprobe {

// Runs fn(i) for every i in [0, n) on up to `workers` threads. Each index is
// processed exactly once and results must be written to index-addressed
// slots, so the outcome is independent of the worker count. If any fn throws,
// the exception raised at the lowest index is rethrown after all threads
// join.
void ParallelFor(int n, int workers, const std::function<void(int)>& fn);

// Splits [0, n) into at most `workers` contiguous chunks and runs
// fn(begin, end) per chunk, letting callers reuse per-chunk scratch state.
// Same determinism and exception contract as ParallelFor.
void ParallelChunks(int n, int workers,
                    const std::function<void(int, int)>& fn);

}  // namespace pauseprobe

#endif  // PAUSEPROBE_PARALLEL_H_
