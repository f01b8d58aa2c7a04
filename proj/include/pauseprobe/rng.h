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

#ifndef PAUSEPROBE_RNG_H_
#define PAUSEPROBE_RNG_H_

#include <cstdint>
#include <vector>

namespace pauseprobe {

// SplitMix64 (Steele, Lea, Flood 2014). Every randomized procedure in this
// project draws from this sequence so that outputs are reproducible across
// platforms and standard-library versions; std::shuffle and the
// std::*_distribution classes are implementation-defined and never used.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random mantissa bits.
  double NextUnit() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double NextUniform(double lo, double hi) {
    return lo + (hi - lo) * NextUnit();
  }

  // Uniform integer in [0, bound), bound >= 1. Fixed-point multiply keeps
  // the mapping identical everywhere.
  uint64_t NextBelow(uint64_t bound) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(Next()) * bound) >> 64);
  }

  // Uniform integer in [lo, hi] inclusive.
  int NextInt(int lo, int hi) {
    return lo + static_cast<int>(NextBelow(static_cast<uint64_t>(hi - lo + 1)));
  }

  bool NextBernoulli(double p) { return NextUnit() < p; }

  // Fisher-Yates shuffle driven by this sequence.
  template <typename T>
  void Shuffle(std::vector<T>* items) {
    for (size_t i = items->size(); i > 1; --i) {
      size_t j = static_cast<size_t>(NextBelow(i));
      std::swap((*items)[i - 1], (*items)[j]);
    }
  }

 private:
  uint64_t state_;
};

}  // namespace pauseprobe

#endif  // PAUSEPROBE_RNG_H_
