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

#ifndef PAUSEPROBE_CORPUS_H_
#define PAUSEPROBE_CORPUS_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pauseprobe/dataset.h"
#include "pauseprobe/transcript.h"

namespace pauseprobe {

// Cookie-Theft-themed word lists for the sentence template
// <subject> is <verb-ing> <complement>.
struct CorpusVocabulary {
  std::vector<std::string> subjects;
  std::vector<std::string> verbs;
  std::vector<std::string> complements;
};

CorpusVocabulary DefaultVocabulary();

// Synthetic corpus with a planted dementia-sensitive pause pattern: AD
// samples put a long pause (>= t_period) in "is <verb>" gaps with
// probability p_sensitive per sentence; non-AD samples never do. Both
// classes get sub-comma filler pauses elsewhere with probability
// p_filler_pause per gap and medium pauses at half their sentence
// boundaries, so pause count alone cannot separate the classes.
struct GenConfig {
  uint64_t seed = 0;
  int n_ad = 1;
  int n_non_ad = 1;
  double p_sensitive = 0.8;
  double p_filler_pause = 0.15;
  int min_sentences = 3;
  int max_sentences = 8;
  QuantizationConfig thresholds;  // pause lengths are placed relative to these
  CorpusVocabulary vocabulary = DefaultVocabulary();
};

// Throws ConfigError on invalid probabilities, counts or empty word lists.
void ValidateGenConfig(const GenConfig& cfg);

struct GeneratedCorpus {
  std::vector<DatasetRecord> records;  // raw (pause duration) form
  // sample id -> gap indices that received a planted sensitive pause
  std::map<std::string, std::vector<int>> sensitive_gaps;
};

// Deterministic for a given config: all draws come from one SplitMix64
// sequence seeded with cfg.seed, consumed in generation order (sentence
// count, per-sentence word choices, then per-gap pause draws).
GeneratedCorpus Generate(const GenConfig& cfg);

// ground_truth.json: {"<sample id>": [gap indices...]}.
std::string GroundTruthToJson(
    const std::map<std::string, std::vector<int>>& sensitive_gaps);

struct SplitResult {
  std::vector<DatasetRecord> train;
  std::vector<DatasetRecord> test;
};

// Label-stratified deterministic split; per class, round(n * fraction)
// records go to train. Throws ConfigError when the fraction is not in
// (0, 1) and DataError when a class would leave either side empty.
SplitResult StratifiedSplit(const std::vector<DatasetRecord>& dataset,
                            double train_fraction, uint64_t seed);

}  // namespace pauseprobe

#endif  // PAUSEPROBE_CORPUS_H_
