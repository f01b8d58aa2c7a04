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

#include "pauseprobe/corpus.h"

#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pauseprobe/errors.h"
#include "pauseprobe/rng.h"

namespace pauseprobe {

namespace {

// Sentence boundaries get a medium pause half the time in both classes.
constexpr double kBoundaryPauseProb = 0.5;

void AppendTokens(const std::string& phrase, std::vector<std::string>* words) {
  std::istringstream in(phrase);
  std::string token;
  while (in >> token) words->push_back(token);
}

std::string PaddedId(const char* prefix, int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s-%04d", prefix, i);
  return buf;
}

}  // namespace

CorpusVocabulary DefaultVocabulary() {
  CorpusVocabulary v;
  v.subjects = {"the mother",      "the little girl", "the boy",
                "the sink",        "the stool",       "the water",
                "the cookie jar",  "she",             "he"};
  v.verbs = {"washing",  "drying",    "reaching",    "running",
             "standing", "falling",   "overflowing", "going"};
  v.complements = {"the dishes",         "for the cookie jar",
                   "on the stool",       "over the sink",
                   "to the floor",       "outside the window",
                   "in the kitchen",     "the plate",
                   "near the cupboard",  "under the window"};
  return v;
}

void ValidateGenConfig(const GenConfig& cfg) {
  if (cfg.n_ad < 0 || cfg.n_non_ad < 0 || cfg.n_ad + cfg.n_non_ad < 1) {
    throw ConfigError("corpus must contain at least one sample");
  }
  if (cfg.p_sensitive < 0.0 || cfg.p_sensitive > 1.0) {
    throw ConfigError("p_sensitive must be in [0, 1]");
  }
  if (cfg.p_filler_pause < 0.0 || cfg.p_filler_pause > 1.0) {
    throw ConfigError("p_filler_pause must be in [0, 1]");
  }
  if (cfg.min_sentences < 1 || cfg.max_sentences < cfg.min_sentences) {
    throw ConfigError("sentence count range must satisfy 1 <= min <= max");
  }
  if (cfg.vocabulary.subjects.empty() || cfg.vocabulary.verbs.empty() ||
      cfg.vocabulary.complements.empty()) {
    throw ConfigError("corpus vocabulary lists must be nonempty");
  }
  ValidateQuantizationConfig(cfg.thresholds);
}

GeneratedCorpus Generate(const GenConfig& cfg) {
  ValidateGenConfig(cfg);
  SplitMix64 rng(cfg.seed);
  GeneratedCorpus corpus;

  const int total = cfg.n_ad + cfg.n_non_ad;
  for (int i = 0; i < total; ++i) {
    const bool is_ad = i < cfg.n_ad;
    DatasetRecord record;
    record.id = is_ad ? PaddedId("ad", i) : PaddedId("nonad", i - cfg.n_ad);
    record.label = is_ad ? Label::kAD : Label::kNonAD;

    const int n_sentences = rng.NextInt(cfg.min_sentences, cfg.max_sentences);
    // Gap index of each "is <verb>" pause and of each sentence boundary.
    std::set<int> is_verb_gaps;
    std::set<int> boundary_gaps;
    for (int s = 0; s < n_sentences; ++s) {
      if (s > 0) {
        boundary_gaps.insert(static_cast<int>(record.words.size()) - 1);
      }
      const std::string& subject = cfg.vocabulary.subjects[rng.NextBelow(
          cfg.vocabulary.subjects.size())];
      const std::string& verb =
          cfg.vocabulary.verbs[rng.NextBelow(cfg.vocabulary.verbs.size())];
      const std::string& complement = cfg.vocabulary.complements[rng.NextBelow(
          cfg.vocabulary.complements.size())];
      AppendTokens(subject, &record.words);
      record.words.push_back("is");
      is_verb_gaps.insert(static_cast<int>(record.words.size()) - 1);
      record.words.push_back(verb);
      AppendTokens(complement, &record.words);
    }

    std::vector<double> pauses(record.words.size() - 1, 0.0);
    std::vector<int> planted;
    const QuantizationConfig& th = cfg.thresholds;
    for (int gap = 0; gap < static_cast<int>(pauses.size()); ++gap) {
      if (is_verb_gaps.count(gap)) {
        // The planted signal: only AD samples pause between "is" and the
        // verb, and the pause quantizes to a period.
        if (is_ad && rng.NextBernoulli(cfg.p_sensitive)) {
          pauses[gap] = rng.NextUniform(th.t_period, 2.0 * th.t_period);
          planted.push_back(gap);
        }
      } else if (boundary_gaps.count(gap)) {
        if (rng.NextBernoulli(kBoundaryPauseProb)) {
          pauses[gap] = rng.NextUniform(th.t_comma, th.t_semicolon);
        }
      } else if (rng.NextBernoulli(cfg.p_filler_pause)) {
        pauses[gap] = rng.NextUniform(0.0, th.t_comma);
      }
    }
    record.pauses = std::move(pauses);
    corpus.sensitive_gaps[record.id] = std::move(planted);
    corpus.records.push_back(std::move(record));
  }
  return corpus;
}

std::string GroundTruthToJson(
    const std::map<std::string, std::vector<int>>& sensitive_gaps) {
  nlohmann::json obj = nlohmann::json::object();
  for (const auto& [id, gaps] : sensitive_gaps) obj[id] = gaps;
  return obj.dump(2) + "\n";
}

SplitResult StratifiedSplit(const std::vector<DatasetRecord>& dataset,
                            double train_fraction, uint64_t seed) {
  if (!(train_fraction > 0.0) || !(train_fraction < 1.0)) {
    throw ConfigError("train fraction must be strictly between 0 and 1");
  }
  SplitMix64 rng(seed);
  std::vector<bool> in_train(dataset.size(), false);
  for (Label label : {Label::kAD, Label::kNonAD}) {
    std::vector<size_t> indices;
    for (size_t i = 0; i < dataset.size(); ++i) {
      if (dataset[i].label == label) indices.push_back(i);
    }
    if (indices.empty()) continue;
    rng.Shuffle(&indices);
    const size_t n_train = static_cast<size_t>(
        std::llround(train_fraction * static_cast<double>(indices.size())));
    if (n_train == 0 || n_train == indices.size()) {
      throw DataError(std::string("class ") + LabelToken(label) +
                      " is too small to split at fraction " +
                      std::to_string(train_fraction));
    }
    for (size_t k = 0; k < n_train; ++k) in_train[indices[k]] = true;
  }

  SplitResult result;
  for (size_t i = 0; i < dataset.size(); ++i) {
    (in_train[i] ? result.train : result.test).push_back(dataset[i]);
  }
  return result;
}

}  // namespace pauseprobe
