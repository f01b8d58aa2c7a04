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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "pauseprobe/errors.h"

namespace pauseprobe {
namespace {

// Gap indices between an "is" token and the following word.
std::vector<int> IsVerbGaps(const DatasetRecord& record) {
  std::vector<int> gaps;
  for (size_t i = 0; i + 1 < record.words.size(); ++i) {
    if (record.words[i] == "is") gaps.push_back(static_cast<int>(i));
  }
  return gaps;
}

TEST(GenerateTest, DeterministicForASeed) {
  GenConfig cfg;
  cfg.seed = 42;
  cfg.n_ad = 15;
  cfg.n_non_ad = 15;
  GeneratedCorpus first = Generate(cfg);
  GeneratedCorpus second = Generate(cfg);
  EXPECT_EQ(first.records, second.records);
  EXPECT_EQ(first.sensitive_gaps, second.sensitive_gaps);

  cfg.seed = 43;
  GeneratedCorpus third = Generate(cfg);
  EXPECT_NE(first.records, third.records);
}

TEST(GenerateTest, RecordsAreValidRawTranscripts) {
  GenConfig cfg;
  cfg.seed = 7;
  cfg.n_ad = 10;
  cfg.n_non_ad = 10;
  GeneratedCorpus corpus = Generate(cfg);
  ASSERT_EQ(corpus.records.size(), 20u);
  std::set<std::string> ids;
  for (const DatasetRecord& record : corpus.records) {
    EXPECT_TRUE(ids.insert(record.id).second);
    EXPECT_GE(record.words.size(), 2u);
    ASSERT_TRUE(record.pauses.has_value());
    EXPECT_NO_THROW(
        ValidateRawTranscript(RawTranscript{record.words, *record.pauses}));
  }
}

TEST(GenerateTest, NonAdNeverHasLongIsVerbPause) {
  GenConfig cfg;
  cfg.seed = 5;
  cfg.n_ad = 0;
  cfg.n_non_ad = 40;
  GeneratedCorpus corpus = Generate(cfg);
  for (const DatasetRecord& record : corpus.records) {
    for (int gap : IsVerbGaps(record)) {
      EXPECT_LT((*record.pauses)[gap], cfg.thresholds.t_period) << record.id;
    }
    EXPECT_TRUE(corpus.sensitive_gaps.at(record.id).empty());
  }
}

TEST(GenerateTest, QuantizedNonAdHasNoPeriodAtIsVerbGaps) {
  GenConfig cfg;
  cfg.seed = 11;
  cfg.n_ad = 10;
  cfg.n_non_ad = 30;
  GeneratedCorpus corpus = Generate(cfg);
  for (const DatasetRecord& record : corpus.records) {
    if (record.label != Label::kNonAD) continue;
    for (Level level : {Level::kLevel1, Level::kLevel2, Level::kLevel3}) {
      PausedTranscript t = Quantize(RawTranscript{record.words, *record.pauses},
                                    level, cfg.thresholds);
      for (int gap : IsVerbGaps(record)) {
        EXPECT_NE(t.gaps[gap], PauseMark::kPeriod) << record.id;
      }
    }
  }
}

TEST(GenerateTest, GroundTruthPointsAtPlantedLongPauses) {
  GenConfig cfg;
  cfg.seed = 3;
  cfg.n_ad = 30;
  cfg.n_non_ad = 5;
  GeneratedCorpus corpus = Generate(cfg);
  for (const DatasetRecord& record : corpus.records) {
    const std::vector<int>& planted = corpus.sensitive_gaps.at(record.id);
    if (record.label == Label::kNonAD) {
      EXPECT_TRUE(planted.empty());
      continue;
    }
    std::vector<int> is_gaps = IsVerbGaps(record);
    for (int gap : planted) {
      EXPECT_NE(std::find(is_gaps.begin(), is_gaps.end(), gap), is_gaps.end());
      EXPECT_GE((*record.pauses)[gap], cfg.thresholds.t_period);
      EXPECT_LE((*record.pauses)[gap], 2.0 * cfg.thresholds.t_period);
    }
  }
}

TEST(GenerateTest, PlantedFractionMatchesAnalyticExpression) {
  GenConfig cfg;
  cfg.seed = 42;
  cfg.n_ad = 150;
  cfg.n_non_ad = 150;
  GeneratedCorpus corpus = Generate(cfg);

  int with_planted = 0;
  for (const DatasetRecord& record : corpus.records) {
    if (record.label != Label::kAD) continue;
    if (!corpus.sensitive_gaps.at(record.id).empty()) ++with_planted;
  }
  double observed = static_cast<double>(with_planted) / cfg.n_ad;

  // One "is <verb>" gap per sentence, k sentences uniform in [3, 8]:
  // P(>=1 planted) = mean over k of 1 - (1 - p)^k.
  double expected = 0.0;
  for (int k = cfg.min_sentences; k <= cfg.max_sentences; ++k) {
    expected += 1.0 - std::pow(1.0 - cfg.p_sensitive, k);
  }
  expected /= (cfg.max_sentences - cfg.min_sentences + 1);
  EXPECT_NEAR(observed, expected, 0.1);
}

TEST(GenerateTest, InvalidConfigRejected) {
  GenConfig cfg;
  cfg.n_ad = 0;
  cfg.n_non_ad = 0;
  EXPECT_THROW(Generate(cfg), ConfigError);
  cfg = GenConfig{};
  cfg.n_ad = 1;
  cfg.p_sensitive = 1.5;
  EXPECT_THROW(Generate(cfg), ConfigError);
  cfg = GenConfig{};
  cfg.n_ad = 1;
  cfg.vocabulary.verbs.clear();
  EXPECT_THROW(Generate(cfg), ConfigError);
  cfg = GenConfig{};
  cfg.n_ad = 1;
  cfg.min_sentences = 5;
  cfg.max_sentences = 4;
  EXPECT_THROW(Generate(cfg), ConfigError);
}

TEST(GroundTruthTest, JsonShape) {
  std::map<std::string, std::vector<int>> gaps = {{"ad-0000", {3, 7}},
                                                  {"nonad-0000", {}}};
  const std::string json = GroundTruthToJson(gaps);
  EXPECT_NE(json.find("\"ad-0000\""), std::string::npos);
  EXPECT_NE(json.find("3"), std::string::npos);
}

TEST(SplitTest, BalancedHalfSplit) {
  GenConfig cfg;
  cfg.seed = 2;
  cfg.n_ad = 10;
  cfg.n_non_ad = 10;
  GeneratedCorpus corpus = Generate(cfg);
  SplitResult split = StratifiedSplit(corpus.records, 0.5, 1);

  auto count_label = [](const std::vector<DatasetRecord>& records, Label l) {
    int n = 0;
    for (const auto& r : records) n += r.label == l ? 1 : 0;
    return n;
  };
  EXPECT_EQ(split.train.size(), 10u);
  EXPECT_EQ(split.test.size(), 10u);
  EXPECT_EQ(count_label(split.train, Label::kAD), 5);
  EXPECT_EQ(count_label(split.train, Label::kNonAD), 5);
  EXPECT_EQ(count_label(split.test, Label::kAD), 5);
  EXPECT_EQ(count_label(split.test, Label::kNonAD), 5);
}

TEST(SplitTest, DeterministicAndDisjointUnion) {
  GenConfig cfg;
  cfg.seed = 12;
  cfg.n_ad = 13;
  cfg.n_non_ad = 9;
  GeneratedCorpus corpus = Generate(cfg);

  SplitResult a = StratifiedSplit(corpus.records, 0.7, 5);
  SplitResult b = StratifiedSplit(corpus.records, 0.7, 5);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);

  std::set<std::string> train_ids;
  std::set<std::string> test_ids;
  for (const auto& r : a.train) train_ids.insert(r.id);
  for (const auto& r : a.test) test_ids.insert(r.id);
  EXPECT_EQ(train_ids.size() + test_ids.size(), corpus.records.size());
  for (const std::string& id : train_ids) {
    EXPECT_EQ(test_ids.count(id), 0u);
  }

  // Stratification within one sample of the requested fraction per class.
  auto check_ratio = [&](Label label, int total) {
    int in_train = 0;
    for (const auto& r : a.train) in_train += r.label == label ? 1 : 0;
    EXPECT_LE(std::abs(in_train - 0.7 * total), 1.0);
  };
  check_ratio(Label::kAD, 13);
  check_ratio(Label::kNonAD, 9);
}

TEST(SplitTest, InvalidFractionAndTinyClassRejected) {
  GenConfig cfg;
  cfg.seed = 1;
  cfg.n_ad = 1;
  cfg.n_non_ad = 10;
  GeneratedCorpus corpus = Generate(cfg);
  EXPECT_THROW(StratifiedSplit(corpus.records, 0.0, 0), ConfigError);
  EXPECT_THROW(StratifiedSplit(corpus.records, 1.0, 0), ConfigError);
  // One AD sample cannot land on both sides.
  EXPECT_THROW(StratifiedSplit(corpus.records, 0.5, 0), DataError);
}

}  // namespace
}  // namespace pauseprobe
