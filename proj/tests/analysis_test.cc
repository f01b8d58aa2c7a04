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

#include "pauseprobe/analysis.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "pauseprobe/errors.h"
#include "pauseprobe/rng.h"
#include "test_util.h"

namespace pauseprobe {
namespace {

using testing_util::HashLinearClassifier;
using testing_util::RandomTranscript;

PausedTranscript Words(std::vector<std::string> words) {
  PausedTranscript t;
  t.words = std::move(words);
  t.gaps.assign(t.words.size() - 1, std::nullopt);
  t.level = Level::kLevel3;
  return t;
}

StepRecord Record(int step, ActionKind kind, std::optional<PauseMark> prev,
                  std::optional<PauseMark> mark, const std::string& r1,
                  const std::string& r2 = "") {
  StepRecord record;
  record.step = step;
  record.action.kind = kind;
  record.action.gap = 0;
  record.action.mark = mark;
  record.prev_mark = prev;
  record.context_r1 = r1;
  record.context_r2 = r2.empty() ? r1 : r2;
  record.confidence_before = 1.0;
  record.confidence_after = 0.0;
  return record;
}

AttackTrace Trace(Label label, Level level, std::vector<StepRecord> steps) {
  AttackTrace trace;
  trace.sample_id = "t";
  trace.label = label;
  trace.level = level;
  trace.steps = std::move(steps);
  return trace;
}

TEST(ExtractContextTest, MatchesTableRendering) {
  PausedTranscript t = Words({"the", "mother", "and", "the", "dog"});
  EXPECT_EQ(ExtractContext(t, 1, 2), "the mother # and the");
  EXPECT_EQ(ExtractContext(t, 0, 1), "the # mother");
  EXPECT_EQ(ExtractContext(t, 3, 2), "and the # dog");
}

TEST(ExtractContextTest, TruncatesAtBoundaries) {
  PausedTranscript t = Words({"a", "b"});
  EXPECT_EQ(ExtractContext(t, 0, 2), "a # b");
}

TEST(ExtractContextTest, RejectsBadArguments) {
  PausedTranscript t = Words({"a", "b"});
  EXPECT_THROW(ExtractContext(t, 1, 1), std::invalid_argument);
  EXPECT_THROW(ExtractContext(t, -1, 1), std::invalid_argument);
  EXPECT_THROW(ExtractContext(t, 0, 0), std::invalid_argument);
}

TEST(ContextFrequencyTest, EmptyTracesGiveEmptyRanking) {
  EXPECT_TRUE(ContextFrequency({}, ContextQuery{}).empty());
}

TEST(ContextFrequencyTest, SingleStepSingleWindow) {
  std::vector<AttackTrace> traces = {Trace(
      Label::kAD, Level::kLevel3,
      {Record(1, ActionKind::kAdd, std::nullopt, PauseMark::kPeriod,
              "is # going", "it is # going to")})};
  std::vector<std::pair<std::string, int>> ranked =
      ContextFrequency(traces, ContextQuery{1, 1, 5});
  ASSERT_EQ(ranked.size(), 1u);
  EXPECT_EQ(ranked[0], (std::pair<std::string, int>{"is # going", 1}));

  ranked = ContextFrequency(traces, ContextQuery{2, 1, 5});
  EXPECT_EQ(ranked[0].first, "it is # going to");
}

TEST(ContextFrequencyTest, CumulativeStepBoundFiltersRecords) {
  std::vector<AttackTrace> traces = {Trace(
      Label::kAD, Level::kLevel3,
      {Record(1, ActionKind::kDelete, PauseMark::kPeriod, std::nullopt,
              "a # b"),
       Record(2, ActionKind::kDelete, PauseMark::kPeriod, std::nullopt,
              "c # d"),
       Record(6, ActionKind::kDelete, PauseMark::kPeriod, std::nullopt,
              "e # f")})};
  EXPECT_EQ(ContextFrequency(traces, ContextQuery{1, 1, 5}).size(), 1u);
  EXPECT_EQ(ContextFrequency(traces, ContextQuery{1, 5, 5}).size(), 2u);
  EXPECT_EQ(ContextFrequency(traces, ContextQuery{1, 20, 5}).size(), 3u);
}

TEST(ContextFrequencyTest, TiesBreakLexicographically) {
  std::vector<AttackTrace> traces = {
      Trace(Label::kAD, Level::kLevel3,
            {Record(1, ActionKind::kDelete, PauseMark::kPeriod, std::nullopt,
                    "zebra # a"),
             Record(2, ActionKind::kDelete, PauseMark::kPeriod, std::nullopt,
                    "apple # b"),
             Record(3, ActionKind::kDelete, PauseMark::kPeriod, std::nullopt,
                    "apple # b")})};
  std::vector<std::pair<std::string, int>> ranked =
      ContextFrequency(traces, ContextQuery{1, 20, 5});
  ASSERT_EQ(ranked.size(), 2u);
  EXPECT_EQ(ranked[0].first, "apple # b");  // higher count first
  EXPECT_EQ(ranked[1].first, "zebra # a");

  // Equal counts order lexicographically.
  traces[0].steps.pop_back();
  ranked = ContextFrequency(traces, ContextQuery{1, 20, 5});
  EXPECT_EQ(ranked[0].first, "apple # b");
  EXPECT_EQ(ranked[1].first, "zebra # a");
}

TEST(ContextFrequencyTest, InvariantUnderTraceOrderAndTopKCap) {
  SplitMix64 rng(12);
  std::vector<AttackTrace> traces;
  for (int i = 0; i < 10; ++i) {
    AttackConfig cfg;
    Sample s{"s" + std::to_string(i),
             rng.NextBernoulli(0.5) ? Label::kAD : Label::kNonAD,
             RandomTranscript(&rng, 10, Level::kLevel3)};
    HashLinearClassifier model(rng.Next());
    traces.push_back(RunAttack(s, model, cfg));
  }
  ContextQuery q{1, 20, 3};
  std::vector<std::pair<std::string, int>> ranked =
      ContextFrequency(traces, q);
  EXPECT_LE(ranked.size(), 3u);
  std::reverse(traces.begin(), traces.end());
  EXPECT_EQ(ContextFrequency(traces, q), ranked);

  // Every recorded window contains exactly one '#'.
  for (const AttackTrace& trace : traces) {
    for (const StepRecord& record : trace.steps) {
      EXPECT_EQ(std::count(record.context_r1.begin(), record.context_r1.end(),
                           '#'),
                1);
      EXPECT_EQ(std::count(record.context_r2.begin(), record.context_r2.end(),
                           '#'),
                1);
    }
  }
}

TEST(ContextFrequencyTest, RejectsBadQueryAndMixedLevels) {
  EXPECT_THROW(ContextFrequency({}, ContextQuery{3, 1, 5}), ConfigError);
  EXPECT_THROW(ContextFrequency({}, ContextQuery{1, 0, 5}), ConfigError);
  std::vector<AttackTrace> traces = {Trace(Label::kAD, Level::kLevel2, {}),
                                     Trace(Label::kAD, Level::kLevel3, {})};
  EXPECT_THROW(ContextFrequency(traces, ContextQuery{}), DataError);
}

TEST(ActionSignatureTest, TableRowLabels) {
  EXPECT_EQ(ActionSignature(ActionKind::kAdd, std::nullopt, PauseMark::kComma),
            "Add ,");
  EXPECT_EQ(
      ActionSignature(ActionKind::kDelete, PauseMark::kPeriod, std::nullopt),
      "Delete .");
  EXPECT_EQ(ActionSignature(ActionKind::kReplace, PauseMark::kComma,
                            PauseMark::kPeriod),
            "Replace ,->.");
  EXPECT_THROW(ActionSignature(ActionKind::kAdd, std::nullopt, std::nullopt),
               std::invalid_argument);
}

TEST(SignaturesForLevelTest, MatchesTableRowOrder) {
  EXPECT_EQ(SignaturesForLevel(Level::kLevel1),
            (std::vector<std::string>{"Add .", "Delete ."}));
  EXPECT_EQ(SignaturesForLevel(Level::kLevel2),
            (std::vector<std::string>{"Add ,", "Add .", "Replace ,->.",
                                      "Delete ,", "Delete .", "Replace .->,"}));
  EXPECT_EQ(SignaturesForLevel(Level::kLevel3),
            (std::vector<std::string>{
                "Add ,", "Add ;", "Add .", "Replace ,->;", "Replace ,->.",
                "Replace ;->.", "Delete ,", "Delete ;", "Delete .",
                "Replace ;->,", "Replace .->,", "Replace .->;"}));
}

TEST(ClassifyDirectionTest, GroupsPartitionAllSignatures) {
  EXPECT_EQ(ClassifyDirection(ActionKind::kAdd, std::nullopt,
                              PauseMark::kPeriod),
            Direction::kTowardAD);
  EXPECT_EQ(ClassifyDirection(ActionKind::kDelete, PauseMark::kComma,
                              std::nullopt),
            Direction::kTowardNonAD);
  EXPECT_EQ(ClassifyDirection(ActionKind::kReplace, PauseMark::kComma,
                              PauseMark::kPeriod),
            Direction::kTowardAD);
  EXPECT_EQ(ClassifyDirection(ActionKind::kReplace, PauseMark::kPeriod,
                              PauseMark::kComma),
            Direction::kTowardNonAD);

  // Every admitted signature falls in exactly one group; never neutral.
  for (Level level : {Level::kLevel1, Level::kLevel2, Level::kLevel3}) {
    const std::vector<PauseMark>& admitted = AdmittedMarks(level);
    int toward_ad = 0;
    int toward_non_ad = 0;
    for (PauseMark m : admitted) {
      Direction add = ClassifyDirection(ActionKind::kAdd, std::nullopt, m);
      Direction del = ClassifyDirection(ActionKind::kDelete, m, std::nullopt);
      EXPECT_EQ(add, Direction::kTowardAD);
      EXPECT_EQ(del, Direction::kTowardNonAD);
      ++toward_ad;
      ++toward_non_ad;
    }
    for (PauseMark from : admitted) {
      for (PauseMark to : admitted) {
        if (from == to) continue;
        Direction d = ClassifyDirection(ActionKind::kReplace, from, to);
        if (MarkRank(to) > MarkRank(from)) {
          EXPECT_EQ(d, Direction::kTowardAD);
          ++toward_ad;
        } else {
          EXPECT_EQ(d, Direction::kTowardNonAD);
          ++toward_non_ad;
        }
      }
    }
    EXPECT_EQ(toward_ad + toward_non_ad,
              static_cast<int>(SignaturesForLevel(level).size()));
  }
}

TEST(LengthFrequencyTest, SingleDeleteCountsInAdColumn) {
  std::vector<AttackTrace> traces = {
      Trace(Label::kAD, Level::kLevel3,
            {Record(1, ActionKind::kDelete, PauseMark::kPeriod, std::nullopt,
                    "a # b")})};
  LengthTable table = LengthFrequency(traces, {1, 5, 20});
  EXPECT_EQ(table.At("Delete .", 1), (LengthCell{1, 0}));
  for (const std::string& action : table.actions) {
    for (int step : table.steps) {
      if (action == "Delete .") continue;
      EXPECT_EQ(table.At(action, step), (LengthCell{0, 0})) << action;
    }
  }
}

TEST(LengthFrequencyTest, CumulativeCellwiseMonotoneAndTotalsMatch) {
  SplitMix64 rng(91);
  std::vector<AttackTrace> traces;
  for (int i = 0; i < 8; ++i) {
    Sample s{"s" + std::to_string(i),
             rng.NextBernoulli(0.5) ? Label::kAD : Label::kNonAD,
             RandomTranscript(&rng, 11, Level::kLevel2)};
    HashLinearClassifier model(rng.Next());
    AttackConfig cfg;
    cfg.level = Level::kLevel2;
    traces.push_back(RunAttack(s, model, cfg));
  }
  const std::vector<int> steps = {1, 5, 20};
  LengthTable table = LengthFrequency(traces, steps);

  for (size_t row = 0; row < table.actions.size(); ++row) {
    for (size_t col = 1; col < steps.size(); ++col) {
      EXPECT_GE(table.cells[row][col].a_to_n, table.cells[row][col - 1].a_to_n);
      EXPECT_GE(table.cells[row][col].n_to_a, table.cells[row][col - 1].n_to_a);
    }
  }

  // Column sums equal the number of records with step <= bound.
  for (size_t col = 0; col < steps.size(); ++col) {
    long cell_total = 0;
    for (size_t row = 0; row < table.actions.size(); ++row) {
      cell_total += table.cells[row][col].a_to_n + table.cells[row][col].n_to_a;
    }
    long record_total = 0;
    for (const AttackTrace& trace : traces) {
      for (const StepRecord& record : trace.steps) {
        record_total += record.step <= steps[col] ? 1 : 0;
      }
    }
    EXPECT_EQ(cell_total, record_total) << "step bound " << steps[col];
  }
}

TEST(LengthFrequencyTest, MixedLevelsRejected) {
  std::vector<AttackTrace> traces = {Trace(Label::kAD, Level::kLevel1, {}),
                                     Trace(Label::kAD, Level::kLevel3, {})};
  EXPECT_THROW(LengthFrequency(traces, {1}), DataError);
  EXPECT_THROW(LengthFrequency({}, {}), ConfigError);
}

TEST(CsvTest, ContextTableRoundTrip) {
  testing_util::TempDir dir("csv");
  std::vector<AttackTrace> traces = {Trace(
      Label::kAD, Level::kLevel3,
      {Record(1, ActionKind::kAdd, std::nullopt, PauseMark::kPeriod,
              "is # going", "it is # going to")})};
  std::vector<ContextTableEntry> entries =
      BuildContextTable(traces, {1, 2}, {1, 5, 20}, 5);
  ASSERT_FALSE(entries.empty());

  const std::string path = dir.Sub("context.csv");
  WriteContextTableCsv(entries, path);
  std::vector<ContextTableEntry> parsed = ReadContextTableCsv(path);
  ASSERT_EQ(parsed.size(), entries.size());
  for (size_t i = 0; i < entries.size(); ++i) {
    EXPECT_EQ(parsed[i].level, entries[i].level);
    EXPECT_EQ(parsed[i].r, entries[i].r);
    EXPECT_EQ(parsed[i].s, entries[i].s);
    EXPECT_EQ(parsed[i].rank, entries[i].rank);
    EXPECT_EQ(parsed[i].window, entries[i].window);
    EXPECT_EQ(parsed[i].count, entries[i].count);
  }
}

TEST(CsvTest, LengthTableRoundTripWithCommasInActions) {
  testing_util::TempDir dir("csv");
  std::vector<AttackTrace> traces = {
      Trace(Label::kNonAD, Level::kLevel2,
            {Record(1, ActionKind::kAdd, std::nullopt, PauseMark::kComma,
                    "a # b"),
             Record(2, ActionKind::kReplace, PauseMark::kComma,
                    PauseMark::kPeriod, "a # b")})};
  LengthTable table = LengthFrequency(traces, {1, 5});
  const std::string path = dir.Sub("length.csv");
  WriteLengthTableCsv(table, path);
  LengthTable parsed = ReadLengthTableCsv(path);
  EXPECT_EQ(parsed.level, table.level);
  EXPECT_EQ(parsed.steps, table.steps);
  EXPECT_EQ(parsed.actions, table.actions);
  EXPECT_EQ(parsed.cells, table.cells);
  EXPECT_EQ(parsed.At("Add ,", 1), (LengthCell{0, 1}));
  EXPECT_EQ(parsed.At("Replace ,->.", 5), (LengthCell{0, 1}));
}

TEST(CsvTest, EmptyInputsGiveHeaderOnlyFiles) {
  testing_util::TempDir dir("csv");
  WriteContextTableCsv({}, dir.Sub("context.csv"));
  EXPECT_EQ(testing_util::ReadFileToString(dir.Sub("context.csv")),
            "level,r,s,rank,window,count\n");
  WriteLengthTableCsv(LengthTable{}, dir.Sub("length.csv"));
  EXPECT_EQ(testing_util::ReadFileToString(dir.Sub("length.csv")),
            "level,action,step,a_to_n,n_to_a\n");
}

TEST(SvgTest, OnePolylinePerVariant) {
  testing_util::TempDir dir("svg");
  std::map<std::string, AccuracyCurve> curves;
  for (const std::string& variant : {"base", "adv", "reversed"}) {
    AccuracyCurve curve;
    curve.steps = {0, 1, 5, 20};
    double accuracy = 0.9;
    for (int step : curve.steps) {
      curve.mean[step] = accuracy;
      accuracy -= 0.1;
    }
    curves[variant] = std::move(curve);
  }
  WriteAccuracySvg(curves, dir.Sub("accuracy.svg"));
  const std::string svg = testing_util::ReadFileToString(dir.Sub("accuracy.svg"));
  size_t count = 0;
  for (size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1)) {
    ++count;
  }
  EXPECT_EQ(count, 3u);
  EXPECT_NE(svg.find(">step<"), std::string::npos);
  EXPECT_NE(svg.find(">accuracy<"), std::string::npos);
}

TEST(SummaryTest, MirrorsTableLayouts) {
  testing_util::TempDir dir("md");
  std::map<std::string, AccuracyCurve> curves;
  AccuracyCurve curve;
  curve.steps = {0, 1};
  curve.mean[0] = 1.0;
  curve.mean[1] = 0.75;
  curves["base"] = curve;

  std::vector<AttackTrace> traces = {
      Trace(Label::kAD, Level::kLevel2,
            {Record(1, ActionKind::kDelete, PauseMark::kPeriod, std::nullopt,
                    "is # going", "it is # going to")})};
  std::vector<ContextTableEntry> context =
      BuildContextTable(traces, {1}, {1}, 5);
  LengthTable table = LengthFrequency(traces, {1});

  WriteSummaryMarkdown(curves, context, table, dir.Sub("summary.md"));
  const std::string md = testing_util::ReadFileToString(dir.Sub("summary.md"));
  EXPECT_NE(md.find("| rank | r=1, s=1 |"), std::string::npos);
  EXPECT_NE(md.find("is # going (1)"), std::string::npos);
  EXPECT_NE(md.find("step-1 A->N"), std::string::npos);
  EXPECT_NE(md.find("| Delete . |"), std::string::npos);
  EXPECT_NE(md.find("| base | 1 | 0.75 |"), std::string::npos);
}

}  // namespace
}  // namespace pauseprobe
