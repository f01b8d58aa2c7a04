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

#ifndef PAUSEPROBE_ANALYSIS_H_
#define PAUSEPROBE_ANALYSIS_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pauseprobe/attack.h"
#include "pauseprobe/context_window.h"
#include "pauseprobe/experiment.h"
#include "pauseprobe/pause_mark.h"

namespace pauseprobe {

struct ContextQuery {
  int r = 1;                // window range, 1 or 2
  int cumulative_step = 1;  // include records with step <= this
  int top_k = 5;
};

// Throws ConfigError unless r is 1 or 2, the step bound >= 1 and top_k >= 1.
void ValidateContextQuery(const ContextQuery& q);

// Window counts over all records with step <= q.cumulative_step across all
// traces, ranked by count descending; equal counts order lexicographically
// by window string. Traces must share one level (DataError otherwise).
std::vector<std::pair<std::string, int>> ContextFrequency(
    const std::vector<AttackTrace>& traces, const ContextQuery& q);

// Row label of an action as perturbation tables render it: "Add ,",
// "Delete .", "Replace ,->.".
std::string ActionSignature(ActionKind kind, std::optional<PauseMark> prev,
                            std::optional<PauseMark> mark);

// All signatures a level admits, in table order: adds ascending, short->long
// replaces, deletes ascending, long->short replaces.
std::vector<std::string> SignaturesForLevel(Level level);

enum class Direction { kTowardAD, kTowardNonAD, kNeutral };

// Group 1 (add, short->long replace) shifts inference toward AD; Group 2
// (delete, long->short replace) toward non-AD. Every valid action falls in
// one group; kNeutral never occurs and exists for schema completeness.
Direction ClassifyDirection(ActionKind kind, std::optional<PauseMark> prev,
                            std::optional<PauseMark> mark);

struct LengthCell {
  long a_to_n = 0;  // actions in traces of AD-labeled samples
  long n_to_a = 0;  // actions in traces of non-AD-labeled samples

  bool operator==(const LengthCell& other) const = default;
};

struct LengthTable {
  Level level = Level::kLevel3;
  std::vector<int> steps;             // cumulative step bounds (columns)
  std::vector<std::string> actions;   // SignaturesForLevel order (rows)
  std::vector<std::vector<LengthCell>> cells;  // [row][column]

  const LengthCell& At(const std::string& action, int step) const;
};

// Cumulative per-action counts split by the attacked sample's true label.
// Traces must share one level (DataError otherwise).
LengthTable LengthFrequency(const std::vector<AttackTrace>& traces,
                            const std::vector<int>& steps);

// One Table-1-shaped block: the top windows for a (r, s) cell.
struct ContextTableEntry {
  Level level = Level::kLevel3;
  int r = 0;
  int s = 0;
  int rank = 0;  // 1-based
  std::string window;
  int count = 0;
};

// Full grid of ContextFrequency over ranges x step bounds.
std::vector<ContextTableEntry> BuildContextTable(
    const std::vector<AttackTrace>& traces, const std::vector<int>& ranges,
    const std::vector<int>& steps, int top_k);

// Report files. CSV columns:
//   context_table.csv  level,r,s,rank,window,count
//   length_table.csv   level,action,step,a_to_n,n_to_a
void WriteContextTableCsv(const std::vector<ContextTableEntry>& entries,
                          const std::string& path);
std::vector<ContextTableEntry> ReadContextTableCsv(const std::string& path);
void WriteLengthTableCsv(const LengthTable& table, const std::string& path);
LengthTable ReadLengthTableCsv(const std::string& path);

// Line chart of the accuracy curves: one polyline per variant, axes
// labeled step and accuracy.
void WriteAccuracySvg(const std::map<std::string, AccuracyCurve>& curves,
                      const std::string& path);

// Markdown mirror of the context and length tables plus the curves.
void WriteSummaryMarkdown(const std::map<std::string, AccuracyCurve>& curves,
                          const std::vector<ContextTableEntry>& context,
                          const LengthTable& length_table,
                          const std::string& path);

}  // namespace pauseprobe

#endif  // PAUSEPROBE_ANALYSIS_H_
