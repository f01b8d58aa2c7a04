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

#ifndef PAUSEPROBE_ATTACK_H_
#define PAUSEPROBE_ATTACK_H_

#include <optional>
#include <string>
#include <vector>

#include "pauseprobe/classifier.h"
#include "pauseprobe/transcript.h"

namespace pauseprobe {

enum class ActionKind { kAdd = 0, kDelete = 1, kReplace = 2 };

const char* ActionKindToken(ActionKind kind);
std::optional<ActionKind> ActionKindFromToken(const std::string& token);

// One punctuation perturbation. Add inserts `mark` into an empty gap,
// Delete clears an occupied gap (mark unset), Replace swaps the occupied
// gap's mark for a different `mark`.
struct Action {
  ActionKind kind = ActionKind::kAdd;
  int gap = 0;
  std::optional<PauseMark> mark;

  bool operator==(const Action& other) const = default;
};

// Canonical action order: gap ascending, then Add < Delete < Replace, then
// mark ascending. Ties in candidate confidence are broken by this order.
bool CanonicalLess(const Action& a, const Action& b);

// All valid actions for t under its level, in canonical order. With G gaps
// of which E are occupied and M admitted marks, the count is
// (G - E) * M + E + E * (M - 1).
std::vector<Action> EnumerateActions(const PausedTranscript& t);

// New transcript differing from t only at a.gap; words unchanged. Throws
// std::invalid_argument when the action is invalid for t.
PausedTranscript ApplyAction(const PausedTranscript& t, const Action& a);

enum class AttackMode { kMinimize = 0, kMaximize = 1 };

const char* AttackModeToken(AttackMode mode);
std::optional<AttackMode> AttackModeFromToken(const std::string& token);

struct AttackConfig {
  int max_steps = 20;
  AttackMode mode = AttackMode::kMinimize;
  Level level = Level::kLevel3;
};

// Throws ConfigError when max_steps < 1.
void ValidateAttackConfig(const AttackConfig& cfg);

// One accepted perturbation. Context windows are captured at the acted gap
// from the pre-action transcript for Delete/Replace (the pause being
// removed or changed) and from the post-action transcript for Add (the
// inserted pause). prev_mark is the mark removed or replaced, unset for
// Add.
struct StepRecord {
  int step = 0;  // 1-based
  Action action;
  std::optional<PauseMark> prev_mark;
  std::string context_r1;
  std::string context_r2;
  double confidence_before = 0.0;
  double confidence_after = 0.0;

  bool operator==(const StepRecord& other) const = default;
};

struct AttackTrace {
  std::string sample_id;
  Label label = Label::kNonAD;
  AttackMode mode = AttackMode::kMinimize;
  Level level = Level::kLevel3;
  std::vector<StepRecord> steps;
  // Perturbed transcript after the last step. Traces parsed back from disk
  // carry only the final marks; words are restored as empty placeholders.
  PausedTranscript final_transcript;

  bool operator==(const AttackTrace& other) const = default;
};

struct StepResult {
  PausedTranscript transcript;
  StepRecord record;
};

// One greedy step: scores every candidate action applied to t and picks
// the strict best for the mode (lowest confidence below the current level
// when minimizing, highest above when maximizing). Equal-confidence
// candidates resolve to the earliest in canonical order. Returns nullopt
// when no candidate strictly improves. `workers` only fans out candidate
// scoring; the result is identical for any worker count.
std::optional<StepResult> AttackStep(const PausedTranscript& t, Label label,
                                     const Classifier& model, AttackMode mode,
                                     int workers = 1);

// Iterates AttackStep from s.transcript until no step improves or
// cfg.max_steps is reached. Classifier errors propagate; no partial trace
// is returned.
AttackTrace RunAttack(const Sample& s, const Classifier& model,
                      const AttackConfig& cfg, int workers = 1);

// Trace JSON: {"sample_id","label","mode","scheme","steps":[...],
// "final_marks":[...]}. Steps carry kind/gap/mark/prev_mark, both context
// windows and the before/after confidences. write -> parse -> write is
// byte-identical.
std::string TraceToJson(const AttackTrace& trace);
AttackTrace TraceFromJson(const std::string& text);  // DataError
void WriteTraceFile(const AttackTrace& trace, const std::string& path);
AttackTrace ReadTraceFile(const std::string& path);

}  // namespace pauseprobe

#endif  // PAUSEPROBE_ATTACK_H_
