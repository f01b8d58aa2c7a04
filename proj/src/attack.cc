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

#include "pauseprobe/attack.h"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"
#include "pauseprobe/context_window.h"
#include "pauseprobe/errors.h"
#include "pauseprobe/parallel.h"

namespace pauseprobe {

namespace {

using nlohmann::json;

int MarkOrdinal(const std::optional<PauseMark>& mark) {
  return mark.has_value() ? MarkRank(*mark) : -1;
}

json OptionalMarkToJson(const std::optional<PauseMark>& mark) {
  if (mark.has_value()) return json(MarkToken(*mark));
  return json(nullptr);
}

std::optional<PauseMark> OptionalMarkFromJson(const json& value,
                                              const std::string& where) {
  if (value.is_null()) return std::nullopt;
  if (value.is_string()) {
    std::optional<PauseMark> mark = MarkFromToken(value.get<std::string>());
    if (mark) return mark;
  }
  throw DataError("trace " + where + ": expected null, \",\", \";\" or \".\"");
}

}  // namespace

const char* ActionKindToken(ActionKind kind) {
  switch (kind) {
    case ActionKind::kAdd:
      return "add";
    case ActionKind::kDelete:
      return "delete";
    case ActionKind::kReplace:
      return "replace";
  }
  return "?";
}

std::optional<ActionKind> ActionKindFromToken(const std::string& token) {
  if (token == "add") return ActionKind::kAdd;
  if (token == "delete") return ActionKind::kDelete;
  if (token == "replace") return ActionKind::kReplace;
  return std::nullopt;
}

const char* AttackModeToken(AttackMode mode) {
  return mode == AttackMode::kMinimize ? "min" : "max";
}

std::optional<AttackMode> AttackModeFromToken(const std::string& token) {
  if (token == "min") return AttackMode::kMinimize;
  if (token == "max") return AttackMode::kMaximize;
  return std::nullopt;
}

bool CanonicalLess(const Action& a, const Action& b) {
  return std::make_tuple(a.gap, static_cast<int>(a.kind), MarkOrdinal(a.mark)) <
         std::make_tuple(b.gap, static_cast<int>(b.kind), MarkOrdinal(b.mark));
}

std::vector<Action> EnumerateActions(const PausedTranscript& t) {
  const std::vector<PauseMark>& admitted = AdmittedMarks(t.level);
  std::vector<Action> actions;
  for (int gap = 0; gap < t.GapCount(); ++gap) {
    const std::optional<PauseMark>& current = t.gaps[gap];
    if (!current.has_value()) {
      for (PauseMark mark : admitted) {
        actions.push_back(Action{ActionKind::kAdd, gap, mark});
      }
    } else {
      actions.push_back(Action{ActionKind::kDelete, gap, std::nullopt});
      for (PauseMark mark : admitted) {
        if (mark != *current) {
          actions.push_back(Action{ActionKind::kReplace, gap, mark});
        }
      }
    }
  }
  return actions;
}

PausedTranscript ApplyAction(const PausedTranscript& t, const Action& a) {
  if (a.gap < 0 || a.gap >= t.GapCount()) {
    throw std::invalid_argument("action gap " + std::to_string(a.gap) +
                                " out of range");
  }
  const std::optional<PauseMark>& current = t.gaps[a.gap];
  PausedTranscript out = t;
  switch (a.kind) {
    case ActionKind::kAdd:
      if (current.has_value()) {
        throw std::invalid_argument("add on an occupied gap");
      }
      if (!a.mark.has_value() || !Admits(t.level, *a.mark)) {
        throw std::invalid_argument("add requires a mark admitted by the level");
      }
      out.gaps[a.gap] = a.mark;
      break;
    case ActionKind::kDelete:
      if (!current.has_value()) {
        throw std::invalid_argument("delete on an empty gap");
      }
      out.gaps[a.gap] = std::nullopt;
      break;
    case ActionKind::kReplace:
      if (!current.has_value()) {
        throw std::invalid_argument("replace on an empty gap");
      }
      if (!a.mark.has_value() || !Admits(t.level, *a.mark)) {
        throw std::invalid_argument(
            "replace requires a mark admitted by the level");
      }
      if (*a.mark == *current) {
        throw std::invalid_argument("replace must change the mark");
      }
      out.gaps[a.gap] = a.mark;
      break;
  }
  return out;
}

void ValidateAttackConfig(const AttackConfig& cfg) {
  if (cfg.max_steps < 1) throw ConfigError("max_steps must be >= 1");
}

std::optional<StepResult> AttackStep(const PausedTranscript& t, Label label,
                                     const Classifier& model, AttackMode mode,
                                     int workers) {
  const double base_confidence = Confidence(label, model.Score(t));
  const std::vector<Action> actions = EnumerateActions(t);
  if (actions.empty()) return std::nullopt;

  std::vector<PausedTranscript> candidates(actions.size());
  std::vector<double> confidences(actions.size());
  ParallelFor(static_cast<int>(actions.size()), workers, [&](int i) {
    candidates[i] = ApplyAction(t, actions[i]);
    confidences[i] = Confidence(label, model.Score(candidates[i]));
  });

  // Strict argmin (or argmax) in canonical order; the first best wins ties.
  int best = -1;
  double best_confidence = base_confidence;
  for (size_t i = 0; i < actions.size(); ++i) {
    const bool improves = mode == AttackMode::kMinimize
                              ? confidences[i] < best_confidence
                              : confidences[i] > best_confidence;
    if (improves) {
      best = static_cast<int>(i);
      best_confidence = confidences[i];
    }
  }
  if (best < 0) return std::nullopt;

  const Action& action = actions[best];
  StepRecord record;
  record.action = action;
  record.prev_mark = action.kind == ActionKind::kAdd ? std::nullopt
                                                     : t.gaps[action.gap];
  // Delete/Replace windows come from the pre-action transcript, Add windows
  // from the post-action one, so the window always covers a present pause.
  const PausedTranscript& context_source =
      action.kind == ActionKind::kAdd ? candidates[best] : t;
  record.context_r1 = ExtractContext(context_source, action.gap, 1);
  record.context_r2 = ExtractContext(context_source, action.gap, 2);
  record.confidence_before = base_confidence;
  record.confidence_after = best_confidence;
  return StepResult{std::move(candidates[best]), std::move(record)};
}

AttackTrace RunAttack(const Sample& s, const Classifier& model,
                      const AttackConfig& cfg, int workers) {
  ValidateAttackConfig(cfg);
  AttackTrace trace;
  trace.sample_id = s.id;
  trace.label = s.label;
  trace.mode = cfg.mode;
  trace.level = s.transcript.level;
  trace.final_transcript = s.transcript;
  for (int step = 1; step <= cfg.max_steps; ++step) {
    std::optional<StepResult> result =
        AttackStep(trace.final_transcript, s.label, model, cfg.mode, workers);
    if (!result.has_value()) break;
    result->record.step = step;
    trace.steps.push_back(std::move(result->record));
    trace.final_transcript = std::move(result->transcript);
  }
  return trace;
}

std::string TraceToJson(const AttackTrace& trace) {
  json obj;
  obj["sample_id"] = trace.sample_id;
  obj["label"] = LabelToken(trace.label);
  obj["mode"] = AttackModeToken(trace.mode);
  obj["scheme"] = LevelNumber(trace.level);
  json steps = json::array();
  for (const StepRecord& record : trace.steps) {
    json step;
    step["step"] = record.step;
    step["kind"] = ActionKindToken(record.action.kind);
    step["gap"] = record.action.gap;
    step["mark"] = OptionalMarkToJson(record.action.mark);
    step["prev_mark"] = OptionalMarkToJson(record.prev_mark);
    step["context_r1"] = record.context_r1;
    step["context_r2"] = record.context_r2;
    step["confidence_before"] = record.confidence_before;
    step["confidence_after"] = record.confidence_after;
    steps.push_back(std::move(step));
  }
  obj["steps"] = std::move(steps);
  json final_marks = json::array();
  for (const std::optional<PauseMark>& mark : trace.final_transcript.gaps) {
    final_marks.push_back(OptionalMarkToJson(mark));
  }
  obj["final_marks"] = std::move(final_marks);
  return obj.dump(2) + "\n";
}

AttackTrace TraceFromJson(const std::string& text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("trace JSON: ") + e.what());
  }
  if (!obj.is_object()) throw DataError("trace JSON must be an object");

  AttackTrace trace;
  try {
    trace.sample_id = obj.at("sample_id").get<std::string>();
    std::optional<Label> label =
        LabelFromToken(obj.at("label").get<std::string>());
    if (!label) throw DataError("trace label must be \"AD\" or \"non-AD\"");
    trace.label = *label;
    std::optional<AttackMode> mode =
        AttackModeFromToken(obj.at("mode").get<std::string>());
    if (!mode) throw DataError("trace mode must be \"min\" or \"max\"");
    trace.mode = *mode;
    trace.level = LevelFromNumber(obj.at("scheme").get<int>());

    for (const json& step : obj.at("steps")) {
      StepRecord record;
      record.step = step.at("step").get<int>();
      std::optional<ActionKind> kind =
          ActionKindFromToken(step.at("kind").get<std::string>());
      if (!kind) throw DataError("trace step kind must be add/delete/replace");
      record.action.kind = *kind;
      record.action.gap = step.at("gap").get<int>();
      record.action.mark = OptionalMarkFromJson(step.at("mark"), "step mark");
      record.prev_mark =
          OptionalMarkFromJson(step.at("prev_mark"), "step prev_mark");
      record.context_r1 = step.at("context_r1").get<std::string>();
      record.context_r2 = step.at("context_r2").get<std::string>();
      record.confidence_before = step.at("confidence_before").get<double>();
      record.confidence_after = step.at("confidence_after").get<double>();
      trace.steps.push_back(std::move(record));
    }

    // The schema stores final marks only; restore placeholder words so the
    // gap/word sizes line up.
    for (const json& mark : obj.at("final_marks")) {
      trace.final_transcript.gaps.push_back(
          OptionalMarkFromJson(mark, "final mark"));
    }
    trace.final_transcript.words.assign(trace.final_transcript.gaps.size() + 1,
                                        std::string());
    trace.final_transcript.level = trace.level;
  } catch (const json::exception& e) {
    throw DataError(std::string("trace JSON: ") + e.what());
  }
  return trace;
}

void WriteTraceFile(const AttackTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write trace file: " + path);
  out << TraceToJson(trace);
}

AttackTrace ReadTraceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open trace file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return TraceFromJson(text.str());
}

}  // namespace pauseprobe
