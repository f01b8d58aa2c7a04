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

#include "pauseprobe/experiment.h"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "pauseprobe/errors.h"
#include "pauseprobe/parallel.h"
#include "pauseprobe/rng.h"
#include "text_format.h"

namespace pauseprobe {

namespace {

void ValidateEvalSteps(const std::vector<int>& eval_steps) {
  if (eval_steps.empty()) throw ConfigError("eval steps must be nonempty");
  int prev = 0;
  for (int step : eval_steps) {
    if (step <= prev) throw ConfigError("eval steps must be ascending and >= 1");
    prev = step;
  }
}

}  // namespace

std::vector<uint64_t> ResolveSeeds(const ExperimentConfig& cfg) {
  if (cfg.rounds < 1) throw ConfigError("rounds must be >= 1");
  if (!cfg.seeds.empty()) {
    if (cfg.seeds.size() != static_cast<size_t>(cfg.rounds)) {
      throw ConfigError("seed list length must equal rounds");
    }
    return cfg.seeds;
  }
  std::vector<uint64_t> seeds(cfg.rounds);
  SplitMix64 rng(cfg.seed);
  for (uint64_t& s : seeds) s = rng.Next();
  return seeds;
}

double Accuracy(const Classifier& model, const std::vector<Sample>& dataset) {
  if (dataset.empty()) throw DataError("accuracy over an empty dataset");
  int correct = 0;
  for (const Sample& sample : dataset) {
    if (Predict(model.Score(sample.transcript)) == sample.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(dataset.size());
}

std::vector<Sample> BuildAdversarialSet(const std::vector<Sample>& train,
                                        const Classifier& model,
                                        AttackMode mode,
                                        const AttackConfig& attack,
                                        int workers) {
  if (train.empty()) throw DataError("adversarial set over an empty train set");
  AttackConfig cfg = attack;
  cfg.mode = mode;

  std::vector<AttackTrace> traces(train.size());
  ParallelFor(static_cast<int>(train.size()), workers, [&](int i) {
    traces[i] = RunAttack(train[i], model, cfg);
  });

  std::vector<Sample> out = train;
  for (size_t i = 0; i < train.size(); ++i) {
    if (traces[i].steps.empty()) continue;  // final == original, skip
    Sample perturbed;
    perturbed.id = train[i].id + "-adv";
    perturbed.label = train[i].label;
    perturbed.transcript = traces[i].final_transcript;
    out.push_back(std::move(perturbed));
  }
  return out;
}

std::map<int, double> AttackedAccuracy(const Classifier& model,
                                       const std::vector<Sample>& test,
                                       Level level,
                                       const std::vector<int>& eval_steps,
                                       int workers,
                                       std::vector<AttackTrace>* traces_out,
                                       AttackMode mode) {
  if (test.empty()) throw DataError("attacked accuracy over an empty test set");
  ValidateEvalSteps(eval_steps);

  AttackConfig cfg;
  cfg.max_steps = eval_steps.back();
  cfg.mode = mode;
  cfg.level = level;

  const int n = static_cast<int>(test.size());
  std::vector<AttackTrace> traces(n);
  // correct[k][i]: prediction still right after the step-k budget. The
  // greedy attack at budget k is the k-step prefix of the full attack, so
  // one attack per sample covers every budget.
  std::map<int, std::vector<char>> correct;
  correct[0].assign(n, 0);
  for (int step : eval_steps) correct[step].assign(n, 0);

  ParallelFor(n, workers, [&](int i) {
    traces[i] = RunAttack(test[i], model, cfg);
    PausedTranscript current = test[i].transcript;
    correct.at(0)[i] =
        Predict(model.Score(current)) == test[i].label ? 1 : 0;
    size_t applied = 0;
    for (int step : eval_steps) {
      const size_t target =
          std::min(static_cast<size_t>(step), traces[i].steps.size());
      while (applied < target) {
        current = ApplyAction(current, traces[i].steps[applied].action);
        ++applied;
      }
      correct.at(step)[i] =
          Predict(model.Score(current)) == test[i].label ? 1 : 0;
    }
  });

  std::map<int, double> curve;
  for (const auto& [step, flags] : correct) {
    int right = 0;
    for (char c : flags) right += c;
    curve[step] = static_cast<double>(right) / static_cast<double>(n);
  }
  if (traces_out != nullptr) {
    for (AttackTrace& trace : traces) traces_out->push_back(std::move(trace));
  }
  return curve;
}

ExperimentReport RunExperiment(const std::vector<Sample>& train,
                               const std::vector<Sample>& test,
                               const ExperimentConfig& cfg) {
  if (train.empty()) throw DataError("experiment train set is empty");
  if (test.empty()) throw DataError("experiment test set is empty");
  ValidateEvalSteps(cfg.eval_steps);
  ValidateAttackConfig(cfg.attack);
  ValidateTrainConfig(cfg.train);
  const std::vector<uint64_t> seeds = ResolveSeeds(cfg);

  ExperimentReport report;
  report.level = cfg.attack.level;
  report.rounds = cfg.rounds;
  report.seeds = seeds;
  report.eval_steps = cfg.eval_steps;
  report.attack_max_steps = cfg.attack.max_steps;
  report.train = cfg.train;
  report.variants = {"base", "adv", "reversed"};

  for (const std::string& variant : report.variants) {
    AccuracyCurve& curve = report.curves[variant];
    curve.steps.push_back(0);
    for (int step : cfg.eval_steps) curve.steps.push_back(step);
  }

  for (int round = 0; round < cfg.rounds; ++round) {
    TrainConfig train_cfg = cfg.train;
    train_cfg.seed = seeds[round];

    NGramLogisticModel base = Train(train, train_cfg);
    std::vector<Sample> adv_set = BuildAdversarialSet(
        train, base, AttackMode::kMinimize, cfg.attack, cfg.workers);
    std::vector<Sample> rev_set = BuildAdversarialSet(
        train, base, AttackMode::kMaximize, cfg.attack, cfg.workers);
    NGramLogisticModel adv = Train(adv_set, train_cfg);
    NGramLogisticModel reversed = Train(rev_set, train_cfg);

    std::map<std::string, std::vector<AttackTrace>> round_traces;
    const std::vector<std::pair<std::string, const Classifier*>> models = {
        {"base", &base}, {"adv", &adv}, {"reversed", &reversed}};
    for (const auto& [variant, model] : models) {
      std::vector<AttackTrace> traces;
      std::map<int, double> curve = AttackedAccuracy(
          *model, test, cfg.attack.level, cfg.eval_steps, cfg.workers, &traces);
      for (const auto& [step, accuracy] : curve) {
        report.curves[variant].per_round[step].push_back(accuracy);
      }
      round_traces[variant] = std::move(traces);
    }
    report.traces.push_back(std::move(round_traces));
  }

  for (auto& [variant, curve] : report.curves) {
    for (const auto& [step, values] : curve.per_round) {
      double sum = 0.0;
      for (double v : values) sum += v;
      curve.mean[step] = sum / static_cast<double>(values.size());
    }
  }
  return report;
}

void WriteExperimentBundle(const ExperimentReport& report,
                           const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  {
    std::ofstream out(fs::path(out_dir) / "curves.csv");
    if (!out) throw ConfigError("cannot write curves.csv under " + out_dir);
    out << "variant,step,mean_accuracy";
    for (int r = 1; r <= report.rounds; ++r) out << ",round_" << r;
    out << '\n';
    for (const std::string& variant : report.variants) {
      const AccuracyCurve& curve = report.curves.at(variant);
      for (int step : curve.steps) {
        out << variant << ',' << step << ','
            << FormatDouble(curve.mean.at(step));
        for (double v : curve.per_round.at(step)) out << ',' << FormatDouble(v);
        out << '\n';
      }
    }
  }

  {
    nlohmann::json obj;
    obj["level"] = LevelNumber(report.level);
    obj["rounds"] = report.rounds;
    obj["seeds"] = report.seeds;
    obj["eval_steps"] = report.eval_steps;
    obj["attack_max_steps"] = report.attack_max_steps;
    obj["train"] = {{"learning_rate", report.train.learning_rate},
                    {"epochs", report.train.epochs},
                    {"l2", report.train.l2}};
    obj["variants"] = report.variants;
    std::ofstream out(fs::path(out_dir) / "experiment.json");
    if (!out) throw ConfigError("cannot write experiment.json under " + out_dir);
    out << obj.dump(2) << '\n';
  }

  for (size_t round = 0; round < report.traces.size(); ++round) {
    for (const auto& [variant, traces] : report.traces[round]) {
      fs::path dir = fs::path(out_dir) / "traces" /
                     ("round" + std::to_string(round + 1)) / variant;
      fs::create_directories(dir);
      for (const AttackTrace& trace : traces) {
        WriteTraceFile(trace, (dir / (trace.sample_id + ".json")).string());
      }
    }
  }
}

}  // namespace pauseprobe
