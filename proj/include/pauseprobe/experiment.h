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

#ifndef PAUSEPROBE_EXPERIMENT_H_
#define PAUSEPROBE_EXPERIMENT_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pauseprobe/attack.h"
#include "pauseprobe/classifier.h"
#include "pauseprobe/ngram_model.h"
#include "pauseprobe/transcript.h"

namespace pauseprobe {

struct ExperimentConfig {
  int rounds = 10;
  // One seed per round; when empty, seeds are drawn from SplitMix64(seed).
  std::vector<uint64_t> seeds;
  uint64_t seed = 0;
  AttackConfig attack;
  TrainConfig train;
  std::vector<int> eval_steps = {1, 5, 20};
  int workers = 1;
};

// Throws ConfigError on rounds < 1, non-ascending eval steps or a seed list
// whose length disagrees with rounds. Returns the per-round seeds.
std::vector<uint64_t> ResolveSeeds(const ExperimentConfig& cfg);

// Fraction of samples whose predicted label matches the true label.
double Accuracy(const Classifier& model, const std::vector<Sample>& dataset);

// Originals plus the final perturbed sample of each attack (ids suffixed
// "-adv", labels kept). Samples whose attack accepts no step contribute
// only their original. Minimize builds the standard adversarial set,
// Maximize the reversed one.
std::vector<Sample> BuildAdversarialSet(const std::vector<Sample>& train,
                                        const Classifier& model,
                                        AttackMode mode,
                                        const AttackConfig& attack,
                                        int workers = 1);

// Accuracy at each attack budget for one model: step 0 is clean accuracy;
// step k scores the test set attacked with max_steps = k (Minimize unless
// overridden). The greedy attack at budget k is the k-step prefix of the
// attack at the largest budget, so each sample is attacked once and
// prefixes are rescored. Appends the full-budget traces to traces_out when
// given.
std::map<int, double> AttackedAccuracy(
    const Classifier& model, const std::vector<Sample>& test, Level level,
    const std::vector<int>& eval_steps, int workers = 1,
    std::vector<AttackTrace>* traces_out = nullptr,
    AttackMode mode = AttackMode::kMinimize);

struct AccuracyCurve {
  std::vector<int> steps;                     // 0 then the eval steps
  std::map<int, double> mean;                 // step -> mean over rounds
  std::map<int, std::vector<double>> per_round;
};

struct ExperimentReport {
  Level level = Level::kLevel3;
  int rounds = 0;
  std::vector<uint64_t> seeds;
  std::vector<int> eval_steps;
  int attack_max_steps = 0;
  TrainConfig train;
  std::vector<std::string> variants;          // base, adv, reversed
  std::map<std::string, AccuracyCurve> curves;
  // traces[round][variant] -> one trace per test sample
  std::vector<std::map<std::string, std::vector<AttackTrace>>> traces;
};

// Per round: trains the base model, builds both adversarial sets, retrains
// the two augmented models and evaluates all three under attack. Curves
// average over rounds. Deterministic given datasets and config.
ExperimentReport RunExperiment(const std::vector<Sample>& train,
                               const std::vector<Sample>& test,
                               const ExperimentConfig& cfg);

// curves.csv (variant,step,mean_accuracy,round_1..round_R), experiment.json
// (resolved config echo) and traces/round<k>/<variant>/<sample id>.json.
void WriteExperimentBundle(const ExperimentReport& report,
                           const std::string& out_dir);

}  // namespace pauseprobe

#endif  // PAUSEPROBE_EXPERIMENT_H_
