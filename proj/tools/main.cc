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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pauseprobe/analysis.h"
#include "pauseprobe/attack.h"
#include "pauseprobe/corpus.h"
#include "pauseprobe/dataset.h"
#include "pauseprobe/errors.h"
#include "pauseprobe/experiment.h"
#include "pauseprobe/ngram_model.h"
#include "pauseprobe/remote_classifier.h"

namespace {

namespace fs = std::filesystem;
using namespace pauseprobe;

// Exit codes: 0 success, 2 usage/config, 3 data, 4 remote.
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitRemote = 4;

struct GenCorpusArgs {
  GenConfig gen;
  std::string out_dir;
};

struct TrainArgs {
  std::string data_path;
  int level = 3;
  std::string out_path;
  TrainConfig train;
  QuantizationConfig thresholds;
};

struct AttackArgs {
  std::string data_path;
  std::string model_path;
  std::string endpoint;
  int level = 3;
  AttackConfig attack;
  std::string mode = "min";
  std::string out_dir;
  int workers = 1;
  double timeout_seconds = 30.0;
  QuantizationConfig thresholds;
};

struct ExperimentArgs {
  std::string train_path;
  std::string test_path;
  int level = 3;
  ExperimentConfig experiment;
  std::string out_dir;
  QuantizationConfig thresholds;
};

struct AnalyzeArgs {
  std::string traces_dir;
  std::string what;
  int r = 0;  // 0: both ranges
  std::vector<int> steps = {1, 5, 20};
  int top_k = 5;
  std::string out_dir;
};

void AddThresholdOptions(CLI::App* cmd, QuantizationConfig* cfg) {
  cmd->add_option("--t-comma", cfg->t_comma, "Comma pause threshold, seconds")
      ->capture_default_str();
  cmd->add_option("--t-semicolon", cfg->t_semicolon,
                  "Semicolon pause threshold, seconds")
      ->capture_default_str();
  cmd->add_option("--t-period", cfg->t_period,
                  "Period pause threshold, seconds")
      ->capture_default_str();
}

std::vector<Sample> LoadSamples(const std::string& path, int level,
                                const QuantizationConfig& thresholds) {
  return ToSamples(ReadJsonlFile(path), LevelFromNumber(level), thresholds);
}

int RunGenCorpus(const GenCorpusArgs& args) {
  GeneratedCorpus corpus = Generate(args.gen);
  fs::create_directories(args.out_dir);
  const fs::path dataset_path = fs::path(args.out_dir) / "dataset.jsonl";
  const fs::path truth_path = fs::path(args.out_dir) / "ground_truth.json";
  WriteJsonlFile(corpus.records, dataset_path.string());
  std::ofstream truth(truth_path);
  if (!truth) throw ConfigError("cannot write " + truth_path.string());
  truth << GroundTruthToJson(corpus.sensitive_gaps);
  std::cout << "samples=" << corpus.records.size() << "\n"
            << "dataset=" << dataset_path.string() << "\n"
            << "ground_truth=" << truth_path.string() << "\n";
  return 0;
}

int RunTrain(const TrainArgs& args) {
  std::vector<Sample> samples =
      LoadSamples(args.data_path, args.level, args.thresholds);
  NGramLogisticModel model = Train(samples, args.train);
  model.SaveFile(args.out_path);
  std::cout << "train_samples=" << samples.size() << "\n"
            << "clean_accuracy=" << Accuracy(model, samples) << "\n"
            << "model=" << args.out_path << "\n";
  return 0;
}

int RunAttackCmd(const AttackArgs& args) {
  if (args.model_path.empty() == args.endpoint.empty()) {
    throw ConfigError("exactly one of --model or --endpoint is required");
  }
  ValidateAttackConfig(args.attack);

  std::vector<Sample> samples =
      LoadSamples(args.data_path, args.level, args.thresholds);
  if (samples.empty()) throw DataError("dataset is empty");

  std::unique_ptr<Classifier> model;
  if (!args.model_path.empty()) {
    model = std::make_unique<NGramLogisticModel>(
        NGramLogisticModel::LoadFile(args.model_path));
  } else {
    model = std::make_unique<RemoteClassifier>(args.endpoint,
                                               args.timeout_seconds);
  }

  AttackConfig cfg = args.attack;
  cfg.level = LevelFromNumber(args.level);
  cfg.mode = *AttackModeFromToken(args.mode);

  std::vector<int> eval_steps;
  for (int k = 1; k <= cfg.max_steps; ++k) eval_steps.push_back(k);
  std::vector<AttackTrace> traces;
  std::map<int, double> curve = AttackedAccuracy(
      *model, samples, cfg.level, eval_steps, args.workers, &traces, cfg.mode);

  fs::create_directories(args.out_dir);
  for (const AttackTrace& trace : traces) {
    WriteTraceFile(trace,
                   (fs::path(args.out_dir) / (trace.sample_id + ".json")).string());
  }
  for (const auto& [step, accuracy] : curve) {
    std::cout << "step=" << step << " accuracy=" << accuracy << "\n";
  }
  std::cout << "traces=" << args.out_dir << "\n";
  return 0;
}

int RunExperimentCmd(const ExperimentArgs& args) {
  ExperimentConfig cfg = args.experiment;
  cfg.attack.level = LevelFromNumber(args.level);

  std::vector<Sample> train =
      LoadSamples(args.train_path, args.level, args.thresholds);
  std::vector<Sample> test =
      LoadSamples(args.test_path, args.level, args.thresholds);

  ExperimentReport report = RunExperiment(train, test, cfg);
  WriteExperimentBundle(report, args.out_dir);

  // Interpretability tables over the base-model traces of every round.
  std::vector<AttackTrace> base_traces;
  for (const auto& round : report.traces) {
    const std::vector<AttackTrace>& traces = round.at("base");
    base_traces.insert(base_traces.end(), traces.begin(), traces.end());
  }
  const std::vector<int> table_steps = {1, 5, 20};
  std::vector<ContextTableEntry> context =
      BuildContextTable(base_traces, {1, 2}, table_steps, 5);
  LengthTable length_table = LengthFrequency(base_traces, table_steps);
  WriteContextTableCsv(context,
                       (fs::path(args.out_dir) / "context_table.csv").string());
  WriteLengthTableCsv(length_table,
                      (fs::path(args.out_dir) / "length_table.csv").string());
  WriteAccuracySvg(report.curves,
                   (fs::path(args.out_dir) / "accuracy.svg").string());
  WriteSummaryMarkdown(report.curves, context, length_table,
                       (fs::path(args.out_dir) / "summary.md").string());

  for (const std::string& variant : report.variants) {
    const AccuracyCurve& curve = report.curves.at(variant);
    for (int step : curve.steps) {
      std::cout << "variant=" << variant << " step=" << step
                << " mean_accuracy=" << curve.mean.at(step) << "\n";
    }
  }
  std::cout << "report=" << args.out_dir << "\n";
  return 0;
}

int RunAnalyze(const AnalyzeArgs& args) {
  std::vector<std::string> paths;
  if (!fs::is_directory(args.traces_dir)) {
    throw ConfigError("not a trace directory: " + args.traces_dir);
  }
  for (const auto& entry : fs::recursive_directory_iterator(args.traces_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      paths.push_back(entry.path().string());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<AttackTrace> traces;
  traces.reserve(paths.size());
  for (const std::string& path : paths) traces.push_back(ReadTraceFile(path));

  fs::create_directories(args.out_dir);
  const std::map<std::string, AccuracyCurve> no_curves;
  if (args.what == "context") {
    std::vector<int> ranges = args.r == 0 ? std::vector<int>{1, 2}
                                          : std::vector<int>{args.r};
    std::vector<ContextTableEntry> context =
        BuildContextTable(traces, ranges, args.steps, args.top_k);
    const std::string csv =
        (fs::path(args.out_dir) / "context_table.csv").string();
    WriteContextTableCsv(context, csv);
    WriteSummaryMarkdown(no_curves, context, LengthTable{},
                         (fs::path(args.out_dir) / "summary.md").string());
    std::cout << "rows=" << context.size() << "\n" << "table=" << csv << "\n";
  } else {
    LengthTable table = LengthFrequency(traces, args.steps);
    const std::string csv =
        (fs::path(args.out_dir) / "length_table.csv").string();
    WriteLengthTableCsv(table, csv);
    WriteSummaryMarkdown(no_curves, {}, table,
                         (fs::path(args.out_dir) / "summary.md").string());
    std::cout << "rows=" << table.actions.size() << "\n"
              << "table=" << csv << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Quantizes speech pauses into punctuation, attacks a pluggable "
      "AD/non-AD transcript classifier by perturbing the punctuation, and "
      "reports accuracy, pause-context and pause-length analyses."};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Config file with key=value lines in per-subcommand sections");

  GenCorpusArgs gen_args;
  CLI::App* gen = app.add_subcommand(
      "gen-corpus", "Generate a synthetic planted-signal corpus");
  gen->add_option("--seed", gen_args.gen.seed, "PRNG seed")
      ->capture_default_str();
  gen->add_option("--n-ad", gen_args.gen.n_ad, "AD sample count")->required();
  gen->add_option("--n-non-ad", gen_args.gen.n_non_ad, "non-AD sample count")
      ->required();
  gen->add_option("--out", gen_args.out_dir, "Output directory")->required();
  gen->add_option("--p-sensitive", gen_args.gen.p_sensitive,
                  "Probability of a planted pause per AD sentence")
      ->capture_default_str();
  gen->add_option("--p-filler", gen_args.gen.p_filler_pause,
                  "Probability of a filler pause per gap")
      ->capture_default_str();
  AddThresholdOptions(gen, &gen_args.gen.thresholds);

  TrainArgs train_args;
  CLI::App* train = app.add_subcommand(
      "train", "Train the built-in n-gram logistic classifier");
  train->add_option("--data", train_args.data_path, "Dataset JSONL")->required();
  train->add_option("--level", train_args.level, "Pause level scheme")
      ->check(CLI::IsMember({1, 2, 3}))
      ->required();
  train->add_option("--out", train_args.out_path, "Model JSON path")->required();
  train->add_option("--lr", train_args.train.learning_rate, "Learning rate")
      ->capture_default_str();
  train->add_option("--epochs", train_args.train.epochs, "Training epochs")
      ->capture_default_str();
  train->add_option("--l2", train_args.train.l2, "L2 regularization")
      ->capture_default_str();
  train->add_option("--seed", train_args.train.seed, "Vocabulary order seed")
      ->capture_default_str();
  AddThresholdOptions(train, &train_args.thresholds);

  AttackArgs attack_args;
  CLI::App* attack = app.add_subcommand(
      "attack", "Run the greedy punctuation-perturbation attack");
  attack->add_option("--data", attack_args.data_path, "Dataset JSONL")
      ->required();
  attack->add_option("--model", attack_args.model_path, "Model JSON path");
  attack->add_option("--endpoint", attack_args.endpoint,
                     "Remote classifier endpoint (http://host:port)")
      ->envname("PAUSE_PROBE_ENDPOINT");
  attack->add_option("--level", attack_args.level, "Pause level scheme")
      ->check(CLI::IsMember({1, 2, 3}))
      ->required();
  attack->add_option("--max-steps", attack_args.attack.max_steps,
                     "Attack step budget")
      ->capture_default_str();
  attack->add_option("--mode", attack_args.mode, "min or max")
      ->check(CLI::IsMember({"min", "max"}))
      ->capture_default_str();
  attack->add_option("--out", attack_args.out_dir, "Trace output directory")
      ->required();
  attack->add_option("--workers", attack_args.workers,
                     "Concurrent sample attacks")
      ->capture_default_str();
  attack->add_option("--timeout", attack_args.timeout_seconds,
                     "Remote call timeout, seconds")
      ->capture_default_str();
  AddThresholdOptions(attack, &attack_args.thresholds);

  ExperimentArgs exp_args;
  CLI::App* experiment = app.add_subcommand(
      "experiment",
      "Adversarial attack + (reversed) adversarial training report");
  experiment->add_option("--train", exp_args.train_path, "Train JSONL")
      ->required();
  experiment->add_option("--test", exp_args.test_path, "Test JSONL")
      ->required();
  experiment->add_option("--level", exp_args.level, "Pause level scheme")
      ->check(CLI::IsMember({1, 2, 3}))
      ->required();
  experiment->add_option("--rounds", exp_args.experiment.rounds, "Rounds")
      ->capture_default_str();
  experiment->add_option("--seed", exp_args.experiment.seed,
                         "Base seed for per-round seeds")
      ->capture_default_str();
  experiment->add_option("--max-steps", exp_args.experiment.attack.max_steps,
                         "Attack step budget for adversarial sets")
      ->capture_default_str();
  experiment
      ->add_option("--eval-steps", exp_args.experiment.eval_steps,
                   "Attack budgets evaluated for the accuracy curves")
      ->capture_default_str();
  experiment->add_option("--lr", exp_args.experiment.train.learning_rate,
                         "Learning rate")
      ->capture_default_str();
  experiment->add_option("--epochs", exp_args.experiment.train.epochs,
                         "Training epochs")
      ->capture_default_str();
  experiment->add_option("--l2", exp_args.experiment.train.l2,
                         "L2 regularization")
      ->capture_default_str();
  experiment->add_option("--workers", exp_args.experiment.workers,
                         "Concurrent sample attacks")
      ->capture_default_str();
  experiment->add_option("--out", exp_args.out_dir, "Report directory")
      ->required();
  AddThresholdOptions(experiment, &exp_args.thresholds);

  AnalyzeArgs analyze_args;
  CLI::App* analyze =
      app.add_subcommand("analyze", "Context/length tables from trace files");
  analyze->add_option("--traces", analyze_args.traces_dir, "Trace directory")
      ->required();
  analyze->add_option("--what", analyze_args.what, "context or length")
      ->check(CLI::IsMember({"context", "length"}))
      ->required();
  analyze->add_option("--r", analyze_args.r, "Context range (default: both)")
      ->check(CLI::IsMember({1, 2}));
  analyze->add_option("--s", analyze_args.steps, "Cumulative step bounds")
      ->capture_default_str();
  analyze->add_option("--top-k", analyze_args.top_k, "Windows per cell")
      ->capture_default_str();
  analyze->add_option("--out", analyze_args.out_dir, "Output directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (app.got_subcommand(gen)) return RunGenCorpus(gen_args);
    if (app.got_subcommand(train)) return RunTrain(train_args);
    if (app.got_subcommand(attack)) return RunAttackCmd(attack_args);
    if (app.got_subcommand(experiment)) return RunExperimentCmd(exp_args);
    if (app.got_subcommand(analyze)) return RunAnalyze(analyze_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const RemoteError& e) {
    std::cerr << "remote error: " << e.what() << "\n";
    return kExitRemote;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
