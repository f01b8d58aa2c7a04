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

#include "pauseprobe/ngram_model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pauseprobe/errors.h"
#include "pauseprobe/rng.h"

namespace pauseprobe {

namespace {

using nlohmann::json;

const char* LengthBucket(size_t word_count) {
  if (word_count <= 10) return "le10";
  if (word_count <= 25) return "11-25";
  if (word_count <= 50) return "26-50";
  return "gt50";
}

// log(1 + exp(-|z|)) + max(z, 0) is the stable form of log(1 + exp(z)).
double LogOnePlusExp(double z) {
  return std::log1p(std::exp(-std::abs(z))) + std::max(z, 0.0);
}

double Sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

FeatureCounts ExtractFeatures(const PausedTranscript& t) {
  FeatureCounts counts;
  for (const std::string& word : t.words) {
    counts["w:" + word] += 1.0;
  }
  for (size_t i = 0; i < t.gaps.size(); ++i) {
    if (!t.gaps[i].has_value()) continue;
    const std::string tok = MarkToken(*t.gaps[i]);
    const std::string& prev = t.words[i];
    const std::string& next = t.words[i + 1];
    counts["wm:" + prev + ":" + tok] += 1.0;
    counts["mw:" + tok + ":" + next] += 1.0;
    counts["wmw:" + prev + ":" + tok + ":" + next] += 1.0;
    counts["m:" + tok] += 1.0;
  }
  counts[std::string("len:") + LengthBucket(t.words.size())] += 1.0;
  return counts;
}

void ValidateTrainConfig(const TrainConfig& cfg) {
  if (!(cfg.learning_rate > 0.0)) {
    throw ConfigError("learning rate must be positive");
  }
  if (cfg.epochs < 1) throw ConfigError("epochs must be >= 1");
  if (cfg.l2 < 0.0) throw ConfigError("l2 must be non-negative");
}

NGramLogisticModel::NGramLogisticModel(std::vector<std::string> vocabulary,
                                       std::vector<double> weights, double bias)
    : vocabulary_(std::move(vocabulary)),
      weights_(std::move(weights)),
      bias_(bias) {
  if (vocabulary_.size() != weights_.size()) {
    throw ConfigError("model vocabulary and weights differ in length");
  }
  index_.reserve(vocabulary_.size());
  for (size_t i = 0; i < vocabulary_.size(); ++i) {
    if (!index_.emplace(vocabulary_[i], static_cast<int>(i)).second) {
      throw ConfigError("duplicate feature in vocabulary: " + vocabulary_[i]);
    }
  }
}

Logits NGramLogisticModel::Score(const PausedTranscript& t) const {
  // FeatureCounts iterates lexicographically, so the sum order does not
  // depend on how the vocabulary is permuted.
  double z = bias_;
  for (const auto& [feature, count] : ExtractFeatures(t)) {
    auto it = index_.find(feature);
    if (it != index_.end()) z += weights_[it->second] * count;
  }
  return Logits{z, -z};
}

std::string NGramLogisticModel::ToJson() const {
  json obj;
  obj["descriptor"] = Descriptor();
  obj["vocabulary"] = vocabulary_;
  obj["weights"] = weights_;
  obj["bias"] = bias_;
  return obj.dump(2) + "\n";
}

NGramLogisticModel NGramLogisticModel::FromJson(const std::string& text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("model JSON: ") + e.what());
  }
  if (!obj.is_object() || !obj.contains("vocabulary") ||
      !obj.contains("weights") || !obj.contains("bias")) {
    throw DataError("model JSON must contain vocabulary, weights and bias");
  }
  std::vector<std::string> vocabulary;
  for (const json& f : obj["vocabulary"]) {
    if (!f.is_string()) throw DataError("model vocabulary must be strings");
    vocabulary.push_back(f.get<std::string>());
  }
  std::vector<double> weights;
  for (const json& w : obj["weights"]) {
    if (!w.is_number()) throw DataError("model weights must be numbers");
    weights.push_back(w.get<double>());
  }
  if (!obj["bias"].is_number()) throw DataError("model bias must be a number");
  if (vocabulary.size() != weights.size()) {
    throw DataError("model vocabulary and weights differ in length");
  }
  for (double w : weights) {
    if (!std::isfinite(w)) throw DataError("model weights must be finite");
  }
  return NGramLogisticModel(std::move(vocabulary), std::move(weights),
                            obj["bias"].get<double>());
}

void NGramLogisticModel::SaveFile(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write model file: " + path);
  out << ToJson();
}

NGramLogisticModel NGramLogisticModel::LoadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return FromJson(text.str());
}

LogisticProblem::LogisticProblem(std::vector<std::vector<Entry>> rows,
                                 std::vector<double> labels, int dimension,
                                 double l2)
    : rows_(std::move(rows)),
      labels_(std::move(labels)),
      dimension_(dimension),
      l2_(l2) {
  if (rows_.size() != labels_.size()) {
    throw ConfigError("rows and labels differ in length");
  }
}

LogisticProblem::LogisticProblem(const std::vector<Sample>& dataset,
                                 const std::vector<std::string>& vocabulary,
                                 double l2)
    : dimension_(static_cast<int>(vocabulary.size())), l2_(l2) {
  std::unordered_map<std::string, int> index;
  index.reserve(vocabulary.size());
  for (size_t i = 0; i < vocabulary.size(); ++i) {
    index.emplace(vocabulary[i], static_cast<int>(i));
  }
  rows_.reserve(dataset.size());
  labels_.reserve(dataset.size());
  for (const Sample& sample : dataset) {
    std::vector<Entry> row;
    for (const auto& [feature, count] : ExtractFeatures(sample.transcript)) {
      auto it = index.find(feature);
      if (it != index.end()) row.push_back(Entry{it->second, count});
    }
    std::sort(row.begin(), row.end(),
              [](const Entry& a, const Entry& b) { return a.feature < b.feature; });
    rows_.push_back(std::move(row));
    labels_.push_back(sample.label == Label::kAD ? 1.0 : 0.0);
  }
}

double LogisticProblem::Loss(const std::vector<double>& weights,
                             double bias) const {
  double total = 0.0;
  for (size_t i = 0; i < rows_.size(); ++i) {
    double z = bias;
    for (const Entry& e : rows_[i]) z += weights[e.feature] * e.count;
    // Cross-entropy: log(1 + exp(z)) - y * z.
    total += LogOnePlusExp(z) - labels_[i] * z;
  }
  double loss = total / static_cast<double>(rows_.size());
  double reg = 0.0;
  for (double w : weights) reg += w * w;
  return loss + 0.5 * l2_ * reg;
}

void LogisticProblem::Gradient(const std::vector<double>& weights, double bias,
                               std::vector<double>* grad_weights,
                               double* grad_bias) const {
  grad_weights->assign(dimension_, 0.0);
  double gb = 0.0;
  for (size_t i = 0; i < rows_.size(); ++i) {
    double z = bias;
    for (const Entry& e : rows_[i]) z += weights[e.feature] * e.count;
    double residual = Sigmoid(z) - labels_[i];
    for (const Entry& e : rows_[i]) {
      (*grad_weights)[e.feature] += residual * e.count;
    }
    gb += residual;
  }
  double inv_n = 1.0 / static_cast<double>(rows_.size());
  for (int j = 0; j < dimension_; ++j) {
    (*grad_weights)[j] = (*grad_weights)[j] * inv_n + l2_ * weights[j];
  }
  *grad_bias = gb * inv_n;
}

std::vector<std::string> BuildVocabulary(const std::vector<Sample>& dataset,
                                         uint64_t seed) {
  std::map<std::string, int> seen;
  for (const Sample& sample : dataset) {
    for (const auto& [feature, count] : ExtractFeatures(sample.transcript)) {
      seen[feature] += 1;
    }
  }
  std::vector<std::string> vocabulary;
  vocabulary.reserve(seen.size());
  for (const auto& [feature, count] : seen) vocabulary.push_back(feature);
  SplitMix64 rng(seed);
  rng.Shuffle(&vocabulary);
  return vocabulary;
}

NGramLogisticModel Train(const std::vector<Sample>& dataset,
                         const TrainConfig& cfg) {
  ValidateTrainConfig(cfg);
  if (dataset.empty()) throw DataError("training set is empty");
  bool has_ad = false;
  bool has_non_ad = false;
  for (const Sample& sample : dataset) {
    (sample.label == Label::kAD ? has_ad : has_non_ad) = true;
  }
  if (!has_ad || !has_non_ad) {
    throw DataError("training set must contain both AD and non-AD samples");
  }

  std::vector<std::string> vocabulary = BuildVocabulary(dataset, cfg.seed);
  LogisticProblem problem(dataset, vocabulary, cfg.l2);

  std::vector<double> weights(vocabulary.size(), 0.0);
  double bias = 0.0;
  std::vector<double> grad_w;
  double grad_b = 0.0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    problem.Gradient(weights, bias, &grad_w, &grad_b);
    for (size_t j = 0; j < weights.size(); ++j) {
      weights[j] -= cfg.learning_rate * grad_w[j];
    }
    bias -= cfg.learning_rate * grad_b;
  }
  return NGramLogisticModel(std::move(vocabulary), std::move(weights), bias);
}

}  // namespace pauseprobe
