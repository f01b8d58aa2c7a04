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

#ifndef PAUSEPROBE_NGRAM_MODEL_H_
#define PAUSEPROBE_NGRAM_MODEL_H_

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "pauseprobe/classifier.h"
#include "pauseprobe/transcript.h"

namespace pauseprobe {

// Ordered by feature string so that dot products sum in a fixed order no
// matter how the vocabulary is permuted.
using FeatureCounts = std::map<std::string, double>;

// Sparse counts over:
//   w:<word>                    word unigrams
//   wm:<word>:<mark>            word left of a mark
//   mw:<mark>:<word>            word right of a mark
//   wmw:<word>:<mark>:<word>    mark with both neighbors
//   m:<mark>                    per-mark-kind totals
//   len:<bucket>                word count bucket (le10, 11-25, 26-50, gt50)
FeatureCounts ExtractFeatures(const PausedTranscript& t);

struct TrainConfig {
  double learning_rate = 0.1;
  int epochs = 300;
  double l2 = 1e-4;
  uint64_t seed = 0;
};

// Throws ConfigError on a non-positive learning rate, epochs < 1 or l2 < 0.
void ValidateTrainConfig(const TrainConfig& cfg);

// Binary logistic model over ExtractFeatures. The raw score
// z = w . x + bias is reported as Logits(z, -z), so the AD logit is the
// confidence for AD samples and its negation the confidence for non-AD.
// Features outside the vocabulary score zero.
class NGramLogisticModel : public Classifier {
 public:
  NGramLogisticModel(std::vector<std::string> vocabulary,
                     std::vector<double> weights, double bias);

  Logits Score(const PausedTranscript& t) const override;
  std::string Descriptor() const override { return "ngram-logistic"; }

  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }

  // {"descriptor", "vocabulary", "weights", "bias"}; write -> parse -> write
  // is byte-identical.
  std::string ToJson() const;
  static NGramLogisticModel FromJson(const std::string& text);
  void SaveFile(const std::string& path) const;
  static NGramLogisticModel LoadFile(const std::string& path);

 private:
  std::vector<std::string> vocabulary_;
  std::vector<double> weights_;
  double bias_;
  std::unordered_map<std::string, int> index_;
};

// L2-regularized binary cross-entropy over a sparse design matrix, with
// loss and analytic gradient exposed so the gradient can be verified by
// finite differences.
class LogisticProblem {
 public:
  struct Entry {
    int feature = 0;
    double count = 0.0;
  };

  // Rows are per-sample sparse features against `dimension` weights;
  // labels[i] is 1.0 for AD and 0.0 for non-AD.
  LogisticProblem(std::vector<std::vector<Entry>> rows,
                  std::vector<double> labels, int dimension, double l2);

  // Maps the dataset onto the vocabulary (unknown features are dropped).
  LogisticProblem(const std::vector<Sample>& dataset,
                  const std::vector<std::string>& vocabulary, double l2);

  double Loss(const std::vector<double>& weights, double bias) const;
  void Gradient(const std::vector<double>& weights, double bias,
                std::vector<double>* grad_weights, double* grad_bias) const;

  int dimension() const { return dimension_; }
  int sample_count() const { return static_cast<int>(rows_.size()); }

 private:
  std::vector<std::vector<Entry>> rows_;
  std::vector<double> labels_;
  int dimension_;
  double l2_;
};

// All features seen in the dataset, lexicographically sorted then
// Fisher-Yates shuffled with SplitMix64(seed).
std::vector<std::string> BuildVocabulary(const std::vector<Sample>& dataset,
                                         uint64_t seed);

// Full-batch gradient descent from zero weights. Deterministic given the
// config; the seed only orders the vocabulary. Throws DataError when the
// dataset is empty or single-class.
NGramLogisticModel Train(const std::vector<Sample>& dataset,
                         const TrainConfig& cfg);

}  // namespace pauseprobe

#endif  // PAUSEPROBE_NGRAM_MODEL_H_
