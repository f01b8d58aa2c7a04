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

#ifndef PAUSEPROBE_CLASSIFIER_H_
#define PAUSEPROBE_CLASSIFIER_H_

#include <string>

#include "pauseprobe/transcript.h"

namespace pauseprobe {

struct Logits {
  double logit_ad = 0.0;
  double logit_non_ad = 0.0;
};

// AD/non-AD scorer. Score must be deterministic (identical transcripts
// yield identical logits) and callable concurrently.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual Logits Score(const PausedTranscript& t) const = 0;
  virtual std::string Descriptor() const = 0;
};

// Confidence level: the logit of the sample's true label.
inline double Confidence(Label label, const Logits& logits) {
  return label == Label::kAD ? logits.logit_ad : logits.logit_non_ad;
}

// Argmax label; an exact tie predicts non-AD.
inline Label Predict(const Logits& logits) {
  return logits.logit_ad > logits.logit_non_ad ? Label::kAD : Label::kNonAD;
}

}  // namespace pauseprobe

#endif  // PAUSEPROBE_CLASSIFIER_H_
