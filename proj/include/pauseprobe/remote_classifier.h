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

#ifndef PAUSEPROBE_REMOTE_CLASSIFIER_H_
#define PAUSEPROBE_REMOTE_CLASSIFIER_H_

#include <string>

#include "pauseprobe/classifier.h"

namespace pauseprobe {

// Client for an external scorer. POSTs
//   {endpoint}/score  {"words":[...], "marks":[null|","|";"|"."]}
// and expects {"logit_ad": number, "logit_non_ad": number}. Calls are never
// retried; any network, HTTP or parse failure raises RemoteError carrying
// the endpoint and cause.
class RemoteClassifier : public Classifier {
 public:
  // endpoint: http://host:port[/path-prefix]
  explicit RemoteClassifier(std::string endpoint, double timeout_seconds = 30.0);

  Logits Score(const PausedTranscript& t) const override;
  std::string Descriptor() const override { return "remote:" + endpoint_; }

 private:
  std::string endpoint_;
  std::string host_port_;
  std::string path_prefix_;
  double timeout_seconds_;
};

}  // namespace pauseprobe

#endif  // PAUSEPROBE_REMOTE_CLASSIFIER_H_
