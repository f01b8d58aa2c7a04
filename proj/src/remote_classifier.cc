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

#include "pauseprobe/remote_classifier.h"

#include <cmath>
#include <utility>

#include "httplib.h"
#include "json.hpp"
#include "pauseprobe/errors.h"

namespace pauseprobe {

namespace {

using nlohmann::json;

// Splits http://host:port[/prefix] into the client base and path prefix.
std::pair<std::string, std::string> SplitEndpoint(const std::string& endpoint) {
  const std::string scheme = "http://";
  if (endpoint.rfind(scheme, 0) != 0) {
    throw ConfigError("endpoint must start with http://, got: " + endpoint);
  }
  size_t path_start = endpoint.find('/', scheme.size());
  if (path_start == std::string::npos) {
    return {endpoint, ""};
  }
  std::string prefix = endpoint.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {endpoint.substr(0, path_start), prefix};
}

}  // namespace

RemoteClassifier::RemoteClassifier(std::string endpoint, double timeout_seconds)
    : endpoint_(std::move(endpoint)), timeout_seconds_(timeout_seconds) {
  if (timeout_seconds_ <= 0.0) {
    throw ConfigError("remote timeout must be positive");
  }
  std::tie(host_port_, path_prefix_) = SplitEndpoint(endpoint_);
}

Logits RemoteClassifier::Score(const PausedTranscript& t) const {
  json body;
  body["words"] = t.words;
  json marks = json::array();
  for (const std::optional<PauseMark>& mark : t.gaps) {
    if (mark.has_value()) {
      marks.push_back(MarkToken(*mark));
    } else {
      marks.push_back(nullptr);
    }
  }
  body["marks"] = std::move(marks);

  // A fresh connection per call; calls are independent and never retried.
  httplib::Client client(host_port_);
  const auto timeout_ms =
      std::chrono::milliseconds(static_cast<long>(timeout_seconds_ * 1000.0));
  client.set_connection_timeout(timeout_ms);
  client.set_read_timeout(timeout_ms);
  client.set_write_timeout(timeout_ms);

  httplib::Result result =
      client.Post(path_prefix_ + "/score", body.dump(), "application/json");
  if (!result) {
    throw RemoteError(endpoint_, httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw RemoteError(endpoint_, "HTTP status " + std::to_string(result->status));
  }

  json response;
  try {
    response = json::parse(result->body);
  } catch (const json::exception& e) {
    throw RemoteError(endpoint_, std::string("response parse: ") + e.what());
  }
  if (!response.is_object() || !response.contains("logit_ad") ||
      !response.contains("logit_non_ad") ||
      !response["logit_ad"].is_number() ||
      !response["logit_non_ad"].is_number()) {
    throw RemoteError(endpoint_,
                      "response must be {\"logit_ad\": number, "
                      "\"logit_non_ad\": number}");
  }
  Logits logits{response["logit_ad"].get<double>(),
                response["logit_non_ad"].get<double>()};
  if (!std::isfinite(logits.logit_ad) || !std::isfinite(logits.logit_non_ad)) {
    throw RemoteError(endpoint_, "response logits must be finite");
  }
  return logits;
}

}  // namespace pauseprobe
