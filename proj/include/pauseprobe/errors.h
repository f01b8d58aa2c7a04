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

#ifndef PAUSEPROBE_ERRORS_H_
#define PAUSEPROBE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace pauseprobe {

// Invalid configuration or usage. CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent input data. CLI exit code 3.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Remote classifier failure. Carries the endpoint; CLI exit code 4.
class RemoteError : public std::runtime_error {
 public:
  RemoteError(const std::string& endpoint, const std::string& cause)
      : std::runtime_error("remote classifier at " + endpoint + ": " + cause),
        endpoint_(endpoint) {}

  const std::string& endpoint() const { return endpoint_; }

 private:
  std::string endpoint_;
};

}  // namespace pauseprobe

#endif  // PAUSEPROBE_ERRORS_H_
