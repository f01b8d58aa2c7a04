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

#include <gtest/gtest.h>

#include <chrono>
#include <string>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "pauseprobe/errors.h"

namespace pauseprobe {
namespace {

class ScoreServer {
 public:
  explicit ScoreServer(httplib::Server::Handler handler) {
    server_.Post("/score", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this]() { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~ScoreServer() {
    server_.stop();
    thread_.join();
  }

  std::string endpoint() const {
    return "http://127.0.0.1:" + std::to_string(port_);
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

PausedTranscript SampleTranscript() {
  PausedTranscript t;
  t.words = {"the", "mother", "is", "washing"};
  t.gaps = {std::nullopt, PauseMark::kComma, PauseMark::kPeriod};
  t.level = Level::kLevel3;
  return t;
}

TEST(RemoteClassifierTest, PassesLogitsThrough) {
  std::string seen_body;
  ScoreServer server([&](const httplib::Request& req, httplib::Response& res) {
    seen_body = req.body;
    res.set_content(R"({"logit_ad":1.5,"logit_non_ad":-0.5})",
                    "application/json");
  });

  RemoteClassifier client(server.endpoint());
  Logits logits = client.Score(SampleTranscript());
  EXPECT_DOUBLE_EQ(logits.logit_ad, 1.5);
  EXPECT_DOUBLE_EQ(logits.logit_non_ad, -0.5);

  nlohmann::json body = nlohmann::json::parse(seen_body);
  EXPECT_EQ(body["words"],
            (std::vector<std::string>{"the", "mother", "is", "washing"}));
  ASSERT_EQ(body["marks"].size(), 3u);
  EXPECT_TRUE(body["marks"][0].is_null());
  EXPECT_EQ(body["marks"][1], ",");
  EXPECT_EQ(body["marks"][2], ".");
}

TEST(RemoteClassifierTest, PathPrefixIsRespected) {
  ScoreServer server([](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"logit_ad":0.25,"logit_non_ad":0.5})",
                    "application/json");
  });
  // The /score suffix is appended after the prefix; plain "/v1" has no
  // handler, so only the prefixed client sees the route miss.
  RemoteClassifier client(server.endpoint() + "/v1");
  EXPECT_THROW(client.Score(SampleTranscript()), RemoteError);
}

TEST(RemoteClassifierTest, MalformedBodyIsRemoteError) {
  ScoreServer server([](const httplib::Request&, httplib::Response& res) {
    res.set_content("not json", "text/plain");
  });
  RemoteClassifier client(server.endpoint());
  try {
    client.Score(SampleTranscript());
    FAIL() << "expected RemoteError";
  } catch (const RemoteError& e) {
    EXPECT_EQ(e.endpoint(), server.endpoint());
    EXPECT_NE(std::string(e.what()).find(server.endpoint()),
              std::string::npos);
  }
}

TEST(RemoteClassifierTest, MissingFieldsAndBadStatusRejected) {
  ScoreServer server([](const httplib::Request& req, httplib::Response& res) {
    if (req.body.find("fail") != std::string::npos) {
      res.status = 500;
      return;
    }
    res.set_content(R"({"logit_ad":1.0})", "application/json");
  });
  RemoteClassifier client(server.endpoint());
  EXPECT_THROW(client.Score(SampleTranscript()), RemoteError);

  PausedTranscript t;
  t.words = {"fail"};
  EXPECT_THROW(client.Score(t), RemoteError);
}

TEST(RemoteClassifierTest, NonFiniteLogitsRejected) {
  ScoreServer server([](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"logit_ad":1e999,"logit_non_ad":0.0})",
                    "application/json");
  });
  RemoteClassifier client(server.endpoint());
  EXPECT_THROW(client.Score(SampleTranscript()), RemoteError);
}

TEST(RemoteClassifierTest, TimeoutIsRemoteError) {
  ScoreServer server([](const httplib::Request&, httplib::Response& res) {
    std::this_thread::sleep_for(std::chrono::milliseconds(1200));
    res.set_content(R"({"logit_ad":0.0,"logit_non_ad":0.0})",
                    "application/json");
  });
  RemoteClassifier client(server.endpoint(), /*timeout_seconds=*/0.2);
  EXPECT_THROW(client.Score(SampleTranscript()), RemoteError);
}

TEST(RemoteClassifierTest, UnreachableEndpointIsRemoteError) {
  // Reserved port with nothing listening.
  RemoteClassifier client("http://127.0.0.1:1", /*timeout_seconds=*/0.5);
  EXPECT_THROW(client.Score(SampleTranscript()), RemoteError);
}

TEST(RemoteClassifierTest, EndpointValidation) {
  EXPECT_THROW(RemoteClassifier("ftp://host"), ConfigError);
  EXPECT_THROW(RemoteClassifier("http://host", 0.0), ConfigError);
  EXPECT_NO_THROW(RemoteClassifier("http://host:8080/prefix/"));
}

}  // namespace
}  // namespace pauseprobe
