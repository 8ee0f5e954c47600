// Copyright 2026 The Rimes Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rimes/bridge.hpp"

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <string>

#include "fixture.hpp"
#include "rimes/ngram.hpp"

using namespace rimes::lm;
using namespace std::chrono_literals;

namespace {

std::string mock(const std::string& args) {
  return rimes::testing::shell_quote(RIMES_MOCK_BRIDGE_PATH) + " " + args;
}

struct ServedModel {
  rimes::testing::TempDir dir;
  std::string path = (dir / "model.txt").string();
  ServedModel() {
    std::ofstream out(path);
    rimes::testing::fixture_pipeline().model.save(out);
  }
  std::string command() const { return mock(rimes::testing::shell_quote(path)); }
};

// Postconditions every backend must satisfy.
void check_top_k_contract(const LanguageModel& lm) {
  for (const char* input : {"amour nuit", "Demain, dès l'aube", "mot inconnu"}) {
    auto ctx = LmContext::from_text(input);
    for (int step = 0; step < 5; ++step) {
      for (std::size_t k : {1u, 3u, 10u}) {
        const auto top = lm.top_k(ctx, k);
        REQUIRE(top.size() == k);
        for (std::size_t i = 0; i < top.size(); ++i) {
          CHECK(std::isfinite(top[i].logprob));
          if (i > 0) {
            CHECK(top[i - 1].logprob >= top[i].logprob);
            if (top[i - 1].logprob == top[i].logprob) CHECK(top[i - 1].token < top[i].token);
          }
        }
        CHECK(lm.top_k(ctx, k) == top);
      }
      for (const auto& c : lm.top_k(ctx, 10)) {
        if (!is_reserved(c.token)) {
          ctx.push(c.token);
          break;
        }
      }
    }
  }
}

}  // namespace

TEST_CASE("contract: n-gram backend") {
  check_top_k_contract(rimes::testing::fixture_pipeline().model);
}

TEST_CASE("contract: bridge backend") {
  ServedModel served;
  const auto client = BridgeClient::connect(served.command());
  check_top_k_contract(*client);
}

TEST_CASE("bridge relays the served model") {
  ServedModel served;
  const auto client = BridgeClient::connect(served.command());
  CHECK(client->eos_token() == "</s>");
  CHECK(client->name() == "mock");
  CHECK(client->version() == "0");
  const auto& model = rimes::testing::fixture_pipeline().model;
  auto ctx = LmContext::from_text("ciel soir");
  ctx.push("le");
  const auto a = client->top_k(ctx, 10);
  const auto b = model.top_k(ctx, 10);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].token == b[i].token);
    CHECK(a[i].logprob == doctest::Approx(b[i].logprob).epsilon(1e-12));
  }
}

TEST_CASE("garbage hello is reported with the offending line") {
  try {
    BridgeClient::connect(mock("--garbage"), 5s);
    FAIL("expected BridgeError");
  } catch (const BridgeError& e) {
    CHECK(std::string(e.what()).find("this is not json") != std::string::npos);
    CHECK(e.request_id() == 1);
  }
}

TEST_CASE("bridge that exits immediately") {
  try {
    BridgeClient::connect(mock("--exit 3"), 5s);
    FAIL("expected BridgeError");
  } catch (const BridgeError& e) {
    CHECK(std::string(e.what()).find("status 3") != std::string::npos);
  }
  CHECK_THROWS_AS(BridgeClient::connect("/nonexistent/bridge-binary", 5s), BridgeError);
}

TEST_CASE("silent bridge times out") {
  const auto start = std::chrono::steady_clock::now();
  try {
    BridgeClient::connect(mock("--silent"), 300ms);
    FAIL("expected BridgeError");
  } catch (const BridgeError& e) {
    CHECK(std::string(e.what()).find("timed out") != std::string::npos);
  }
  CHECK(std::chrono::steady_clock::now() - start < 5s);

  const auto client = BridgeClient::connect(mock("--silent-after-hello"), 300ms);
  CHECK_THROWS_AS(client->top_k(LmContext::from_text("a"), 3), BridgeError);
}

TEST_CASE("error responses carry the request id") {
  const auto client = BridgeClient::connect(mock("--error"), 5s);
  try {
    client->top_k(LmContext::from_text("a"), 3);
    FAIL("expected BridgeError");
  } catch (const BridgeError& e) {
    CHECK(e.request_id() == 2);
    CHECK(std::string(e.what()).find("mock failure") != std::string::npos);
  }
  try {
    client->top_k(LmContext::from_text("a"), 3);
    FAIL("expected BridgeError");
  } catch (const BridgeError& e) {
    CHECK(e.request_id() == 3);
  }
}

TEST_CASE("responses that break the protocol are rejected") {
  const auto bad_id = BridgeClient::connect(mock("--bad-id"), 5s);
  CHECK_THROWS_AS(bad_id->top_k(LmContext::from_text("a"), 3), BridgeError);
  const auto unsorted = BridgeClient::connect(mock("--unsorted"), 5s);
  CHECK_THROWS_AS(unsorted->top_k(LmContext::from_text("a"), 3), BridgeError);
}
