// Copyright 2026 The dske-kit Authors
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

#include "dske/simnet.hpp"

#include <algorithm>

#include "doctest.h"

namespace dske {
namespace {

TEST_SUITE("simnet") {

TEST_CASE("honest sessions deliver alice's secret") {
  ScenarioConfig cfg;
  cfg.field = "gf2_64";
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 99ull}) {
    const auto r = run_session(cfg, seed);
    REQUIRE(r.outcome.kind == OutcomeKind::success);
    CHECK(r.outcome.secret == r.alice_secret);
    CHECK_FALSE(r.wrong_secret());
  }
}

TEST_CASE("identical config and seed reproduce the transcript exactly") {
  ScenarioConfig cfg;
  cfg.field = "gf2_64";
  cfg.n = 5;
  cfg.k = 3;
  cfg.delivery = DeliveryMode::seeded_shuffle;
  const auto a = run_session(cfg, 31415);
  const auto b = run_session(cfg, 31415);
  CHECK(a.transcript.to_json_lines() == b.transcript.to_json_lines());
  CHECK(a.outcome.secret == b.outcome.secret);
  CHECK(a.session_id == b.session_id);

  const auto c = run_session(cfg, 31416);
  CHECK(a.transcript.to_json_lines() != c.transcript.to_json_lines());
}

TEST_CASE("delivery order does not change the honest outcome") {
  ScenarioConfig in_order;
  in_order.field = "gf2_64";
  in_order.n = 5;
  in_order.k = 3;
  ScenarioConfig shuffled = in_order;
  shuffled.delivery = DeliveryMode::seeded_shuffle;
  for (std::uint64_t seed : {7ull, 8ull, 9ull}) {
    const auto a = run_session(in_order, seed);
    const auto b = run_session(shuffled, seed);
    REQUIRE(a.outcome.kind == OutcomeKind::success);
    REQUIRE(b.outcome.kind == OutcomeKind::success);
    CHECK(a.outcome.secret == b.outcome.secret);
  }
}

TEST_CASE("trial aggregation is seed-derived and reduces to run_session") {
  ScenarioConfig cfg;
  cfg.field = "gf2_64";
  cfg.trials = 1;
  cfg.master_seed = 77;
  const auto agg = run_trials(cfg);
  CHECK(agg.trials == 1);
  CHECK(agg.success == 1);
  CHECK(agg.wrong_secret + agg.abort + agg.incomplete + agg.exhausted == 0);
}

TEST_CASE("psrd consumption is exactly one block per delivered leg") {
  ScenarioConfig cfg;
  cfg.field = "gf2_64";
  cfg.table_length = 3 * PsrdTable::block_len(1);
  const auto r = run_session(cfg, 5);
  REQUIRE(r.outcome.kind == OutcomeKind::success);
  const std::size_t block = PsrdTable::block_len(1);
  for (int i = 1; i <= 3; ++i) {
    const std::string hub = "P" + std::to_string(i);
    CHECK(r.psrd_consumed.at("alice." + hub) == block);
    CHECK(r.psrd_consumed.at("hub_in." + hub) == block);
    CHECK(r.psrd_consumed.at("hub_out." + hub) == block);
    CHECK(r.psrd_consumed.at("bob." + hub) == block);
  }
}

TEST_CASE("blocked channels consume nothing downstream") {
  ScenarioConfig cfg;
  cfg.field = "gf2_64";
  cfg.adversary.mode = AdversaryMode::active;
  cfg.adversary.channel_policies[{ChannelLeg::alice_to_hub, 2}] =
      ChannelPolicy{ChannelPolicyKind::block, -1, 0};
  const auto r = run_session(cfg, 6);
  REQUIRE(r.outcome.kind == OutcomeKind::success);  // hubs 1 and 3 suffice
  const std::size_t block = PsrdTable::block_len(1);
  CHECK(r.psrd_consumed.at("alice.P2") == block);  // alice sent
  CHECK(r.psrd_consumed.at("hub_in.P2") == 0);     // hub never received
  CHECK(r.psrd_consumed.at("hub_out.P2") == 0);
  CHECK(r.psrd_consumed.at("bob.P2") == 0);
}

TEST_CASE("blocking more than n-k channels yields an incomplete session") {
  ScenarioConfig cfg;
  cfg.field = "gf2_64";
  cfg.adversary.mode = AdversaryMode::active;
  cfg.adversary.channel_policies[{ChannelLeg::alice_to_hub, 1}] =
      ChannelPolicy{ChannelPolicyKind::block, -1, 0};
  cfg.adversary.channel_policies[{ChannelLeg::hub_to_bob, 2}] =
      ChannelPolicy{ChannelPolicyKind::block, -1, 0};
  const auto r = run_session(cfg, 7);
  CHECK(r.outcome.kind == OutcomeKind::incomplete);
  CHECK(r.outcome.secret.empty());
}

TEST_CASE("drop-set delivery skips the named legs") {
  ScenarioConfig cfg;
  cfg.field = "gf2_64";
  cfg.delivery = DeliveryMode::drop_set;
  cfg.drop = {{ChannelLeg::alice_to_hub, 1}, {ChannelLeg::hub_to_bob, 3}};
  const auto r = run_session(cfg, 8);
  CHECK(r.outcome.kind == OutcomeKind::incomplete);  // only hub 2 arrives

  cfg.drop = {{ChannelLeg::alice_to_hub, 1}};
  const auto r2 = run_session(cfg, 8);
  CHECK(r2.outcome.kind == OutcomeKind::success);
}

TEST_CASE("skeleton channels flag tampering; general channels rely on tags") {
  ScenarioConfig cfg;
  cfg.field = "gf2_64";
  cfg.adversary.mode = AdversaryMode::active;
  // Byte 30 sits inside Z for this layout: parseable, wrong tag.
  cfg.adversary.channel_policies[{ChannelLeg::alice_to_hub, 2}] =
      ChannelPolicy{ChannelPolicyKind::mutate, 30, 0x20};

  cfg.mode = ProtocolMode::skeleton;
  const auto sk = run_session(cfg, 9);
  bool saw_tamper_flag = false;
  for (const auto& e : sk.transcript.events) {
    if (e.kind == EventKind::discard &&
        e.reason == to_string(DiscardReason::tamper_detected)) {
      saw_tamper_flag = true;
    }
  }
  CHECK(saw_tamper_flag);
  CHECK(sk.psrd_consumed.at("hub_in.P2") == 0);  // flagged before any use
  CHECK(sk.outcome.kind == OutcomeKind::success);

  cfg.mode = ProtocolMode::general;
  const auto gen = run_session(cfg, 9);
  bool saw_bad_tag = false;
  for (const auto& e : gen.transcript.events) {
    if (e.kind == EventKind::discard && e.hub_index == 2 &&
        e.reason == to_string(DiscardReason::bad_tag)) {
      saw_bad_tag = true;
    }
  }
  CHECK(saw_bad_tag);
  // The failed verification consumed the addressed block.
  CHECK(gen.psrd_consumed.at("hub_in.P2") == PsrdTable::block_len(1));
  CHECK(gen.outcome.kind == OutcomeKind::success);
}

TEST_CASE("config validation rejects bad scenarios") {
  ScenarioConfig cfg;
  cfg.field = "gf2_64";

  SUBCASE("n cap") {
    cfg.n = 13;
    cfg.k = 3;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SUBCASE("unknown field") {
    cfg.field = "gf17";
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SUBCASE("short table") {
    cfg.table_length = 3;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SUBCASE("short deadline") {
    cfg.deadline = 5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SUBCASE("zero trials") {
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SUBCASE("drop set names an unknown hub") {
    cfg.drop = {{ChannelLeg::alice_to_hub, 9}};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SUBCASE("gf16 table beyond the g domain") {
    cfg.field = "gf16";
    cfg.table_length = 17;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
}

TEST_CASE("scenario files parse into configs") {
  const std::string text = R"(
# example scenario
field = gf16
n = 3
k = 2
m = 1
mode = general
table_length = 16
deadline = 24
trials = 250
master_seed = 0x2A
delivery = seeded-shuffle
adversary.mode = active
adversary.compromised = 1
adversary.hub_behavior = share-shift
adversary.shift.target_hub = 1
adversary.shift.subset = 1, 3
adversary.shift.delta = 0, 0, 0x1, 0x1
channel.hub-bob.2 = block
channel.alice-hub.3 = mutate
)";
  const auto cfg = parse_scenario_string(text);
  CHECK(cfg.field == "gf16");
  CHECK(cfg.n == 3);
  CHECK(cfg.mode == ProtocolMode::general);
  CHECK(cfg.table_length == 16);
  CHECK(cfg.deadline == 24);
  CHECK(cfg.trials == 250);
  CHECK(cfg.master_seed == 42);
  CHECK(cfg.delivery == DeliveryMode::seeded_shuffle);
  CHECK(cfg.adversary.mode == AdversaryMode::active);
  CHECK(cfg.adversary.compromised == std::set<int>{1});
  CHECK(cfg.adversary.hub_behavior == HubBehavior::share_shift);
  REQUIRE(cfg.adversary.attack.has_value());
  CHECK(cfg.adversary.attack->target_hub == 1);
  CHECK(cfg.adversary.attack->subset == std::vector<int>{1, 3});
  CHECK(cfg.adversary.attack->secret_delta.size() == 4);
  CHECK(cfg.adversary.channel_policies.at({ChannelLeg::hub_to_bob, 2}).kind ==
        ChannelPolicyKind::block);
  CHECK(cfg.adversary.channel_policies.at({ChannelLeg::alice_to_hub, 3}).kind ==
        ChannelPolicyKind::mutate);
  CHECK_NOTHROW(cfg.validate());

  // Round-trip sanity: the parsed scenario actually runs.
  const auto agg = run_trials(cfg);
  CHECK(agg.trials == 250);
}

TEST_CASE("scenario parse errors carry the line") {
  CHECK_THROWS_WITH_AS(parse_scenario_string("field = gf16\nbogus line\n"),
                       doctest::Contains("line 2"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_scenario_string("nonsense_key = 3\n"),
                       doctest::Contains("unknown key"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_scenario_string("n = twelve\n"),
                       doctest::Contains("number"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_scenario_string("field = gf99\n"),
                       doctest::Contains("unknown field"), std::runtime_error);
  CHECK_THROWS_WITH_AS(
      parse_scenario_string("field = gf16\nadversary.shift.delta = 16\n"),
      doctest::Contains("field width"), std::runtime_error);
}

TEST_CASE("transcripts serialize as one json object per line") {
  ScenarioConfig cfg;
  cfg.field = "gf2_64";
  const auto r = run_session(cfg, 12);
  const auto lines = r.transcript.to_json_lines();
  CHECK(lines.find("\"kind\":\"send\"") != std::string::npos);
  CHECK(lines.find("\"kind\":\"outcome\"") != std::string::npos);
  CHECK(lines.find("\"reason\":\"success\"") != std::string::npos);
  const auto newlines = std::count(lines.begin(), lines.end(), '\n');
  CHECK(static_cast<std::size_t>(newlines) == r.transcript.events.size());
}

}  // TEST_SUITE

}  // namespace
}  // namespace dske
