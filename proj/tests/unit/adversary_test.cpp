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

#include "dske/adversary.hpp"

#include <cmath>

#include "doctest.h"
#include "dske/estimators.hpp"
#include "dske/simnet.hpp"
#include "dske/wire.hpp"

namespace dske {
namespace {

ThresholdParams gf16_params() {
  return ThresholdParams(3, 2, 1, FieldSpec::gf16());
}

BestKnownAttack sample_attack(const FieldSpec& f) {
  BestKnownAttack atk;
  atk.target_hub = 1;
  atk.subset = {1, 3};
  atk.secret_delta = {FieldElement(0, f), FieldElement(0, f),
                      FieldElement(1, f), FieldElement(1, f)};
  return atk;
}

TEST_SUITE("adversary") {

TEST_CASE("config validation") {
  const auto params = gf16_params();

  AdversaryConfig too_many;
  too_many.compromised = {1, 2};  // k-1 = 1
  CHECK_THROWS_AS(too_many.validate(params), std::invalid_argument);

  AdversaryConfig passive_block;
  passive_block.channel_policies[{ChannelLeg::hub_to_bob, 1}] =
      ChannelPolicy{ChannelPolicyKind::block, -1, 0};
  CHECK_THROWS_AS(passive_block.validate(params), std::invalid_argument);

  AdversaryConfig shift_without_script;
  shift_without_script.compromised = {1};
  shift_without_script.hub_behavior = HubBehavior::share_shift;
  CHECK_THROWS_AS(shift_without_script.validate(params), std::invalid_argument);

  AdversaryConfig zero_delta;
  zero_delta.compromised = {1};
  zero_delta.hub_behavior = HubBehavior::share_shift;
  zero_delta.attack = sample_attack(*params.spec);
  zero_delta.attack->secret_delta.assign(4, FieldElement(0, *params.spec));
  CHECK_THROWS_AS(zero_delta.validate(params), std::invalid_argument);

  AdversaryConfig honest_target;
  honest_target.compromised = {2};
  honest_target.hub_behavior = HubBehavior::share_shift;
  honest_target.attack = sample_attack(*params.spec);  // target 1 not in C
  CHECK_THROWS_AS(honest_target.validate(params), std::invalid_argument);

  AdversaryConfig ok;
  ok.compromised = {1};
  ok.hub_behavior = HubBehavior::share_shift;
  ok.attack = sample_attack(*params.spec);
  CHECK_NOTHROW(ok.validate(params));
}

TEST_CASE("derived share delta follows the tamper arithmetic") {
  const auto params = gf16_params();
  AdversaryConfig cfg;
  cfg.compromised = {1};
  cfg.hub_behavior = HubBehavior::share_shift;
  cfg.attack = sample_attack(*params.spec);
  Eve eve(cfg, params, 1);

  const auto coeffs = lagrange_at(params, {1, 3}, params.x_coord(0));
  const FieldElement scale = inv(coeffs.at(1));
  for (int p = 0; p < 4; ++p) {
    CHECK(eve.derived_share_delta()[p] ==
          cfg.attack->secret_delta[p] * scale);
  }
  // Pushed back through L_1(x_0), the share delta shifts the secret by
  // exactly the scripted delta.
  const auto shift = apply_tamper(
      params, {1, 3},
      {{1, eve.derived_share_delta()}});
  for (int p = 0; p < 4; ++p) {
    CHECK(shift[p] == cfg.attack->secret_delta[p]);
  }
}

TEST_CASE("observation records cleartext tags and compromised shares only") {
  const auto params = gf16_params();
  AdversaryConfig cfg;
  cfg.compromised = {2};
  Eve eve(cfg, params, 3);

  ProtocolMessage msg;
  const FieldSpec& f = *params.spec;
  msg.hub_id = "P1";
  msg.sender_id = "A";
  msg.receiver_id = "B";
  msg.session_id = 9;
  msg.offset = FieldElement(0, f);
  msg.masked_share.assign(4, FieldElement(3, f));
  msg.secret_tag = FieldElement(0xA, f);
  msg.msg_tag = FieldElement(0x6, f);
  eve.observe_transit(ChannelLeg::alice_to_hub, 1, encode(msg));

  REQUIRE(eve.view().size() == 1);
  CHECK(eve.view()[0].kind == EveRecord::Kind::transit);
  CHECK(eve.view()[0].secret_tag == 0xA);
  CHECK(eve.view()[0].msg_tag == 0x6);
  CHECK(eve.view()[0].share.empty());

  // Honest hubs never surface their plaintext.
  const std::vector<FieldElement> share(4, FieldElement(1, f));
  CHECK_THROWS_AS(eve.on_hub_plaintext(1, share, msg.secret_tag),
                  std::logic_error);
  // Compromised ones do, even when relaying honestly.
  CHECK_FALSE(eve.on_hub_plaintext(2, share, msg.secret_tag).has_value());
  REQUIRE(eve.view().size() == 2);
  CHECK(eve.view()[1].kind == EveRecord::Kind::hub_share);
  CHECK(eve.view()[1].share == share);

  CHECK_THROWS_AS(eve.inject(1, share, msg.secret_tag),
                  std::invalid_argument);
  CHECK_NOTHROW(eve.inject(2, share, msg.secret_tag));
}

TEST_CASE("relaying the observed values is indistinguishable from honesty") {
  const ThresholdParams params(3, 2, 1, FieldSpec::gf2_64());
  SplitMix64 rng(5);
  const std::size_t len = PsrdTable::block_len(params.m);
  auto [in_a, in_b] = generate_pair(
      rng, *params.spec, len, OwnerPair{"A", "P1", TableDirection::client_to_hub});
  auto [out_a, out_b] = generate_pair(
      rng, *params.spec, len, OwnerPair{"B", "P1", TableDirection::hub_to_client});
  const std::set<RouteTuple> allow{{"P1", "A", "B"}};
  Hub honest(params, 1, "P1", allow, in_a, out_a, HubMode::honest);
  Hub compromised(params, 1, "P1", allow, in_b, out_b, HubMode::compromised);

  Alice alice(params, "A", {"P1", "P2", "P3"},
              std::vector<PsrdTable>{in_a, in_a, in_a});
  // Both hubs share identical tables, so the identity injection must yield
  // byte-identical output.
  SplitMix64 krng(9);
  const auto init = alice.initiate("B", krng);
  REQUIRE(init.has_value());
  const auto honest_out = honest.process(init->messages[0], "A");
  const InjectHook identity = [](int, const std::vector<FieldElement>& y,
                                 const FieldElement& o) {
    return std::make_optional(Injection{y, o});
  };
  const auto forged_out = compromised.process(init->messages[0], "A", identity);
  REQUIRE(honest_out.forward.has_value());
  REQUIRE(forged_out.forward.has_value());
  CHECK(*honest_out.forward == *forged_out.forward);
  CHECK(forged_out.observed_share.has_value());
}

TEST_CASE("mismatched secret tag sorts into a separate group") {
  ScenarioConfig cfg;
  cfg.field = "gf2_64";
  cfg.adversary.mode = AdversaryMode::passive;
  cfg.adversary.compromised = {1};
  cfg.adversary.hub_behavior = HubBehavior::share_shift;
  BestKnownAttack atk;
  atk.target_hub = 1;
  atk.subset = {1, 2};
  const FieldSpec& f = FieldSpec::gf2_64();
  atk.secret_delta.assign(4, FieldElement(0, f));
  atk.secret_delta[3] = FieldElement(1, f);
  atk.tag_delta = FieldElement(0x999, f);
  cfg.adversary.attack = atk;

  const auto result = run_session(cfg, 21);
  // The forged tag opens a second group that never reaches k; the honest
  // hubs still complete the true one.
  CHECK(result.outcome.kind == OutcomeKind::success);
  CHECK(result.outcome.secret == result.alice_secret);
}

TEST_CASE("channel policies") {
  const auto params = gf16_params();
  std::vector<std::uint8_t> payload{1, 2, 3, 4, 5};

  AdversaryConfig cfg;
  cfg.mode = AdversaryMode::active;
  cfg.channel_policies[{ChannelLeg::alice_to_hub, 1}] =
      ChannelPolicy{ChannelPolicyKind::block, -1, 0};
  cfg.channel_policies[{ChannelLeg::alice_to_hub, 2}] =
      ChannelPolicy{ChannelPolicyKind::mutate, 2, 0x10};
  Eve eve(cfg, params, 7);

  const auto blocked = eve.channel_apply(ChannelLeg::alice_to_hub, 1, payload);
  CHECK_FALSE(blocked.bytes.has_value());

  const auto mutated = eve.channel_apply(ChannelLeg::alice_to_hub, 2, payload);
  REQUIRE(mutated.bytes.has_value());
  CHECK(mutated.mutated);
  CHECK((*mutated.bytes)[2] == (3 ^ 0x10));

  const auto faithful = eve.channel_apply(ChannelLeg::hub_to_bob, 1, payload);
  REQUIRE(faithful.bytes.has_value());
  CHECK(*faithful.bytes == payload);
  CHECK_FALSE(faithful.mutated);
}

TEST_CASE("random mutation acceptance stays under the forgery bound") {
  ScenarioConfig cfg;
  cfg.field = "gf16";
  cfg.table_length = 16;
  cfg.mode = ProtocolMode::general;
  cfg.trials = 20000;
  cfg.master_seed = 5;
  cfg.adversary.mode = AdversaryMode::active;
  cfg.adversary.channel_policies[{ChannelLeg::hub_to_bob, 3}] =
      ChannelPolicy{ChannelPolicyKind::mutate, -1, 0};
  const auto agg = run_trials(cfg);
  REQUIRE(agg.mutated_deliveries == cfg.trials);

  const std::uint64_t s = tagged_element_count(FieldSpec::gf16(), 1, 2, 1, 1);
  const double bound = forgery_bound(FieldSpec::gf16(), s);
  const double rate = static_cast<double>(agg.forged_accepted) /
                      static_cast<double>(agg.mutated_deliveries);
  const double sigma = std::sqrt(bound * (1 - bound) /
                                 static_cast<double>(agg.mutated_deliveries));
  CHECK(rate <= std::min(bound + 3 * sigma, 1.0));
}

TEST_CASE("blocking up to n-k channels never causes a wrong secret") {
  ScenarioConfig cfg;
  cfg.field = "gf2_64";
  cfg.n = 5;
  cfg.k = 3;
  cfg.adversary.mode = AdversaryMode::active;
  cfg.adversary.channel_policies[{ChannelLeg::alice_to_hub, 1}] =
      ChannelPolicy{ChannelPolicyKind::block, -1, 0};
  cfg.adversary.channel_policies[{ChannelLeg::hub_to_bob, 4}] =
      ChannelPolicy{ChannelPolicyKind::block, -1, 0};
  cfg.trials = 500;
  const auto agg = run_trials(cfg);
  CHECK(agg.wrong_secret == 0);
  CHECK(agg.success == cfg.trials);  // k honest hubs remain

  // One more block drops below k deliverable shares: still no wrong
  // secret, only incompleteness.
  cfg.adversary.channel_policies[{ChannelLeg::hub_to_bob, 2}] =
      ChannelPolicy{ChannelPolicyKind::block, -1, 0};
  const auto agg2 = run_trials(cfg);
  CHECK(agg2.wrong_secret == 0);
  CHECK(agg2.incomplete == cfg.trials);
}

}  // TEST_SUITE

}  // namespace
}  // namespace dske
