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

#include "dske/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "dske/estimators.hpp"
#include "dske/wire.hpp"

namespace dske::acceptance {

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

// 1. The message-tag forgery probability equals min(s/|F|,1), exactly.
Outcome message_tag_bound() {
  std::string detail;
  bool pass = true;
  for (std::uint64_t s = 1; s <= 3; ++s) {
    const auto r = forgery_bound_exhaustive(FieldSpec::gf16(), s);
    pass = pass && r.pass && r.measured == r.bound;
    if (s > 1) detail += ", ";
    detail += "s=" + std::to_string(s) + ": " + fmt(r.measured) + " = " +
              fmt(r.bound);
  }
  return {pass, detail};
}

// 2. Every additive attack on the secret tag accepts with probability at
// most min((m+1)/|F|,1), and some attack reaches at least 1/|F|.
Outcome secret_validation_bound() {
  std::string detail;
  bool pass = true;
  for (int m = 1; m <= 2; ++m) {
    const auto r = secret_validation_bound_exhaustive(FieldSpec::gf16(), m);
    pass = pass && r.pass && r.measured <= r.bound &&
           r.measured >= 1.0 / 16.0;
    if (m > 1) detail += ", ";
    detail += "m=" + std::to_string(m) + ": max " + fmt(r.measured) +
              " <= " + fmt(r.bound);
  }
  return {pass, detail};
}

// 3. One observed share gives exactly zero information about the secret,
// and the full adversary view (compromised shares plus the tag) is
// distributed identically for every payload.
Outcome confidentiality() {
  const auto share = confidentiality_exact(FieldSpec::gf16(), 3, 2, 1);
  const auto view =
      eve_view_independence_exact(FieldSpec::gf16(), 3, 2, 1, {1});
  const bool pass = share.pass && share.measured == 0.0 && view.pass &&
                    view.measured == 0.0;
  return {pass, "share distance " + fmt(share.measured) + ", view distance " +
                    fmt(view.measured)};
}

// 4. Tampered reconstruction equals clean reconstruction plus the
// predicted shift, elementwise, on random instances.
Outcome linearity() {
  SplitMix64 rng(0x11ce);
  const ThresholdParams params(5, 3, 2, FieldSpec::gf256());
  const FieldSpec& f = *params.spec;
  const ReconstructionPlan plan(params);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<ShareTuple> first_k;
    for (int i = 1; i <= params.k; ++i) {
      ShareTuple t{i, {}};
      for (int p = 0; p < params.tuple_len(); ++p) {
        t.elements.push_back(rng.element(f));
      }
      first_k.push_back(std::move(t));
    }
    const auto ext = extend_shares(params, first_k);

    const auto& subset =
        plan.subsets()[rng.below(plan.subsets().size())];
    std::map<int, std::vector<FieldElement>> deltas;
    for (int i : subset) {
      if (rng.below(2) == 0) continue;
      std::vector<FieldElement> d;
      for (int p = 0; p < params.tuple_len(); ++p) d.push_back(rng.element(f));
      deltas[i] = std::move(d);
    }

    std::vector<ShareTuple> points;
    for (int i : subset) {
      ShareTuple t = ext.shares[static_cast<std::size_t>(i - 1)];
      const auto it = deltas.find(i);
      if (it != deltas.end()) {
        for (int p = 0; p < params.tuple_len(); ++p) {
          t.elements[static_cast<std::size_t>(p)] +=
              it->second[static_cast<std::size_t>(p)];
        }
      }
      points.push_back(std::move(t));
    }
    const auto tampered = reconstruct(params, points);
    const auto shift = apply_tamper(params, subset, deltas);
    auto expected = ext.secret.flat();
    for (int p = 0; p < params.tuple_len(); ++p) {
      expected[static_cast<std::size_t>(p)] +=
          shift[static_cast<std::size_t>(p)];
    }
    if (!(tampered == SecretTuple::from_flat(expected))) {
      return {false, "mismatch at trial " + std::to_string(trial)};
    }
  }
  return {true, "1000 random tamper instances exact"};
}

// 5. Honest delivery with a passive adversary in full control of the
// allowed number of hubs: every session completes with alice's secret.
Outcome correctness_and_robustness() {
  std::string detail;
  for (const auto& [n, k] : std::vector<std::pair<int, int>>{
           {3, 2}, {5, 3}, {7, 4}}) {
    ScenarioConfig cfg;
    cfg.field = "gf2_64";
    cfg.n = n;
    cfg.k = k;
    cfg.trials = 10000;
    cfg.master_seed = 0xB0B0;
    cfg.adversary.mode = AdversaryMode::passive;
    cfg.adversary.hub_behavior = HubBehavior::random_share;
    const int compromised = std::min(n - k, k - 1);
    for (int c = 1; c <= compromised; ++c) cfg.adversary.compromised.insert(c);
    const auto agg = run_trials(cfg);
    if (!detail.empty()) detail += ", ";
    detail += "(" + std::to_string(n) + "," + std::to_string(k) + "): " +
              std::to_string(agg.wrong_secret) + " wrong / " +
              std::to_string(agg.abort) + " aborts";
    if (agg.wrong_secret != 0 || agg.abort != 0 ||
        agg.success != cfg.trials) {
      return {false, detail};
    }
  }
  return {true, detail + " over 10000 trials each"};
}

ScenarioConfig best_attack_config() {
  ScenarioConfig cfg;
  cfg.field = "gf16";
  cfg.n = 3;
  cfg.k = 2;
  cfg.m = 1;
  cfg.table_length = 16;
  cfg.adversary.mode = AdversaryMode::active;
  cfg.adversary.compromised = {1};
  cfg.adversary.hub_behavior = HubBehavior::share_shift;
  const FieldSpec& f = FieldSpec::gf16();
  BestKnownAttack atk;
  atk.target_hub = 1;
  atk.subset = {1, 3};
  // Deltas on e and the payload: the acceptance polynomial C^2 + C has two
  // roots, the largest possible for m = 1.
  atk.secret_delta = {FieldElement(0, f), FieldElement(0, f),
                      FieldElement(1, f), FieldElement(1, f)};
  cfg.adversary.attack = atk;
  // Suppressing hub 2 leaves the forged pair {1,3} as the only candidate.
  cfg.adversary.channel_policies[{ChannelLeg::hub_to_bob, 2}] =
      ChannelPolicy{ChannelPolicyKind::block, -1, 0};
  return cfg;
}

// 6. The strongest share-shift attack, exhaustively over the (u,S) space
// and by Monte Carlo, stays within the skeleton bound.
Outcome skeleton_security() {
  const auto cfg = best_attack_config();
  const auto exact = best_attack_exhaustive(cfg);

  auto mc_cfg = cfg;
  mc_cfg.trials = 100000;
  mc_cfg.master_seed = 0xA11CE;
  const auto mc = best_attack_monte_carlo(mc_cfg, exact.measured);

  const bool pass = exact.pass && exact.measured <= 0.375 && mc.pass;
  return {pass, "exact " + fmt(exact.measured) + " <= 0.375; mc " +
                    fmt(mc.measured) + " in [" + fmt(mc.ci_low) + ", " +
                    fmt(mc.ci_high) + "]"};
}

// 7. The general protocol over tamperable channels stays within
// eps + 2n*eps'; at gf2_64 the bad event never fires.
Outcome general_composition() {
  auto gf16_cfg = best_attack_config();
  gf16_cfg.mode = ProtocolMode::general;
  gf16_cfg.trials = 20000;
  gf16_cfg.master_seed = 0xC0;
  gf16_cfg.adversary.channel_policies[{ChannelLeg::alice_to_hub, 2}] =
      ChannelPolicy{ChannelPolicyKind::mutate, -1, 0};
  const auto small = protocol_epsilon_estimate(gf16_cfg);

  ScenarioConfig big_cfg;
  big_cfg.field = "gf2_64";
  big_cfg.mode = ProtocolMode::general;
  big_cfg.trials = 10000;
  big_cfg.master_seed = 0xC1;
  big_cfg.adversary.mode = AdversaryMode::active;
  big_cfg.adversary.compromised = {1};
  big_cfg.adversary.hub_behavior = HubBehavior::share_shift;
  const FieldSpec& f = FieldSpec::gf2_64();
  BestKnownAttack atk;
  atk.target_hub = 1;
  atk.subset = {1, 3};
  atk.secret_delta = {FieldElement(0, f), FieldElement(0, f),
                      FieldElement(1, f), FieldElement(1, f)};
  big_cfg.adversary.attack = atk;
  big_cfg.adversary.channel_policies[{ChannelLeg::hub_to_bob, 2}] =
      ChannelPolicy{ChannelPolicyKind::block, -1, 0};
  big_cfg.adversary.channel_policies[{ChannelLeg::alice_to_hub, 2}] =
      ChannelPolicy{ChannelPolicyKind::mutate, -1, 0};
  const auto big = protocol_epsilon_estimate(big_cfg);

  const bool pass = small.pass && big.pass && big.measured == 0.0;
  return {pass, "gf16 rate " + fmt(small.measured) + " <= " +
                    fmt(small.bound) + "; gf2_64 bad events " +
                    fmt(big.measured * 10000)};
}

// 8. The security-loss arithmetic for large n.
Outcome footnote() {
  const double bits = log2_binomial(99, 50);
  const bool pass = std::abs(bits - 95.35) <= 0.01;
  return {pass, "log2 C(99,50) = " + fmt(bits)};
}

// 9. Infrastructure: wire codec round trip at scale, single-use tables
// under adversarial interleavings, and transcript determinism.
Outcome infrastructure() {
  SplitMix64 rng(0xF00D);
  // Wire: 100k random messages across the three fields.
  const FieldSpec* specs[] = {&FieldSpec::gf16(), &FieldSpec::gf256(),
                              &FieldSpec::gf2_64()};
  for (int trial = 0; trial < 100000; ++trial) {
    const FieldSpec& spec = *specs[trial % 3];
    const int m = 1 + static_cast<int>(rng.below(3));
    ProtocolMessage msg;
    const auto random_id = [&rng]() {
      std::string s;
      const std::size_t len = 1 + rng.below(8);
      for (std::size_t i = 0; i < len; ++i) {
        s.push_back(static_cast<char>('A' + rng.below(26)));
      }
      return s;
    };
    msg.hub_id = random_id();
    msg.sender_id = random_id();
    msg.receiver_id = random_id();
    msg.session_id = rng.next();
    msg.offset = rng.element(spec);
    for (int p = 0; p < 3 + m; ++p) msg.masked_share.push_back(rng.element(spec));
    msg.secret_tag = rng.element(spec);
    msg.msg_tag = rng.element(spec);
    const auto back = decode(encode(msg), spec, m);
    const bool same = back.has_value() && back->hub_id == msg.hub_id &&
                      back->sender_id == msg.sender_id &&
                      back->receiver_id == msg.receiver_id &&
                      back->session_id == msg.session_id &&
                      back->offset == msg.offset &&
                      back->masked_share == msg.masked_share &&
                      back->secret_tag == msg.secret_tag &&
                      back->msg_tag == msg.msg_tag;
    if (!same) return {false, "wire round-trip mismatch"};
  }

  // PSRD: random allocate/consume interleavings never hand out an element
  // twice.
  for (int round = 0; round < 500; ++round) {
    const int m = 1 + static_cast<int>(rng.below(2));
    const std::size_t len = 24 + rng.below(64);
    auto [table, peer] = generate_pair(
        rng, FieldSpec::gf256(), len,
        OwnerPair{"A", "P1", TableDirection::client_to_hub});
    std::map<std::uint64_t, bool> granted;
    for (int step = 0; step < 80; ++step) {
      PsrdResult r{std::nullopt, PsrdError::none};
      if (rng.below(2) == 0) {
        r = table.allocate_next(m);
      } else {
        r = table.consume_at(rng.below(len), m);
      }
      if (!r) continue;
      for (std::size_t i = 0; i < PsrdTable::block_len(m); ++i) {
        if (granted.count((*r).offset + i)) {
          return {false, "psrd element handed out twice"};
        }
        granted[(*r).offset + i] = true;
      }
    }
  }

  // Determinism across protocol modes and delivery orders.
  for (const auto mode : {ProtocolMode::skeleton, ProtocolMode::general}) {
    for (const auto delivery :
         {DeliveryMode::in_order, DeliveryMode::seeded_shuffle}) {
      ScenarioConfig cfg;
      cfg.field = "gf2_64";
      cfg.n = 5;
      cfg.k = 3;
      cfg.mode = mode;
      cfg.delivery = delivery;
      for (std::uint64_t seed : {1ull, 17ull}) {
        const auto a = run_session(cfg, seed);
        const auto b = run_session(cfg, seed);
        if (a.transcript.to_json_lines() != b.transcript.to_json_lines()) {
          return {false, "transcript mismatch for identical seeds"};
        }
      }
    }
  }
  return {true, "wire 100000 ok, psrd single-use ok, transcripts reproducible"};
}

}  // namespace

std::vector<CriterionResult> run_all(std::ostream& out) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> suite{
      {"message-tag bound, exact equality", message_tag_bound},
      {"secret-validation bound, exact", secret_validation_bound},
      {"confidentiality, exact zero distance", confidentiality},
      {"tamper linearity oracle", linearity},
      {"honest correctness and robustness", correctness_and_robustness},
      {"skeleton security at desk scale", skeleton_security},
      {"general-protocol composition", general_composition},
      {"large-n footnote arithmetic", footnote},
      {"infrastructure properties", infrastructure},
  };

  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = suite[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    CriterionResult r{static_cast<int>(i + 1), suite[i].first, outcome.pass,
                      seconds, outcome.detail};
    results.push_back(r);
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.number << ". " << r.name
        << " (" << fmt(seconds) << "s): " << r.detail << "\n";
    out.flush();
  }
  return results;
}

int run_and_report(std::ostream& out) {
  const auto results = run_all(out);
  int failures = 0;
  for (const auto& r : results) {
    if (!r.pass) ++failures;
  }
  out << (failures == 0 ? "all criteria passed\n"
                        : std::to_string(failures) + " criteria failed\n");
  return failures;
}

}  // namespace dske::acceptance
