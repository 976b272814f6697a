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
#include <queue>
#include <sstream>

#include "json.hpp"

namespace dske {

std::string to_string(DiscardReason r) {
  switch (r) {
    case DiscardReason::none: return "none";
    case DiscardReason::malformed: return "malformed";
    case DiscardReason::bad_identity: return "bad-identity";
    case DiscardReason::pad_used: return "pad-used";
    case DiscardReason::bad_tag: return "bad-tag";
    case DiscardReason::exhausted: return "exhausted";
    case DiscardReason::duplicate_hub: return "duplicate-hub";
    case DiscardReason::tamper_detected: return "tamper-detected";
  }
  return "unknown";
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::send: return "send";
    case EventKind::deliver: return "deliver";
    case EventKind::blocked: return "blocked";
    case EventKind::discard: return "discard";
    case EventKind::relay: return "relay";
    case EventKind::accept: return "accept";
    case EventKind::finalize: return "finalize";
    case EventKind::outcome: return "outcome";
  }
  return "unknown";
}

std::string Transcript::to_json_lines() const {
  std::ostringstream out;
  for (const auto& e : events) {
    nlohmann::json j{{"seq", e.seq},
                     {"kind", to_string(e.kind)},
                     {"party", e.party}};
    if (e.hub_index != 0) j["hub"] = e.hub_index;
    if (!e.reason.empty()) j["reason"] = e.reason;
    if (e.offset >= 0) j["offset"] = e.offset;
    if (!e.detail.empty()) j["detail"] = e.detail;
    out << j.dump() << '\n';
  }
  return out.str();
}

const FieldSpec& ScenarioConfig::field_spec() const {
  const FieldSpec* spec = FieldSpec::find(field);
  if (spec == nullptr) {
    throw std::invalid_argument("unknown field spec: " + field);
  }
  return *spec;
}

ThresholdParams ScenarioConfig::params() const {
  return ThresholdParams(n, k, m, field_spec());
}

std::size_t ScenarioConfig::effective_table_length() const {
  return table_length != 0 ? table_length
                           : PsrdTable::block_len(m);
}

std::uint64_t ScenarioConfig::effective_deadline() const {
  return deadline != 0 ? deadline : 4 * static_cast<std::uint64_t>(n);
}

void ScenarioConfig::validate() const {
  const ThresholdParams p = params();  // checks k, n, m against the field
  if (n > 12) {
    throw std::invalid_argument("n is capped at 12");
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (effective_table_length() < PsrdTable::block_len(m)) {
    throw std::invalid_argument("table too short for one allocation");
  }
  if (field_spec().bit_width() < 64 &&
      effective_table_length() > field_spec().element_mask() + 1) {
    throw std::invalid_argument("table length exceeds |F|");
  }
  // Every deliverable message in an honest run must fit the event budget.
  if (effective_deadline() < 2 * static_cast<std::uint64_t>(n)) {
    throw std::invalid_argument("deadline below the honest delivery count");
  }
  for (const auto& link : drop) {
    if (link.second < 1 || link.second > n) {
      throw std::invalid_argument("drop entry names an unknown hub");
    }
  }
  adversary.validate(p);
}

namespace {

struct Delivery {
  std::uint64_t tick = 0;
  std::uint64_t seq = 0;
  ChannelLeg leg = ChannelLeg::alice_to_hub;
  int hub = 0;
  std::vector<std::uint8_t> bytes;
};

struct DeliveryOrder {
  bool operator()(const Delivery& a, const Delivery& b) const {
    if (a.tick != b.tick) return a.tick > b.tick;
    return a.seq > b.seq;
  }
};

std::string hub_name(int i) { return "P" + std::to_string(i); }

}  // namespace

SessionResult run_session(const ScenarioConfig& config, std::uint64_t seed) {
  config.validate();
  const FieldSpec& spec = config.field_spec();
  const ThresholdParams params = config.params();
  SplitMix64 rng(seed);
  SessionResult result;
  Transcript& log = result.transcript;

  // One-time setup: identical table copies on both ends of every pair.
  std::vector<std::string> hub_ids;
  for (int i = 1; i <= config.n; ++i) hub_ids.push_back(hub_name(i));

  std::vector<PsrdTable> alice_tables;
  std::vector<PsrdTable> bob_tables;
  std::vector<Hub> hubs;
  std::set<RouteTuple> bob_allowlist;
  const std::size_t table_len = config.effective_table_length();
  for (int i = 1; i <= config.n; ++i) {
    auto [hub_in, alice_copy] = generate_pair(
        rng, spec, table_len,
        OwnerPair{"A", hub_ids[i - 1], TableDirection::client_to_hub});
    auto [hub_out, bob_copy] = generate_pair(
        rng, spec, table_len,
        OwnerPair{"B", hub_ids[i - 1], TableDirection::hub_to_client});
    alice_tables.push_back(std::move(alice_copy));
    bob_tables.push_back(std::move(bob_copy));
    const RouteTuple route{hub_ids[i - 1], "A", "B"};
    bob_allowlist.insert(route);
    hubs.emplace_back(params, i, hub_ids[i - 1], std::set<RouteTuple>{route},
                      std::move(hub_in), std::move(hub_out),
                      config.adversary.compromised.count(i) != 0
                          ? HubMode::compromised
                          : HubMode::honest);
  }

  Alice alice(params, "A", hub_ids, std::move(alice_tables));
  Bob bob(params, "B", hub_ids, bob_allowlist, std::move(bob_tables));
  Eve eve(config.adversary, params, rng.next());

  const auto note_consumption = [&]() {
    for (int i = 1; i <= config.n; ++i) {
      const auto count = [](const PsrdTable& t) {
        return t.size() - t.unused_count();
      };
      result.psrd_consumed["alice." + hub_ids[i - 1]] = count(alice.table(i));
      result.psrd_consumed["hub_in." + hub_ids[i - 1]] =
          count(hubs[i - 1].alice_side_table());
      result.psrd_consumed["hub_out." + hub_ids[i - 1]] =
          count(hubs[i - 1].bob_side_table());
      result.psrd_consumed["bob." + hub_ids[i - 1]] = count(bob.table(i));
    }
  };

  auto initiated = alice.initiate("B", rng);
  if (!initiated) {
    log.log(EventKind::outcome, "B").reason = to_string(OutcomeKind::exhausted);
    result.outcome = {OutcomeKind::exhausted, {}};
    note_consumption();
    return result;
  }
  result.alice_secret = initiated->secret.payload;
  result.session_id = initiated->session_id;

  std::priority_queue<Delivery, std::vector<Delivery>, DeliveryOrder> queue;
  std::uint64_t next_seq = 0;
  std::uint64_t next_tick = 0;
  const auto schedule = [&](ChannelLeg leg, int hub,
                            std::vector<std::uint8_t> bytes) {
    const std::uint64_t tick = config.delivery == DeliveryMode::seeded_shuffle
                                   ? rng.next()
                                   : next_tick++;
    queue.push(Delivery{tick, next_seq++, leg, hub, std::move(bytes)});
  };

  for (int i = 1; i <= config.n; ++i) {
    auto& e = log.log(EventKind::send, "A", i);
    e.offset = static_cast<std::int64_t>(initiated->offsets[i - 1]);
    schedule(ChannelLeg::alice_to_hub, i, initiated->messages[i - 1]);
  }

  const auto inject_hook = [&eve](int hub, const std::vector<FieldElement>& y,
                                  const FieldElement& o) {
    return eve.on_hub_plaintext(hub, y, o);
  };

  bool group_full = false;
  std::uint64_t processed = 0;
  const std::uint64_t budget = config.effective_deadline();
  while (!queue.empty() && processed < budget && !group_full) {
    const Delivery d = queue.top();
    queue.pop();
    ++processed;
    const std::string receiver =
        d.leg == ChannelLeg::alice_to_hub ? hub_name(d.hub) : "B";

    eve.observe_transit(d.leg, d.hub, d.bytes);

    if (config.delivery == DeliveryMode::drop_set &&
        std::find(config.drop.begin(), config.drop.end(),
                  LinkId{d.leg, d.hub}) != config.drop.end()) {
      auto& e = log.log(EventKind::blocked, receiver, d.hub);
      e.detail = "drop-set";
      continue;
    }

    auto ch = eve.channel_apply(d.leg, d.hub, d.bytes);
    if (!ch.bytes) {
      log.log(EventKind::blocked, receiver, d.hub);
      continue;
    }
    if (ch.mutated) {
      ++result.mutated_deliveries;
      if (config.mode == ProtocolMode::skeleton) {
        // Oracle-authenticated channel: the receiver sees only a tamper
        // flag, nothing is consumed.
        auto& e = log.log(EventKind::discard, receiver, d.hub);
        e.reason = to_string(DiscardReason::tamper_detected);
        continue;
      }
    }
    log.log(EventKind::deliver, receiver, d.hub);

    if (d.leg == ChannelLeg::alice_to_hub) {
      auto r = hubs[d.hub - 1].process(*ch.bytes, "A", inject_hook);
      if (r.forward) {
        auto& e = log.log(EventKind::relay, receiver, d.hub);
        e.offset = r.consumed_offset;
        if (ch.mutated) ++result.forged_accepted;
        schedule(ChannelLeg::hub_to_bob, d.hub, std::move(*r.forward));
      } else {
        auto& e = log.log(EventKind::discard, receiver, d.hub);
        e.reason = to_string(r.discard);
        e.offset = r.consumed_offset;
      }
    } else {
      auto r = bob.receive(*ch.bytes, hub_name(d.hub));
      if (r.accepted_hub) {
        auto& e = log.log(EventKind::accept, "B", d.hub);
        e.offset = r.consumed_offset;
        if (ch.mutated) ++result.forged_accepted;
        if (bob.largest_group("A", initiated->session_id) ==
            static_cast<std::size_t>(config.n)) {
          group_full = true;
        }
      } else {
        auto& e = log.log(EventKind::discard, "B", d.hub);
        e.reason = to_string(r.discard);
        e.offset = r.consumed_offset;
      }
    }
  }

  auto& fin = log.log(EventKind::finalize, "B");
  fin.detail = group_full ? "group-full" : "deadline";
  result.outcome = bob.finalize_session("A", initiated->session_id);
  auto& out = log.log(EventKind::outcome, "B");
  out.reason = to_string(result.outcome.kind);
  note_consumption();
  return result;
}

TrialAggregate run_trials(const ScenarioConfig& config) {
  config.validate();
  TrialAggregate agg;
  agg.trials = config.trials;
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    const auto r = run_session(config, derive_seed(config.master_seed, t));
    switch (r.outcome.kind) {
      case OutcomeKind::success:
        if (r.wrong_secret()) {
          ++agg.wrong_secret;
        } else {
          ++agg.success;
        }
        break;
      case OutcomeKind::abort: ++agg.abort; break;
      case OutcomeKind::incomplete: ++agg.incomplete; break;
      case OutcomeKind::exhausted: ++agg.exhausted; break;
    }
    agg.mutated_deliveries += r.mutated_deliveries;
    agg.forged_accepted += r.forged_accepted;
  }
  return agg;
}

}  // namespace dske
