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

#ifndef DSKE_ADVERSARY_HPP_
#define DSKE_ADVERSARY_HPP_

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dske/party.hpp"
#include "dske/rng.hpp"
#include "dske/sharing.hpp"

namespace dske {

enum class AdversaryMode { passive, active };
enum class ChannelLeg { alice_to_hub, hub_to_bob };

std::string to_string(ChannelLeg leg);

enum class ChannelPolicyKind { faithful, block, mutate };

struct ChannelPolicy {
  ChannelPolicyKind kind = ChannelPolicyKind::faithful;
  // mutate flips one byte: index and mask are drawn per message unless
  // pinned here.
  int fixed_index = -1;
  std::uint8_t xor_mask = 0;  // 0 draws a random nonzero mask
};

using LinkId = std::pair<ChannelLeg, int>;

// What a compromised hub does with the plaintext it holds.
enum class HubBehavior { honest_relay, random_share, share_shift };

// The share-shift attack from the tamper arithmetic: adding
// y'_i = y'_0 / L_i(x_0) to share i replaces the secret reconstructed from
// `subset` with Y_0 + y'_0.
struct BestKnownAttack {
  int target_hub = 1;
  std::vector<int> subset;                 // intended k-subset, contains target
  std::vector<FieldElement> secret_delta;  // y'_0, 3+m elements, nonzero
  std::optional<FieldElement> tag_delta;   // t' added to the forwarded o
};

struct AdversaryConfig {
  std::set<int> compromised;
  AdversaryMode mode = AdversaryMode::passive;
  std::map<LinkId, ChannelPolicy> channel_policies;
  HubBehavior hub_behavior = HubBehavior::honest_relay;
  std::optional<BestKnownAttack> attack;

  void validate(const ThresholdParams& params) const;
};

struct EveRecord {
  enum class Kind { transit, hub_share } kind = Kind::transit;
  ChannelLeg leg = ChannelLeg::alice_to_hub;
  int hub = 0;
  std::vector<std::uint8_t> ciphertext;        // transit records
  std::optional<std::uint64_t> secret_tag;     // o, sent in the clear
  std::optional<std::uint64_t> msg_tag;        // t
  std::vector<FieldElement> share;             // hub_share records only
};

/// Eve as an event-hook object: the simulator calls her at every channel
/// and at every compromised hub. Honest hubs never surface a share, so her
/// share knowledge stays empty for them.
class Eve {
 public:
  Eve(AdversaryConfig config, const ThresholdParams& params,
      std::uint64_t seed);

  const AdversaryConfig& config() const { return config_; }
  bool compromised(int hub) const {
    return config_.compromised.count(hub) != 0;
  }

  // Passive listening on every message transit.
  void observe_transit(ChannelLeg leg, int hub,
                       std::span<const std::uint8_t> bytes);

  // Compromised-hub touchpoint; the returned injection (if any) replaces
  // the forwarded share and secret tag. Records the plaintext either way.
  std::optional<Injection> on_hub_plaintext(
      int hub, const std::vector<FieldElement>& share,
      const FieldElement& secret_tag);

  // Explicit injection helper; throws unless the hub is compromised.
  Injection inject(int hub, std::vector<FieldElement> share,
                   FieldElement secret_tag) const;

  struct ChannelResult {
    std::optional<std::vector<std::uint8_t>> bytes;  // empty when blocked
    bool mutated = false;
  };
  ChannelResult channel_apply(ChannelLeg leg, int hub,
                              std::vector<std::uint8_t> bytes);

  // y'_i derived from the configured attack.
  const std::vector<FieldElement>& derived_share_delta() const {
    return derived_delta_;
  }

  const std::vector<EveRecord>& view() const { return view_; }

 private:
  AdversaryConfig config_;
  ThresholdParams params_;
  SplitMix64 rng_;
  std::vector<FieldElement> derived_delta_;
  std::vector<EveRecord> view_;
};

}  // namespace dske

#endif  // DSKE_ADVERSARY_HPP_
