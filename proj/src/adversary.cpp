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

#include <algorithm>

#include "dske/wire.hpp"

namespace dske {

std::string to_string(ChannelLeg leg) {
  return leg == ChannelLeg::alice_to_hub ? "alice-hub" : "hub-bob";
}

void AdversaryConfig::validate(const ThresholdParams& params) const {
  for (int hub : compromised) {
    if (hub < 1 || hub > params.n) {
      throw std::invalid_argument("compromised hub index outside 1..n");
    }
  }
  if (static_cast<int>(compromised.size()) > params.k - 1) {
    throw std::invalid_argument(
        "security experiments require |C| <= k-1 compromised hubs");
  }
  if (mode == AdversaryMode::passive) {
    for (const auto& [link, policy] : channel_policies) {
      if (policy.kind != ChannelPolicyKind::faithful) {
        throw std::invalid_argument(
            "passive adversaries cannot block or mutate channels");
      }
    }
  }
  for (const auto& [link, policy] : channel_policies) {
    if (link.second < 1 || link.second > params.n) {
      throw std::invalid_argument("channel policy hub index outside 1..n");
    }
  }
  if (hub_behavior == HubBehavior::share_shift || attack.has_value()) {
    if (!attack.has_value()) {
      throw std::invalid_argument("share-shift behavior needs an attack script");
    }
    if (compromised.count(attack->target_hub) == 0) {
      throw std::invalid_argument("attack target must be a compromised hub");
    }
    if (static_cast<int>(attack->subset.size()) != params.k) {
      throw std::invalid_argument("attack subset must name k hubs");
    }
    if (std::find(attack->subset.begin(), attack->subset.end(),
                  attack->target_hub) == attack->subset.end()) {
      throw std::invalid_argument("attack subset must contain the target hub");
    }
    if (static_cast<int>(attack->secret_delta.size()) != params.tuple_len()) {
      throw std::invalid_argument("secret delta must have 3+m elements");
    }
    const bool all_zero =
        std::all_of(attack->secret_delta.begin(), attack->secret_delta.end(),
                    [](const FieldElement& e) { return e.is_zero(); });
    if (all_zero && !(attack->tag_delta && !attack->tag_delta->is_zero())) {
      throw std::invalid_argument("attack delta must be nonzero");
    }
  }
}

Eve::Eve(AdversaryConfig config, const ThresholdParams& params,
         std::uint64_t seed)
    : config_(std::move(config)), params_(params), rng_(seed) {
  config_.validate(params_);
  if (config_.attack) {
    const auto coeffs =
        lagrange_at(params_, config_.attack->subset, params_.x_coord(0));
    const FieldElement scale =
        inv(coeffs.at(config_.attack->target_hub));
    for (const auto& d : config_.attack->secret_delta) {
      derived_delta_.push_back(d * scale);
    }
  }
}

void Eve::observe_transit(ChannelLeg leg, int hub,
                          std::span<const std::uint8_t> bytes) {
  EveRecord rec;
  rec.kind = EveRecord::Kind::transit;
  rec.leg = leg;
  rec.hub = hub;
  rec.ciphertext.assign(bytes.begin(), bytes.end());
  // o and t travel in the clear; the share stays one-time padded.
  if (const auto msg = decode(bytes, *params_.spec, params_.m)) {
    rec.secret_tag = msg->secret_tag.value();
    rec.msg_tag = msg->msg_tag.value();
  }
  view_.push_back(std::move(rec));
}

std::optional<Injection> Eve::on_hub_plaintext(
    int hub, const std::vector<FieldElement>& share,
    const FieldElement& secret_tag) {
  if (!compromised(hub)) {
    throw std::logic_error("plaintext surfaced from an honest hub");
  }
  EveRecord rec;
  rec.kind = EveRecord::Kind::hub_share;
  rec.hub = hub;
  rec.share = share;
  rec.secret_tag = secret_tag.value();
  view_.push_back(std::move(rec));

  switch (config_.hub_behavior) {
    case HubBehavior::honest_relay:
      return std::nullopt;
    case HubBehavior::random_share: {
      std::vector<FieldElement> garbled;
      garbled.reserve(share.size());
      for (std::size_t i = 0; i < share.size(); ++i) {
        garbled.push_back(rng_.element(*params_.spec));
      }
      return Injection{std::move(garbled), secret_tag};
    }
    case HubBehavior::share_shift: {
      if (hub != config_.attack->target_hub) return std::nullopt;
      std::vector<FieldElement> shifted = share;
      for (std::size_t i = 0; i < shifted.size(); ++i) {
        shifted[i] += derived_delta_[i];
      }
      FieldElement tag = secret_tag;
      if (config_.attack->tag_delta) tag += *config_.attack->tag_delta;
      return Injection{std::move(shifted), tag};
    }
  }
  return std::nullopt;
}

Injection Eve::inject(int hub, std::vector<FieldElement> share,
                      FieldElement secret_tag) const {
  if (!compromised(hub)) {
    throw std::invalid_argument("cannot inject through an honest hub");
  }
  return Injection{std::move(share), secret_tag};
}

Eve::ChannelResult Eve::channel_apply(ChannelLeg leg, int hub,
                                      std::vector<std::uint8_t> bytes) {
  const auto it = config_.channel_policies.find({leg, hub});
  const ChannelPolicy policy =
      it == config_.channel_policies.end() ? ChannelPolicy{} : it->second;
  switch (policy.kind) {
    case ChannelPolicyKind::faithful:
      return {std::move(bytes), false};
    case ChannelPolicyKind::block:
      if (config_.mode == AdversaryMode::passive) {
        throw std::logic_error("blocking attempted in passive mode");
      }
      return {std::nullopt, false};
    case ChannelPolicyKind::mutate: {
      if (config_.mode == AdversaryMode::passive) {
        throw std::logic_error("mutation attempted in passive mode");
      }
      const std::size_t index =
          policy.fixed_index >= 0
              ? static_cast<std::size_t>(policy.fixed_index) % bytes.size()
              : rng_.below(bytes.size());
      const std::uint8_t mask =
          policy.xor_mask != 0
              ? policy.xor_mask
              : static_cast<std::uint8_t>(1 + rng_.below(255));
      bytes[index] ^= mask;
      return {std::move(bytes), true};
    }
  }
  return {std::move(bytes), false};
}

}  // namespace dske
