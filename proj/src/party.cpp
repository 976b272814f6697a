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

#include "dske/party.hpp"

#include <algorithm>

#include "dske/hash.hpp"

namespace dske {

std::string to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::success: return "success";
    case OutcomeKind::abort: return "abort";
    case OutcomeKind::incomplete: return "incomplete";
    case OutcomeKind::exhausted: return "exhausted";
  }
  return "unknown";
}

Alice::Alice(const ThresholdParams& params, std::string identity,
             std::vector<std::string> hub_ids, std::vector<PsrdTable> tables)
    : params_(params),
      identity_(std::move(identity)),
      hub_ids_(std::move(hub_ids)),
      tables_(std::move(tables)) {
  if (static_cast<int>(hub_ids_.size()) != params_.n ||
      static_cast<int>(tables_.size()) != params_.n) {
    throw std::invalid_argument("need one hub id and one table per hub");
  }
}

std::optional<Alice::Initiated> Alice::initiate(const std::string& receiver,
                                                RandomSource& rng) {
  const int m = params_.m;
  // All-or-nothing: verify capacity everywhere before consuming anywhere.
  for (const auto& table : tables_) {
    if (table.next_offset() + PsrdTable::block_len(m) > table.size()) {
      return std::nullopt;
    }
  }

  std::vector<PsrdAllocation> allocs;
  allocs.reserve(static_cast<std::size_t>(params_.n));
  for (auto& table : tables_) {
    auto r = table.allocate_next(m);
    if (!r) return std::nullopt;
    allocs.push_back(std::move(*r.allocation));
  }

  // The first k pads are the shares; the rest of the shares interpolate
  // through them, so Z_i = Y_i - R_i vanishes for i <= k.
  std::vector<ShareTuple> first_k;
  for (int i = 1; i <= params_.k; ++i) {
    first_k.push_back(
        ShareTuple{i, allocs[static_cast<std::size_t>(i - 1)].share_pad});
  }
  auto extended = extend_shares(params_, first_k);

  Initiated out;
  out.secret = extended.secret;
  // (A, K) unique: a per-instance counter in the high half, a random salt
  // in the low half.
  out.session_id = (static_cast<std::uint64_t>(session_counter_++) << 32) |
                   (rng.next() & 0xFFFFFFFFull);

  const FieldElement o =
      tag_secret(extended.secret.u, extended.secret.payload);
  for (int i = 1; i <= params_.n; ++i) {
    const auto& alloc = allocs[static_cast<std::size_t>(i - 1)];
    ProtocolMessage msg;
    msg.hub_id = hub_ids_[static_cast<std::size_t>(i - 1)];
    msg.sender_id = identity_;
    msg.receiver_id = receiver;
    msg.session_id = out.session_id;
    msg.offset = g_encode(*params_.spec, alloc.offset);
    msg.masked_share = extended.shares[static_cast<std::size_t>(i - 1)].elements;
    for (int p = 0; p < params_.tuple_len(); ++p) {
      msg.masked_share[static_cast<std::size_t>(p)] +=
          alloc.share_pad[static_cast<std::size_t>(p)];
    }
    msg.secret_tag = o;
    msg.msg_tag = tag_message(alloc.tag_key, message_elements(msg));
    out.messages.push_back(encode(msg));
    out.offsets.push_back(alloc.offset);
  }
  sessions_.emplace_back(out.session_id, extended.secret);
  return out;
}

Hub::Hub(const ThresholdParams& params, int index, std::string identity,
         std::set<RouteTuple> allowlist, PsrdTable table_from_alice,
         PsrdTable table_to_bob, HubMode mode)
    : params_(params),
      index_(index),
      identity_(std::move(identity)),
      allowlist_(std::move(allowlist)),
      from_alice_(std::move(table_from_alice)),
      to_bob_(std::move(table_to_bob)),
      mode_(mode) {}

Hub::ProcessResult Hub::process(std::span<const std::uint8_t> inbound,
                                const std::string& origin,
                                const InjectHook& inject) {
  ProcessResult result;
  auto msg = decode(inbound, *params_.spec, params_.m);
  if (!msg) {
    result.discard = DiscardReason::malformed;
    return result;
  }
  const RouteTuple route{msg->hub_id, msg->sender_id, msg->receiver_id};
  if (msg->hub_id != identity_ || allowlist_.find(route) == allowlist_.end()) {
    result.discard = DiscardReason::bad_identity;
    return result;
  }
  // The link supplies the originating identity; a mismatch with the claimed
  // sender is rejected before any table element is touched, which is what
  // protects the table against depletion by impersonators.
  if (origin != msg->sender_id) {
    result.discard = DiscardReason::bad_identity;
    return result;
  }

  auto pad = from_alice_.consume_at(msg->offset.value(), params_.m);
  if (!pad) {
    result.discard = pad.error == PsrdError::already_used
                         ? DiscardReason::pad_used
                         : DiscardReason::malformed;
    return result;
  }
  result.consumed_offset = static_cast<std::int64_t>((*pad).offset);

  // Tag verification comes after retrieval; a failure here has already
  // consumed the addressed block, per the single-use constraint.
  if (!(msg->msg_tag ==
        tag_message((*pad).tag_key, message_elements(*msg)))) {
    result.discard = DiscardReason::bad_tag;
    return result;
  }

  std::vector<FieldElement> share = msg->masked_share;
  for (int p = 0; p < params_.tuple_len(); ++p) {
    share[static_cast<std::size_t>(p)] +=
        (*pad).share_pad[static_cast<std::size_t>(p)];
  }
  FieldElement secret_tag = msg->secret_tag;

  if (mode_ == HubMode::compromised) {
    result.observed_share = share;
    result.observed_secret_tag = secret_tag;
    if (inject) {
      if (auto injected = inject(index_, share, secret_tag)) {
        if (static_cast<int>(injected->share.size()) != params_.tuple_len()) {
          throw std::invalid_argument("injected share must have 3+m elements");
        }
        share = injected->share;
        secret_tag = injected->secret_tag;
      }
    }
  }

  auto out_pad = to_bob_.allocate_next(params_.m);
  if (!out_pad) {
    result.discard = DiscardReason::exhausted;
    return result;
  }

  ProtocolMessage out;
  out.hub_id = identity_;
  out.sender_id = msg->sender_id;
  out.receiver_id = msg->receiver_id;
  out.session_id = msg->session_id;
  out.offset = g_encode(*params_.spec, (*out_pad).offset);
  out.masked_share = share;
  for (int p = 0; p < params_.tuple_len(); ++p) {
    out.masked_share[static_cast<std::size_t>(p)] +=
        (*out_pad).share_pad[static_cast<std::size_t>(p)];
  }
  out.secret_tag = secret_tag;
  out.msg_tag = tag_message((*out_pad).tag_key, message_elements(out));
  result.forward = encode(out);
  return result;
}

Bob::Bob(const ThresholdParams& params, std::string identity,
         std::vector<std::string> hub_ids, std::set<RouteTuple> allowlist,
         std::vector<PsrdTable> tables)
    : params_(params),
      identity_(std::move(identity)),
      allowlist_(std::move(allowlist)),
      tables_(std::move(tables)),
      plan_(params) {
  if (static_cast<int>(hub_ids.size()) != params_.n ||
      static_cast<int>(tables_.size()) != params_.n) {
    throw std::invalid_argument("need one hub id and one table per hub");
  }
  for (int i = 0; i < params_.n; ++i) {
    hub_index_by_id_.emplace(hub_ids[static_cast<std::size_t>(i)], i + 1);
  }
}

Bob::ReceiveResult Bob::receive(std::span<const std::uint8_t> inbound,
                                const std::string& origin) {
  ReceiveResult result;
  auto msg = decode(inbound, *params_.spec, params_.m);
  if (!msg) {
    result.discard = DiscardReason::malformed;
    return result;
  }
  const auto hub_it = hub_index_by_id_.find(msg->hub_id);
  const RouteTuple route{msg->hub_id, msg->sender_id, msg->receiver_id};
  if (hub_it == hub_index_by_id_.end() || msg->receiver_id != identity_ ||
      allowlist_.find(route) == allowlist_.end()) {
    result.discard = DiscardReason::bad_identity;
    return result;
  }
  if (origin != msg->hub_id) {
    result.discard = DiscardReason::bad_identity;
    return result;
  }
  const int hub_index = hub_it->second;

  auto& table = tables_[static_cast<std::size_t>(hub_index - 1)];
  auto pad = table.consume_at(msg->offset.value(), params_.m);
  if (!pad) {
    result.discard = pad.error == PsrdError::already_used
                         ? DiscardReason::pad_used
                         : DiscardReason::malformed;
    return result;
  }
  result.consumed_offset = static_cast<std::int64_t>((*pad).offset);

  if (!(msg->msg_tag ==
        tag_message((*pad).tag_key, message_elements(*msg)))) {
    result.discard = DiscardReason::bad_tag;
    return result;
  }

  ShareTuple share{hub_index, msg->masked_share};
  for (int p = 0; p < params_.tuple_len(); ++p) {
    share.elements[static_cast<std::size_t>(p)] +=
        (*pad).share_pad[static_cast<std::size_t>(p)];
  }

  const GroupKey key{msg->sender_id, msg->receiver_id, msg->session_id,
                     msg->secret_tag.value()};
  auto& group = groups_[key];
  if (group.find(hub_index) != group.end()) {
    result.discard = DiscardReason::duplicate_hub;
    return result;
  }
  group.emplace(hub_index, std::move(share));
  result.accepted_hub = hub_index;
  result.group = key;
  return result;
}

std::vector<SecretTuple> Bob::validated_candidates(
    const GroupKey& key, const std::map<int, ShareTuple>& pool) const {
  std::vector<SecretTuple> kept;
  const FieldElement o(key.secret_tag, *params_.spec);
  for (std::size_t sp = 0; sp < plan_.subsets().size(); ++sp) {
    const auto& subset = plan_.subsets()[sp];
    const bool available = std::all_of(
        subset.begin(), subset.end(),
        [&pool](int i) { return pool.find(i) != pool.end(); });
    if (!available) continue;
    SecretTuple candidate = plan_.reconstruct_subset(sp, pool);
    if (std::find(kept.begin(), kept.end(), candidate) != kept.end()) {
      continue;  // duplicate candidate
    }
    if (tag_secret(candidate.u, candidate.payload) == o) {
      kept.push_back(std::move(candidate));
    }
  }
  return kept;
}

SessionOutcome Bob::finalize_group(const GroupKey& key) {
  const auto it = groups_.find(key);
  if (it == groups_.end()) return {OutcomeKind::incomplete, {}};
  const auto pool = std::move(it->second);
  groups_.erase(it);
  if (static_cast<int>(pool.size()) < params_.k) {
    return {OutcomeKind::incomplete, {}};
  }
  auto kept = validated_candidates(key, pool);
  if (kept.size() == 1) {
    return {OutcomeKind::success, kept.front().payload};
  }
  return {OutcomeKind::abort, {}};
}

SessionOutcome Bob::finalize_session(const std::string& sender,
                                     std::uint64_t session_id) {
  bool any_group_reached_k = false;
  std::vector<SecretTuple> kept;
  for (auto it = groups_.begin(); it != groups_.end();) {
    const auto& [key, pool] = *it;
    if (key.sender != sender || key.session_id != session_id) {
      ++it;
      continue;
    }
    if (static_cast<int>(pool.size()) >= params_.k) {
      any_group_reached_k = true;
      for (auto& candidate : validated_candidates(key, pool)) {
        if (std::find(kept.begin(), kept.end(), candidate) == kept.end()) {
          kept.push_back(std::move(candidate));
        }
      }
    }
    it = groups_.erase(it);
  }
  if (!any_group_reached_k) return {OutcomeKind::incomplete, {}};
  if (kept.size() == 1) return {OutcomeKind::success, kept.front().payload};
  return {OutcomeKind::abort, {}};
}

std::size_t Bob::largest_group(const std::string& sender,
                               std::uint64_t session_id) const {
  std::size_t largest = 0;
  for (const auto& [key, pool] : groups_) {
    if (key.sender == sender && key.session_id == session_id) {
      largest = std::max(largest, pool.size());
    }
  }
  return largest;
}

}  // namespace dske
