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

#ifndef DSKE_PARTY_HPP_
#define DSKE_PARTY_HPP_

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dske/psrd.hpp"
#include "dske/sharing.hpp"
#include "dske/transcript.hpp"
#include "dske/wire.hpp"

namespace dske {

enum class OutcomeKind { success, abort, incomplete, exhausted };

std::string to_string(OutcomeKind k);

// Result of one protocol run at Bob: the payload for success, empty
// otherwise. abort and incomplete both surface to callers as "no secret",
// but stay distinguishable for diagnostics and robustness accounting.
struct SessionOutcome {
  OutcomeKind kind = OutcomeKind::incomplete;
  std::vector<FieldElement> secret;
};

struct RouteTuple {
  std::string hub;
  std::string sender;
  std::string receiver;
  auto operator<=>(const RouteTuple&) const = default;
};

/// Share generation and distribution. Holds one sending table per hub; each
/// session consumes one 3+m+2 block from every table and emits one message
/// per hub, all carrying the same session id and secret tag.
class Alice {
 public:
  Alice(const ThresholdParams& params, std::string identity,
        std::vector<std::string> hub_ids, std::vector<PsrdTable> tables);

  struct Initiated {
    SecretTuple secret;
    std::uint64_t session_id = 0;
    std::vector<std::vector<std::uint8_t>> messages;  // position i -> hub i+1
    std::vector<std::uint64_t> offsets;               // consumed table offsets
  };

  // Capacity over all tables is checked before anything is consumed, so a
  // failure leaves every table untouched.
  std::optional<Initiated> initiate(const std::string& receiver,
                                    RandomSource& rng);

  const std::string& identity() const { return identity_; }
  const PsrdTable& table(int hub_index) const {
    return tables_.at(static_cast<std::size_t>(hub_index - 1));
  }

 private:
  ThresholdParams params_;
  std::string identity_;
  std::vector<std::string> hub_ids_;
  std::vector<PsrdTable> tables_;
  std::uint32_t session_counter_ = 0;
  std::vector<std::pair<std::uint64_t, SecretTuple>> sessions_;  // (K, u||S)
};

enum class HubMode { honest, compromised };

// Replacement share and secret tag chosen by the adversary for a
// compromised hub.
struct Injection {
  std::vector<FieldElement> share;
  FieldElement secret_tag;
};

// Called at a compromised hub with the plaintext it decrypted; returns the
// values to forward instead, or nullopt to relay faithfully.
using InjectHook = std::function<std::optional<Injection>(
    int hub_index, const std::vector<FieldElement>& share,
    const FieldElement& secret_tag)>;

/// Decrypt/re-encrypt relay. Honest mode verifies identity, route, pad
/// freshness and the message tag, then re-encrypts the recovered share
/// towards Bob. Compromised mode additionally surfaces the plaintext to the
/// adversary and forwards whatever it injects.
class Hub {
 public:
  Hub(const ThresholdParams& params, int index, std::string identity,
      std::set<RouteTuple> allowlist, PsrdTable table_from_alice,
      PsrdTable table_to_bob, HubMode mode = HubMode::honest);

  struct ProcessResult {
    std::optional<std::vector<std::uint8_t>> forward;
    DiscardReason discard = DiscardReason::none;
    std::int64_t consumed_offset = -1;  // in the Alice-side table
    // Populated in compromised mode: what the hub decrypted (surfaced to
    // the adversary even when it relays honestly).
    std::optional<std::vector<FieldElement>> observed_share;
    std::optional<FieldElement> observed_secret_tag;
  };

  // origin is the trusted originating identity provided by the link.
  ProcessResult process(std::span<const std::uint8_t> inbound,
                        const std::string& origin,
                        const InjectHook& inject = nullptr);

  int index() const { return index_; }
  const std::string& identity() const { return identity_; }
  HubMode mode() const { return mode_; }
  const PsrdTable& alice_side_table() const { return from_alice_; }
  const PsrdTable& bob_side_table() const { return to_bob_; }

 private:
  ThresholdParams params_;
  int index_;
  std::string identity_;
  std::set<RouteTuple> allowlist_;
  PsrdTable from_alice_;
  PsrdTable to_bob_;
  HubMode mode_;
};

struct GroupKey {
  std::string sender;
  std::string receiver;
  std::uint64_t session_id = 0;
  std::uint64_t secret_tag = 0;  // value of o
  auto operator<=>(const GroupKey&) const = default;
};

/// Collection, reconstruction over k-subsets, and secret validation.
class Bob {
 public:
  Bob(const ThresholdParams& params, std::string identity,
      std::vector<std::string> hub_ids, std::set<RouteTuple> allowlist,
      std::vector<PsrdTable> tables);

  struct ReceiveResult {
    std::optional<int> accepted_hub;
    DiscardReason discard = DiscardReason::none;
    std::int64_t consumed_offset = -1;
    std::optional<GroupKey> group;
  };

  ReceiveResult receive(std::span<const std::uint8_t> inbound,
                        const std::string& origin);

  // Candidates from every k-subset of one group, validated against the
  // group's tag; exactly one distinct validated candidate is a success,
  // zero or several distinct ones an abort, a group smaller than k is
  // incomplete. Consumes the group.
  SessionOutcome finalize_group(const GroupKey& key);

  // The same rule with candidates pooled across every group of the session
  // (A, B, K). Groups below size k contribute nothing; with no group of
  // size >= k the session is incomplete. Consumes the session's pool.
  SessionOutcome finalize_session(const std::string& sender,
                                  std::uint64_t session_id);

  const std::map<GroupKey, std::map<int, ShareTuple>>& groups() const {
    return groups_;
  }
  std::size_t largest_group(const std::string& sender,
                            std::uint64_t session_id) const;
  const PsrdTable& table(int hub_index) const {
    return tables_.at(static_cast<std::size_t>(hub_index - 1));
  }

 private:
  std::vector<SecretTuple> validated_candidates(
      const GroupKey& key, const std::map<int, ShareTuple>& pool) const;

  ThresholdParams params_;
  std::string identity_;
  std::map<std::string, int> hub_index_by_id_;
  std::set<RouteTuple> allowlist_;
  std::vector<PsrdTable> tables_;
  ReconstructionPlan plan_;
  std::map<GroupKey, std::map<int, ShareTuple>> groups_;
};

}  // namespace dske

#endif  // DSKE_PARTY_HPP_
