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

#ifndef DSKE_SIMNET_HPP_
#define DSKE_SIMNET_HPP_

#include <iosfwd>
#include <map>
#include <string>

#include "dske/adversary.hpp"
#include "dske/party.hpp"
#include "dske/transcript.hpp"

namespace dske {

// skeleton: channels are oracle-authenticated, any tampering is flagged to
// the receiver with certainty. general: channels are raw; integrity rests
// entirely on the per-message tags.
enum class ProtocolMode { skeleton, general };

enum class DeliveryMode { in_order, seeded_shuffle, drop_set };

struct ScenarioConfig {
  std::string field = "gf2_64";
  int n = 3;
  int k = 2;
  int m = 1;
  ProtocolMode mode = ProtocolMode::skeleton;
  std::size_t table_length = 0;   // 0 = one allocation per pair
  std::uint64_t deadline = 0;     // processed-event budget; 0 = 4n
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 1;
  DeliveryMode delivery = DeliveryMode::in_order;
  std::vector<LinkId> drop;       // skipped deliveries in drop_set mode
  AdversaryConfig adversary;

  const FieldSpec& field_spec() const;
  ThresholdParams params() const;
  std::size_t effective_table_length() const;
  std::uint64_t effective_deadline() const;
  void validate() const;  // throws std::invalid_argument
};

// Self-describing `key = value` text format; see the shipped configs for
// the schema. Throws std::runtime_error naming the offending line.
ScenarioConfig parse_scenario(std::istream& in);
ScenarioConfig parse_scenario_string(const std::string& text);

struct SessionResult {
  SessionOutcome outcome;
  std::vector<FieldElement> alice_secret;
  std::uint64_t session_id = 0;
  Transcript transcript;
  // Elements consumed per table, keyed e.g. "alice.P2", "hub_in.P2",
  // "hub_out.P2", "bob.P2".
  std::map<std::string, std::size_t> psrd_consumed;
  std::uint64_t mutated_deliveries = 0;
  std::uint64_t forged_accepted = 0;  // tampered messages passing the checks

  bool wrong_secret() const {
    return outcome.kind == OutcomeKind::success &&
           !(outcome.secret == alice_secret);
  }
};

// One full protocol run, deterministic given (config, seed).
SessionResult run_session(const ScenarioConfig& config, std::uint64_t seed);

struct TrialAggregate {
  std::uint64_t trials = 0;
  std::uint64_t success = 0;
  std::uint64_t wrong_secret = 0;
  std::uint64_t abort = 0;
  std::uint64_t incomplete = 0;
  std::uint64_t exhausted = 0;
  std::uint64_t mutated_deliveries = 0;
  std::uint64_t forged_accepted = 0;
};

// Seeds derived from master_seed by trial index; the fold is
// order-independent.
TrialAggregate run_trials(const ScenarioConfig& config);

}  // namespace dske

#endif  // DSKE_SIMNET_HPP_
