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

#ifndef DSKE_TRANSCRIPT_HPP_
#define DSKE_TRANSCRIPT_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace dske {

enum class DiscardReason {
  none,
  malformed,
  bad_identity,
  pad_used,
  bad_tag,
  exhausted,
  duplicate_hub,
  tamper_detected,
};

std::string to_string(DiscardReason r);

enum class EventKind {
  send,
  deliver,
  blocked,
  discard,
  relay,
  accept,
  finalize,
  outcome,
};

std::string to_string(EventKind k);

struct TranscriptEvent {
  std::uint64_t seq = 0;
  EventKind kind = EventKind::send;
  std::string party;   // "A", "B", or a hub id
  int hub_index = 0;   // 0 when not applicable
  std::string reason;  // discard reason or outcome label
  std::int64_t offset = -1;  // consumed table offset when applicable
  std::string detail;
};

struct Transcript {
  std::vector<TranscriptEvent> events;

  TranscriptEvent& log(EventKind kind, std::string party, int hub_index = 0) {
    events.push_back(TranscriptEvent{events.size(), kind, std::move(party),
                                     hub_index, "", -1, ""});
    return events.back();
  }

  // One JSON object per line.
  std::string to_json_lines() const;
};

}  // namespace dske

#endif  // DSKE_TRANSCRIPT_HPP_
