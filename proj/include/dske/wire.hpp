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

#ifndef DSKE_WIRE_HPP_
#define DSKE_WIRE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dske/field.hpp"

namespace dske {

// The wire tuple M || t with M = P_i || A || B || K || g(j) || Z || o.
// Z always carries 3+m elements, even for the first k shares where it is
// all zeros.
struct ProtocolMessage {
  std::string hub_id;        // P_i
  std::string sender_id;     // A
  std::string receiver_id;   // B
  std::uint64_t session_id;  // K, 8 bytes big-endian on the wire
  FieldElement offset;       // g(j), table offset of the addressed block
  std::vector<FieldElement> masked_share;  // Z
  FieldElement secret_tag;   // o
  FieldElement msg_tag;      // t
};

// Layout: version byte 0x01; three length-prefixed (1-byte length) UTF-8
// ids; 8-byte big-endian K; then g(j), 3+m elements of Z, o, t, each element
// big-endian at fixed width ceil(r/8). Throws if an id exceeds 255 bytes.
std::vector<std::uint8_t> encode(const ProtocolMessage& msg);

// Inverse of encode. Returns nullopt on any malformed input: truncation,
// bad version, element value outside the field, trailing bytes, or a share
// count different from 3+m. A malformed message is discarded before any
// PSRD is consumed.
std::optional<ProtocolMessage> decode(std::span<const std::uint8_t> bytes,
                                      const FieldSpec& spec, int m);

// Canonical element sequence fed to the message tag: the length-prefixed id
// bytes and the K bytes packed into elements (one byte per element for
// r >= 8, two 4-bit elements per byte for 4 <= r < 8), then g(j), Z, o.
// Deterministic and injective for a fixed field; excludes t.
std::vector<FieldElement> message_elements(const ProtocolMessage& msg);

// Number of tagged elements for a message with the given id lengths; this is
// the `s` in the channel forgery bound.
std::size_t tagged_element_count(const FieldSpec& spec, int m,
                                 std::size_t hub_id_len,
                                 std::size_t sender_id_len,
                                 std::size_t receiver_id_len);

}  // namespace dske

#endif  // DSKE_WIRE_HPP_
