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

#ifndef DSKE_PSRD_HPP_
#define DSKE_PSRD_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dske/field.hpp"
#include "dske/hash.hpp"
#include "dske/rng.hpp"

namespace dske {

enum class TableDirection { client_to_hub, hub_to_client };

std::string to_string(TableDirection d);
std::optional<TableDirection> direction_from_string(std::string_view s);

struct OwnerPair {
  std::string party;
  std::string hub;
  TableDirection direction = TableDirection::client_to_hub;
};

// One contiguous block of pre-shared randomness: a 3+m element one-time pad
// for the share plus a 2-element one-time message tag key.
struct PsrdAllocation {
  std::uint64_t offset = 0;
  std::vector<FieldElement> share_pad;
  MessageTagKey tag_key;
};

enum class PsrdError { none, exhausted, already_used, out_of_range };

std::string to_string(PsrdError e);

struct PsrdResult {
  std::optional<PsrdAllocation> allocation;
  PsrdError error = PsrdError::none;

  explicit operator bool() const { return allocation.has_value(); }
  const PsrdAllocation& operator*() const { return *allocation; }
};

/// An ordered table of pre-shared random elements. Senders allocate blocks
/// at a monotone cursor; receivers consume blocks at the offset named in a
/// message, each element at most once. Consumed elements are zeroed.
class PsrdTable {
 public:
  PsrdTable(OwnerPair owner, const FieldSpec& spec,
            std::vector<FieldElement> elements);

  const OwnerPair& owner() const { return owner_; }
  const FieldSpec& spec() const { return *spec_; }
  std::size_t size() const { return elements_.size(); }
  std::uint64_t next_offset() const { return next_offset_; }
  std::size_t unused_count() const;
  bool used(std::size_t index) const { return used_.at(index); }
  const FieldElement& element(std::size_t index) const {
    return elements_.at(index);
  }

  static std::size_t block_len(int m) { return static_cast<std::size_t>(3 + m + 2); }

  // Next block at the cursor; fails with `exhausted` leaving the table
  // unchanged. Sender side only.
  PsrdResult allocate_next(int m);

  // Block at an arbitrary offset; fails with `out_of_range` or
  // `already_used` (replay / depletion attack) without consuming anything.
  PsrdResult consume_at(std::uint64_t offset, int m);

 private:
  PsrdAllocation take_block(std::uint64_t offset, int m);

  OwnerPair owner_;
  const FieldSpec* spec_;
  std::vector<FieldElement> elements_;
  std::vector<bool> used_;
  std::uint64_t next_offset_ = 0;
};

// The one-time setup: two identical tables of uniform elements, one copy for
// each end of the owner pair. Length is capped at |F| so offsets stay within
// the g-encoding domain.
std::pair<PsrdTable, PsrdTable> generate_pair(RandomSource& rng,
                                              const FieldSpec& spec,
                                              std::size_t length,
                                              const OwnerPair& owner);

// ---- table file format ------------------------------------------------
//
// magic "DSKE", version byte 0x01, field spec name (1-byte length prefix),
// party / hub / direction ids (1-byte length prefixes), element count as
// 32-bit big-endian, then elements big-endian at fixed width ceil(r/8).

void write_table(std::ostream& out, const PsrdTable& table);

struct TableReadResult {
  std::optional<PsrdTable> table;
  std::string error;          // empty on success
  std::size_t error_offset = 0;  // byte offset of the first malformed byte
};

TableReadResult read_table(std::istream& in);

}  // namespace dske

#endif  // DSKE_PSRD_HPP_
