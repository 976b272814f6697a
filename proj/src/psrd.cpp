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

#include "dske/psrd.hpp"

#include <istream>
#include <ostream>

namespace dske {

std::string to_string(TableDirection d) {
  return d == TableDirection::client_to_hub ? "client-to-hub" : "hub-to-client";
}

std::optional<TableDirection> direction_from_string(std::string_view s) {
  if (s == "client-to-hub") return TableDirection::client_to_hub;
  if (s == "hub-to-client") return TableDirection::hub_to_client;
  return std::nullopt;
}

std::string to_string(PsrdError e) {
  switch (e) {
    case PsrdError::none: return "none";
    case PsrdError::exhausted: return "exhausted";
    case PsrdError::already_used: return "already-used";
    case PsrdError::out_of_range: return "out-of-range";
  }
  return "unknown";
}

PsrdTable::PsrdTable(OwnerPair owner, const FieldSpec& spec,
                     std::vector<FieldElement> elements)
    : owner_(std::move(owner)),
      spec_(&spec),
      elements_(std::move(elements)),
      used_(elements_.size(), false) {
  if (elements_.empty()) {
    throw std::invalid_argument("table must hold at least one element");
  }
  for (const auto& e : elements_) {
    if (!(e.spec() == spec)) {
      throw FieldMismatch("table element from a different field");
    }
  }
}

std::size_t PsrdTable::unused_count() const {
  std::size_t n = 0;
  for (bool u : used_) {
    if (!u) ++n;
  }
  return n;
}

PsrdAllocation PsrdTable::take_block(std::uint64_t offset, int m) {
  PsrdAllocation alloc;
  alloc.offset = offset;
  const std::size_t pad_len = static_cast<std::size_t>(3 + m);
  alloc.share_pad.reserve(pad_len);
  for (std::size_t i = 0; i < pad_len; ++i) {
    alloc.share_pad.push_back(elements_[offset + i]);
  }
  alloc.tag_key = MessageTagKey{elements_[offset + pad_len],
                                elements_[offset + pad_len + 1]};
  // Erasure: consumed values survive only in the returned block.
  for (std::size_t i = 0; i < block_len(m); ++i) {
    elements_[offset + i] = FieldElement(0, *spec_);
    used_[offset + i] = true;
  }
  return alloc;
}

PsrdResult PsrdTable::allocate_next(int m) {
  const std::size_t len = block_len(m);
  if (next_offset_ + len > elements_.size()) {
    return {std::nullopt, PsrdError::exhausted};
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (used_[next_offset_ + i]) return {std::nullopt, PsrdError::exhausted};
  }
  const std::uint64_t offset = next_offset_;
  next_offset_ += len;
  return {take_block(offset, m), PsrdError::none};
}

PsrdResult PsrdTable::consume_at(std::uint64_t offset, int m) {
  const std::size_t len = block_len(m);
  if (offset + len > elements_.size() || offset + len < offset) {
    return {std::nullopt, PsrdError::out_of_range};
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (used_[offset + i]) return {std::nullopt, PsrdError::already_used};
  }
  return {take_block(offset, m), PsrdError::none};
}

std::pair<PsrdTable, PsrdTable> generate_pair(RandomSource& rng,
                                              const FieldSpec& spec,
                                              std::size_t length,
                                              const OwnerPair& owner) {
  if (length == 0) {
    throw std::invalid_argument("table length must be nonzero");
  }
  // Offsets are serialized via g, whose domain ends at |F|-1.
  if (spec.bit_width() < 64 && length > spec.element_mask() + 1) {
    throw std::invalid_argument("table length exceeds |F|");
  }
  std::vector<FieldElement> elements;
  elements.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    elements.push_back(rng.element(spec));
  }
  return {PsrdTable(owner, spec, elements), PsrdTable(owner, spec, elements)};
}

namespace {

void put_u8(std::ostream& out, std::uint8_t v) {
  out.put(static_cast<char>(v));
}

void put_string(std::ostream& out, const std::string& s) {
  if (s.size() > 255) throw std::invalid_argument("id longer than 255 bytes");
  put_u8(out, static_cast<std::uint8_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

struct Reader {
  std::istream& in;
  std::size_t offset = 0;

  std::optional<std::uint8_t> u8() {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) return std::nullopt;
    ++offset;
    return static_cast<std::uint8_t>(c);
  }

  std::optional<std::string> string() {
    const auto len = u8();
    if (!len) return std::nullopt;
    std::string s(*len, '\0');
    in.read(s.data(), *len);
    if (in.gcount() != *len) {
      offset += static_cast<std::size_t>(in.gcount());
      return std::nullopt;
    }
    offset += *len;
    return s;
  }
};

}  // namespace

void write_table(std::ostream& out, const PsrdTable& table) {
  out.write("DSKE", 4);
  put_u8(out, 0x01);
  put_string(out, table.spec().name());
  put_string(out, table.owner().party);
  put_string(out, table.owner().hub);
  put_string(out, to_string(table.owner().direction));
  const std::uint32_t count = static_cast<std::uint32_t>(table.size());
  for (int i = 3; i >= 0; --i) {
    put_u8(out, static_cast<std::uint8_t>(count >> (8 * i)));
  }
  std::vector<std::uint8_t> bytes;
  bytes.reserve(table.size() * table.spec().element_bytes());
  for (std::size_t i = 0; i < table.size(); ++i) {
    append_element_bytes(bytes, table.element(i));
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

TableReadResult read_table(std::istream& in) {
  Reader r{in};
  static const char kMagic[4] = {'D', 'S', 'K', 'E'};
  for (char expected : kMagic) {
    const auto c = r.u8();
    if (!c || static_cast<char>(*c) != expected) {
      return {std::nullopt, "bad magic", c ? r.offset - 1 : r.offset};
    }
  }
  const auto version = r.u8();
  if (!version || *version != 0x01) {
    return {std::nullopt, "unsupported version",
            version ? r.offset - 1 : r.offset};
  }
  const std::size_t name_at = r.offset;
  const auto field_name = r.string();
  if (!field_name) return {std::nullopt, "truncated field name", r.offset};
  const FieldSpec* spec = FieldSpec::find(*field_name);
  if (spec == nullptr) return {std::nullopt, "unknown field spec", name_at};

  OwnerPair owner;
  const auto party = r.string();
  if (!party) return {std::nullopt, "truncated party id", r.offset};
  owner.party = *party;
  const auto hub = r.string();
  if (!hub) return {std::nullopt, "truncated hub id", r.offset};
  owner.hub = *hub;
  const std::size_t dir_at = r.offset;
  const auto dir = r.string();
  if (!dir) return {std::nullopt, "truncated direction", r.offset};
  const auto direction = direction_from_string(*dir);
  if (!direction) return {std::nullopt, "unknown direction", dir_at};
  owner.direction = *direction;

  std::uint32_t count = 0;
  for (int i = 0; i < 4; ++i) {
    const auto b = r.u8();
    if (!b) return {std::nullopt, "truncated element count", r.offset};
    count = (count << 8) | *b;
  }
  if (count == 0) return {std::nullopt, "empty table", r.offset - 4};

  std::vector<FieldElement> elements;
  elements.reserve(count);
  const std::size_t width = spec->element_bytes();
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::size_t element_at = r.offset;
    std::uint64_t value = 0;
    for (std::size_t b = 0; b < width; ++b) {
      const auto byte = r.u8();
      if (!byte) return {std::nullopt, "truncated element data", r.offset};
      value = (value << 8) | *byte;
    }
    if (!spec->contains(value)) {
      return {std::nullopt, "element exceeds field width", element_at};
    }
    elements.emplace_back(value, *spec);
  }
  if (r.u8()) {
    return {std::nullopt, "trailing bytes", r.offset - 1};
  }
  return {PsrdTable(owner, *spec, std::move(elements)), "", 0};
}

}  // namespace dske
