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

#include "dske/wire.hpp"

namespace dske {

namespace {

constexpr std::uint8_t kVersion = 0x01;

void append_id(std::vector<std::uint8_t>& out, const std::string& id) {
  if (id.size() > 255) {
    throw std::invalid_argument("id longer than 255 bytes");
  }
  out.push_back(static_cast<std::uint8_t>(id.size()));
  out.insert(out.end(), id.begin(), id.end());
}

// The length-prefixed id bytes and K, in wire order.
std::vector<std::uint8_t> header_bytes(const ProtocolMessage& msg) {
  std::vector<std::uint8_t> out;
  append_id(out, msg.hub_id);
  append_id(out, msg.sender_id);
  append_id(out, msg.receiver_id);
  for (int i = 7; i >= 0; --i) {
    out.push_back(static_cast<std::uint8_t>(msg.session_id >> (8 * i)));
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::optional<std::uint8_t> u8() {
    if (pos_ >= bytes_.size()) return std::nullopt;
    return bytes_[pos_++];
  }

  std::optional<std::string> id() {
    const auto len = u8();
    if (!len) return std::nullopt;
    if (pos_ + *len > bytes_.size()) return std::nullopt;
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), *len);
    pos_ += *len;
    return s;
  }

  std::optional<FieldElement> element(const FieldSpec& spec) {
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < spec.element_bytes(); ++i) {
      const auto b = u8();
      if (!b) return std::nullopt;
      value = (value << 8) | *b;
    }
    if (!spec.contains(value)) return std::nullopt;
    return FieldElement(value, spec);
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode(const ProtocolMessage& msg) {
  std::vector<std::uint8_t> out;
  out.push_back(kVersion);
  const auto header = header_bytes(msg);
  out.insert(out.end(), header.begin(), header.end());
  append_element_bytes(out, msg.offset);
  for (const auto& z : msg.masked_share) append_element_bytes(out, z);
  append_element_bytes(out, msg.secret_tag);
  append_element_bytes(out, msg.msg_tag);
  return out;
}

std::optional<ProtocolMessage> decode(std::span<const std::uint8_t> bytes,
                                      const FieldSpec& spec, int m) {
  Parser p(bytes);
  const auto version = p.u8();
  if (!version || *version != kVersion) return std::nullopt;

  ProtocolMessage msg;
  auto id = p.id();
  if (!id) return std::nullopt;
  msg.hub_id = std::move(*id);
  id = p.id();
  if (!id) return std::nullopt;
  msg.sender_id = std::move(*id);
  id = p.id();
  if (!id) return std::nullopt;
  msg.receiver_id = std::move(*id);

  msg.session_id = 0;
  for (int i = 0; i < 8; ++i) {
    const auto b = p.u8();
    if (!b) return std::nullopt;
    msg.session_id = (msg.session_id << 8) | *b;
  }

  auto offset = p.element(spec);
  if (!offset) return std::nullopt;
  msg.offset = *offset;
  for (int i = 0; i < 3 + m; ++i) {
    const auto z = p.element(spec);
    if (!z) return std::nullopt;
    msg.masked_share.push_back(*z);
  }
  auto o = p.element(spec);
  if (!o) return std::nullopt;
  msg.secret_tag = *o;
  auto t = p.element(spec);
  if (!t) return std::nullopt;
  msg.msg_tag = *t;

  if (!p.done()) return std::nullopt;
  return msg;
}

std::vector<FieldElement> message_elements(const ProtocolMessage& msg) {
  const FieldSpec& spec = msg.offset.spec();
  const unsigned r = spec.bit_width();
  if (r < 4) {
    throw std::invalid_argument("message tagging needs a field of width >= 4");
  }
  std::vector<FieldElement> out;
  for (std::uint8_t byte : header_bytes(msg)) {
    if (r >= 8) {
      out.emplace_back(byte, spec);
    } else {
      out.emplace_back(byte >> 4, spec);
      out.emplace_back(byte & 0x0F, spec);
    }
  }
  out.push_back(msg.offset);
  out.insert(out.end(), msg.masked_share.begin(), msg.masked_share.end());
  out.push_back(msg.secret_tag);
  return out;
}

std::size_t tagged_element_count(const FieldSpec& spec, int m,
                                 std::size_t hub_id_len,
                                 std::size_t sender_id_len,
                                 std::size_t receiver_id_len) {
  const std::size_t header = 3 + hub_id_len + sender_id_len + receiver_id_len + 8;
  const std::size_t per_byte = spec.bit_width() >= 8 ? 1 : 2;
  return header * per_byte + 1 + static_cast<std::size_t>(3 + m) + 1;
}

}  // namespace dske
