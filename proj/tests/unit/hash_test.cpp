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

#include "dske/hash.hpp"

#include <array>
#include <vector>

#include "doctest.h"
#include "dske/rng.hpp"

namespace dske {
namespace {

FieldElement fe16(std::uint64_t v) { return FieldElement(v, FieldSpec::gf16()); }

// Oracle: term-by-term evaluation with explicit powers, independent of the
// Horner path used by the implementation.
FieldElement message_tag_oracle(const MessageTagKey& key,
                                std::span<const FieldElement> msg) {
  FieldElement t = key.d;
  for (std::size_t j = 0; j < msg.size(); ++j) {
    t += pow(key.c, j + 1) * msg[j];
  }
  return t;
}

FieldElement secret_tag_oracle(const SecretTagKey& key,
                               std::span<const FieldElement> y) {
  FieldElement t = key.d + key.c * key.e;
  for (std::size_t j = 0; j < y.size(); ++j) {
    t += pow(key.c, j + 2) * y[j];
  }
  return t;
}

TEST_SUITE("hash") {

TEST_CASE("message tag examples") {
  const std::vector<FieldElement> one{fe16(0x3)};
  CHECK(tag_message({fe16(0x2), fe16(0x1)}, one) == fe16(0x7));
  const std::vector<FieldElement> two{fe16(0x3), fe16(0x1)};
  CHECK(tag_message({fe16(0x2), fe16(0x1)}, two) == fe16(0x3));
  // c = 0 kills every message term.
  for (std::uint64_t v = 0; v < 16; ++v) {
    const std::vector<FieldElement> msg{fe16(v), fe16(15 - v)};
    CHECK(tag_message({fe16(0x0), fe16(0x9)}, msg) == fe16(0x9));
  }
}

TEST_CASE("secret tag examples") {
  const std::vector<FieldElement> one{fe16(0x5)};
  CHECK(tag_secret({fe16(0x2), fe16(0x1), fe16(0x3)}, one) == fe16(0x0));
  for (std::uint64_t e = 0; e < 16; ++e) {
    CHECK(tag_secret({fe16(0x0), fe16(0x8), fe16(e)}, one) == fe16(0x8));
  }
  // c = 1 makes every power 1, so the tag is the plain sum.
  const std::vector<FieldElement> two{fe16(0x4), fe16(0x6)};
  CHECK(tag_secret({fe16(0x1), fe16(0x0), fe16(0x0)}, two) == fe16(0x2));
}

TEST_CASE("matches the term-by-term oracle on random inputs") {
  SplitMix64 rng(7);
  for (const FieldSpec* spec : {&FieldSpec::gf16(), &FieldSpec::gf2_64()}) {
    for (int trial = 0; trial < 2000; ++trial) {
      const std::size_t len = 1 + rng.below(6);
      std::vector<FieldElement> v;
      for (std::size_t i = 0; i < len; ++i) v.push_back(rng.element(*spec));
      const MessageTagKey mk{rng.element(*spec), rng.element(*spec)};
      CHECK(tag_message(mk, v) == message_tag_oracle(mk, v));
      const SecretTagKey sk{rng.element(*spec), rng.element(*spec),
                            rng.element(*spec)};
      CHECK(tag_secret(sk, v) == secret_tag_oracle(sk, v));
    }
  }
}

TEST_CASE("empty inputs are rejected") {
  const std::vector<FieldElement> empty;
  CHECK_THROWS_AS(tag_message({fe16(1), fe16(2)}, empty),
                  std::invalid_argument);
  CHECK_THROWS_AS(tag_secret({fe16(1), fe16(2), fe16(3)}, empty),
                  std::invalid_argument);
}

TEST_CASE("tag is uniform over the d component") {
  // For every fixed (c, e, secret), the map d -> tag is a bijection, so a
  // uniform d gives a uniform tag regardless of the hashed value.
  for (std::uint64_t c = 0; c < 16; ++c) {
    for (std::uint64_t e = 0; e < 16; ++e) {
      for (std::uint64_t y = 0; y < 16; ++y) {
        const std::vector<FieldElement> secret{fe16(y)};
        std::array<int, 16> hits{};
        for (std::uint64_t d = 0; d < 16; ++d) {
          ++hits[tag_secret({fe16(c), fe16(d), fe16(e)}, secret).value()];
        }
        for (int h : hits) CHECK(h == 1);
      }
    }
  }
}

TEST_CASE("tag is linear in d") {
  SplitMix64 rng(11);
  const FieldSpec& spec = FieldSpec::gf256();
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t len = 1 + rng.below(4);
    std::vector<FieldElement> y;
    for (std::size_t i = 0; i < len; ++i) y.push_back(rng.element(spec));
    const FieldElement c = rng.element(spec), d1 = rng.element(spec),
                       d2 = rng.element(spec), e = rng.element(spec);
    CHECK(tag_secret({c, d1 + d2, e}, y) == tag_secret({c, d1, e}, y) + d2);
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace dske
