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

#include "dske/field.hpp"

#include <set>

#include "doctest.h"
#include "dske/rng.hpp"

namespace dske {
namespace {

// Independent oracle: schoolbook polynomial multiply into a 128-bit-wide
// accumulator, then long division by the reduction polynomial.
std::uint64_t schoolbook_mul(std::uint64_t a, std::uint64_t b, unsigned r,
                             std::uint64_t poly) {
  // Product fits in 2r-1 <= 127 bits; gf16 and gf256 fit comfortably in 64.
  REQUIRE(r <= 16);
  std::uint64_t prod = 0;
  for (unsigned i = 0; i < r; ++i) {
    if (b & (std::uint64_t{1} << i)) prod ^= a << i;
  }
  const std::uint64_t full = poly | (std::uint64_t{1} << r);
  for (int bit = 2 * static_cast<int>(r) - 2; bit >= static_cast<int>(r);
       --bit) {
    if (prod & (std::uint64_t{1} << bit)) prod ^= full << (bit - r);
  }
  return prod;
}

// Oracle for inverses: exhaustive search for b with a*b == 1.
std::uint64_t search_inverse(std::uint64_t a, unsigned r, std::uint64_t poly) {
  for (std::uint64_t b = 1; b < (std::uint64_t{1} << r); ++b) {
    if (schoolbook_mul(a, b, r, poly) == 1) return b;
  }
  FAIL("no inverse found");
  return 0;
}

FieldElement fe16(std::uint64_t v) { return FieldElement(v, FieldSpec::gf16()); }

TEST_SUITE("field") {

TEST_CASE("construction validates the reduction polynomial") {
  CHECK_NOTHROW(FieldSpec("f", 4, 0x3));
  CHECK_NOTHROW(FieldSpec("f", 4, 0xF));             // x^4+x^3+x^2+x+1
  CHECK_THROWS_AS(FieldSpec("f", 4, 0x0), std::invalid_argument);  // x^4
  CHECK_THROWS_AS(FieldSpec("f", 4, 0x1), std::invalid_argument);  // (x+1)^4
  CHECK_THROWS_AS(FieldSpec("f", 8, 0x05), std::invalid_argument); // (x^4+x+1)^2
  CHECK_THROWS_AS(FieldSpec("f", 40, 0x1B), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec("f", 0, 0x1), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec("f", 65, 0x1), std::invalid_argument);
}

TEST_CASE("built-in specs") {
  CHECK(FieldSpec::gf16().bit_width() == 4);
  CHECK(FieldSpec::gf16().reduction_poly() == 0x3);
  CHECK(FieldSpec::gf16().element_bytes() == 1);
  CHECK(FieldSpec::gf256().reduction_poly() == 0x1B);
  CHECK(FieldSpec::gf2_64().bit_width() == 64);
  CHECK(FieldSpec::gf2_64().element_bytes() == 8);
  CHECK(FieldSpec::find("gf256") == &FieldSpec::gf256());
  CHECK(FieldSpec::find("nope") == nullptr);
}

TEST_CASE("addition") {
  CHECK(fe16(0x6) + fe16(0x6) == fe16(0x0));
  CHECK(fe16(0xA) + fe16(0x0) == fe16(0xA));
  CHECK(fe16(0x6) + fe16(0x3) == fe16(0x5));
  // Subtraction coincides with addition.
  CHECK(fe16(0x6) - fe16(0x3) == fe16(0x5));
}

TEST_CASE("multiplication matches the schoolbook oracle") {
  CHECK(fe16(0x1) * fe16(0x9) == fe16(0x9));
  CHECK(schoolbook_mul(0x6, 0x7, 4, 0x3) == 0x1);
  CHECK(fe16(0x6) * fe16(0x7) == fe16(0x1));
  CHECK(schoolbook_mul(0x2, 0xE, 4, 0x3) == 0xF);
  CHECK(fe16(0x2) * fe16(0xE) == fe16(0xF));

  for (std::uint64_t a = 0; a < 16; ++a) {
    for (std::uint64_t b = 0; b < 16; ++b) {
      CHECK((fe16(a) * fe16(b)).value() == schoolbook_mul(a, b, 4, 0x3));
    }
  }
  const FieldSpec& f256 = FieldSpec::gf256();
  SplitMix64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t a = rng.next() & 0xFF;
    const std::uint64_t b = rng.next() & 0xFF;
    CHECK((FieldElement(a, f256) * FieldElement(b, f256)).value() ==
          schoolbook_mul(a, b, 8, 0x1B));
  }
}

TEST_CASE("inverses") {
  CHECK(inv(fe16(0x1)) == fe16(0x1));
  CHECK(search_inverse(0x6, 4, 0x3) == 0x7);
  CHECK(inv(fe16(0x6)) == fe16(0x7));
  CHECK(search_inverse(0x3, 4, 0x3) == 0xE);
  CHECK(inv(fe16(0x3)) == fe16(0xE));
  CHECK_THROWS_AS(inv(fe16(0x0)), std::domain_error);

  for (std::uint64_t a = 1; a < 16; ++a) {
    CHECK(fe16(a) * inv(fe16(a)) == fe16(0x1));
  }
  const FieldSpec& f256 = FieldSpec::gf256();
  for (std::uint64_t a = 1; a < 256; ++a) {
    const FieldElement e(a, f256);
    CHECK(e * inv(e) == FieldElement(1, f256));
  }
}

TEST_CASE("exponentiation") {
  CHECK(pow(fe16(0x2), 1) == fe16(0x2));
  CHECK(pow(fe16(0x2), 2) == fe16(0x4));
  CHECK(pow(fe16(0x2), 4) == fe16(0x3));  // x^4 = x + 1
  CHECK(pow(fe16(0x0), 0) == fe16(0x1));  // 0^0 := 1
  CHECK(pow(fe16(0x7), 0) == fe16(0x1));
  CHECK(pow(fe16(0x0), 5) == fe16(0x0));
}

TEST_CASE("g encodes integers as elements") {
  CHECK(g_encode(FieldSpec::gf16(), 0) == fe16(0x0));
  CHECK(g_encode(FieldSpec::gf16(), 15) == fe16(0xF));
  CHECK_THROWS_AS(g_encode(FieldSpec::gf16(), 16), std::out_of_range);
  // Bijective: distinct inputs, distinct elements.
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 16; ++i) {
    seen.insert(g_encode(FieldSpec::gf16(), i).value());
  }
  CHECK(seen.size() == 16);
}

TEST_CASE("field axioms hold exhaustively over gf16") {
  const FieldElement zero = fe16(0), one = fe16(1);
  for (std::uint64_t a = 0; a < 16; ++a) {
    CHECK(fe16(a) + zero == fe16(a));
    CHECK(fe16(a) + fe16(a) == zero);
    CHECK(fe16(a) * one == fe16(a));
    for (std::uint64_t b = 0; b < 16; ++b) {
      CHECK(fe16(a) + fe16(b) == fe16(b) + fe16(a));
      CHECK(fe16(a) * fe16(b) == fe16(b) * fe16(a));
      for (std::uint64_t c = 0; c < 16; ++c) {
        CHECK((fe16(a) + fe16(b)) + fe16(c) == fe16(a) + (fe16(b) + fe16(c)));
        CHECK((fe16(a) * fe16(b)) * fe16(c) == fe16(a) * (fe16(b) * fe16(c)));
        CHECK(fe16(a) * (fe16(b) + fe16(c)) ==
              fe16(a) * fe16(b) + fe16(a) * fe16(c));
      }
    }
  }
}

TEST_CASE("field axioms hold on random triples over gf256 and gf2_64") {
  for (const FieldSpec* spec : {&FieldSpec::gf256(), &FieldSpec::gf2_64()}) {
    SplitMix64 rng(42);
    for (int i = 0; i < 100000; ++i) {
      const FieldElement a = rng.element(*spec);
      const FieldElement b = rng.element(*spec);
      const FieldElement c = rng.element(*spec);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a + b == b + a);
      CHECK(a + FieldElement(0, *spec) == a);
      CHECK(a + a == FieldElement(0, *spec));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * b == b * a);
      CHECK(a * FieldElement(1, *spec) == a);
      CHECK(a * (b + c) == a * b + a * c);
    }
  }
}

TEST_CASE("multiplication by a fixed nonzero element permutes gf16") {
  for (std::uint64_t a = 1; a < 16; ++a) {
    std::set<std::uint64_t> image;
    for (std::uint64_t x = 0; x < 16; ++x) {
      image.insert((fe16(a) * fe16(x)).value());
    }
    CHECK(image.size() == 16);
  }
}

TEST_CASE("operations across fields are rejected") {
  const FieldElement a = fe16(0x3);
  const FieldElement b(0x3, FieldSpec::gf256());
  CHECK_THROWS_AS(a + b, FieldMismatch);
  CHECK_THROWS_AS(a * b, FieldMismatch);
  CHECK_THROWS_AS((void)(a == b), FieldMismatch);
  // Same parameters in a separately constructed spec are the same field.
  const FieldSpec clone("clone-of-gf16", 4, 0x3);
  CHECK(a + FieldElement(0x3, clone) == fe16(0x0));
}

TEST_CASE("element value must fit the field") {
  CHECK_THROWS_AS(FieldElement(16, FieldSpec::gf16()), std::out_of_range);
}

TEST_CASE("big-endian fixed-width serialization") {
  std::vector<std::uint8_t> out;
  append_element_bytes(out, fe16(0xA));
  CHECK(out == std::vector<std::uint8_t>{0x0A});
  out.clear();
  append_element_bytes(out, FieldElement(0x0123456789ABCDEFull, FieldSpec::gf2_64()));
  CHECK(out == std::vector<std::uint8_t>{0x01, 0x23, 0x45, 0x67, 0x89, 0xAB,
                                         0xCD, 0xEF});
}

}  // TEST_SUITE

}  // namespace
}  // namespace dske
