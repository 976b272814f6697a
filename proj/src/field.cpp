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

#include <utility>

namespace dske {

namespace {

unsigned poly_degree(std::uint64_t p) {
  unsigned d = 0;
  while (p > 1) {
    p >>= 1;
    ++d;
  }
  return d;
}

// Remainder of a by b, both full GF(2)[x] coefficient masks, b != 0.
std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
  const unsigned db = poly_degree(b);
  while (a != 0) {
    const unsigned da = poly_degree(a);
    if (da < db) break;
    a ^= b << (da - db);
  }
  return a;
}

// Exhaustive trial division over all divisor candidates of degree 1..r/2.
// Only called for r <= 16, where the candidate space is at most 2^9.
bool is_irreducible_small(unsigned r, std::uint64_t reduction_poly) {
  const std::uint64_t full = reduction_poly | (std::uint64_t{1} << r);
  if ((full & 1) == 0) return false;  // divisible by x
  for (unsigned d = 1; 2 * d <= r; ++d) {
    for (std::uint64_t q = (std::uint64_t{1} << d);
         q < (std::uint64_t{1} << (d + 1)); ++q) {
      if (poly_mod(full, q) == 0) return false;
    }
  }
  return true;
}

struct KnownIrreducible {
  unsigned r;
  std::uint64_t poly;
};

// Trusted reduction polynomials for widths too large to factor exhaustively.
constexpr KnownIrreducible kKnownIrreducibles[] = {
    {32, 0x8Du},  // x^32 + x^7 + x^3 + x^2 + 1
    {64, 0x1Bu},  // x^64 + x^4 + x^3 + x + 1
};

}  // namespace

FieldSpec::FieldSpec(std::string name, unsigned bit_width,
                     std::uint64_t reduction_poly)
    : name_(std::move(name)), r_(bit_width), poly_(reduction_poly) {
  if (r_ == 0 || r_ > 64) {
    throw std::invalid_argument("field bit width must be in 1..64");
  }
  mask_ = (r_ == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << r_) - 1;
  if (poly_ > mask_) {
    throw std::invalid_argument("reduction polynomial exceeds field width");
  }
  if (r_ <= 16) {
    if (!is_irreducible_small(r_, poly_)) {
      throw std::invalid_argument("reduction polynomial is not irreducible");
    }
  } else {
    bool known = false;
    for (const auto& k : kKnownIrreducibles) {
      if (k.r == r_ && k.poly == poly_) known = true;
    }
    if (!known) {
      throw std::invalid_argument(
          "reduction polynomial not in the trusted list for r > 16");
    }
  }
}

const FieldSpec& FieldSpec::gf16() {
  static const FieldSpec spec("gf16", 4, 0x3);
  return spec;
}

const FieldSpec& FieldSpec::gf256() {
  static const FieldSpec spec("gf256", 8, 0x1B);
  return spec;
}

const FieldSpec& FieldSpec::gf2_64() {
  static const FieldSpec spec("gf2_64", 64, 0x1B);
  return spec;
}

const FieldSpec* FieldSpec::find(std::string_view name) {
  if (name == "gf16") return &gf16();
  if (name == "gf256") return &gf256();
  if (name == "gf2_64") return &gf2_64();
  return nullptr;
}

FieldElement::FieldElement(std::uint64_t value, const FieldSpec& spec)
    : value_(value), spec_(&spec) {
  if (!spec.contains(value)) {
    throw std::out_of_range("element value exceeds field width");
  }
}

const FieldSpec& FieldElement::spec() const {
  if (spec_ == nullptr) throw std::logic_error("use of null field element");
  return *spec_;
}

void FieldElement::require_same_spec(const FieldElement& other) const {
  if (spec_ == nullptr || other.spec_ == nullptr) {
    throw FieldMismatch("operation on a null field element");
  }
  if (spec_ != other.spec_ && !(*spec_ == *other.spec_)) {
    throw FieldMismatch("operands belong to different fields");
  }
}

FieldElement& FieldElement::operator+=(const FieldElement& other) {
  require_same_spec(other);
  value_ ^= other.value_;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& other) {
  require_same_spec(other);
  const std::uint64_t poly = spec_->reduction_poly();
  const std::uint64_t mask = spec_->element_mask();
  const std::uint64_t high = std::uint64_t{1} << (spec_->bit_width() - 1);
  std::uint64_t a = value_;
  std::uint64_t b = other.value_;
  std::uint64_t acc = 0;
  while (b != 0) {
    if (b & 1) acc ^= a;
    b >>= 1;
    const bool carry = (a & high) != 0;
    a = (a << 1) & mask;
    if (carry) a ^= poly;
  }
  value_ = acc;
  return *this;
}

bool FieldElement::operator==(const FieldElement& other) const {
  require_same_spec(other);
  return value_ == other.value_;
}

FieldElement pow(const FieldElement& a, std::uint64_t exponent) {
  FieldElement result(1, a.spec());
  FieldElement base = a;
  while (exponent != 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

namespace {

unsigned degree128(unsigned __int128 p) {
  const std::uint64_t hi = static_cast<std::uint64_t>(p >> 64);
  if (hi != 0) return 127u - static_cast<unsigned>(__builtin_clzll(hi));
  const std::uint64_t lo = static_cast<std::uint64_t>(p);
  return 63u - static_cast<unsigned>(__builtin_clzll(lo));
}

}  // namespace

FieldElement inv(const FieldElement& a) {
  if (a.is_zero()) throw std::domain_error("zero element has no inverse");
  // Extended Euclid on GF(2)[x]; the modulus needs bit r, so the state is
  // kept in 128-bit words to cover r = 64.
  using u128 = unsigned __int128;
  const FieldSpec& spec = a.spec();
  u128 u = a.value();
  u128 v = (u128{1} << spec.bit_width()) | spec.reduction_poly();
  u128 g1 = 1, g2 = 0;
  while (u != 1 && v != 1) {
    int shift = static_cast<int>(degree128(u)) - static_cast<int>(degree128(v));
    if (shift < 0) {
      std::swap(u, v);
      std::swap(g1, g2);
      shift = -shift;
    }
    u ^= v << shift;
    g1 ^= g2 << shift;
  }
  return FieldElement(static_cast<std::uint64_t>(u == 1 ? g1 : g2), spec);
}

FieldElement g_encode(const FieldSpec& spec, std::uint64_t i) {
  if (!spec.contains(i)) {
    throw std::out_of_range("g domain ends at |F|-1");
  }
  return FieldElement(i, spec);
}

void append_element_bytes(std::vector<std::uint8_t>& out,
                          const FieldElement& e) {
  const std::size_t width = e.spec().element_bytes();
  for (std::size_t i = 0; i < width; ++i) {
    out.push_back(
        static_cast<std::uint8_t>(e.value() >> (8 * (width - 1 - i))));
  }
}

}  // namespace dske
