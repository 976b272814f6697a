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

#ifndef DSKE_FIELD_HPP_
#define DSKE_FIELD_HPP_

#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dske {

class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Description of a binary field GF(2^r), r <= 64. Elements are coefficient
/// bitmasks of polynomials over GF(2), reduced modulo x^r + reduction_poly
/// (the degree-r term is implicit in the mask).
class FieldSpec {
 public:
  // Throws std::invalid_argument unless the polynomial is irreducible:
  // verified by exhaustive trial division for r <= 16, accepted only from a
  // built-in list of known irreducibles for larger r.
  FieldSpec(std::string name, unsigned bit_width, std::uint64_t reduction_poly);

  const std::string& name() const { return name_; }
  unsigned bit_width() const { return r_; }
  std::uint64_t reduction_poly() const { return poly_; }

  // 2^r - 1; doubles as the largest element value and as |F| - 1.
  std::uint64_t element_mask() const { return mask_; }
  std::size_t element_bytes() const { return (r_ + 7) / 8; }
  bool contains(std::uint64_t value) const { return value <= mask_; }

  bool operator==(const FieldSpec& other) const {
    return r_ == other.r_ && poly_ == other.poly_;
  }

  static const FieldSpec& gf16();    // x^4 + x + 1
  static const FieldSpec& gf256();   // x^8 + x^4 + x^3 + x + 1
  static const FieldSpec& gf2_64();  // x^64 + x^4 + x^3 + x + 1

  // Built-in spec by name, nullptr if unknown.
  static const FieldSpec* find(std::string_view name);

 private:
  std::string name_;
  unsigned r_;
  std::uint64_t poly_;
  std::uint64_t mask_;
};

class FieldElement {
 public:
  FieldElement() : value_(0), spec_(nullptr) {}
  FieldElement(std::uint64_t value, const FieldSpec& spec);

  std::uint64_t value() const { return value_; }
  const FieldSpec& spec() const;
  bool is_zero() const { return value_ == 0; }

  FieldElement& operator+=(const FieldElement& other);
  FieldElement& operator*=(const FieldElement& other);

  FieldElement operator+(const FieldElement& other) const {
    FieldElement t(*this);
    return t += other;
  }
  // Subtraction coincides with addition in characteristic 2.
  FieldElement operator-(const FieldElement& other) const { return *this + other; }
  FieldElement operator*(const FieldElement& other) const {
    FieldElement t(*this);
    return t *= other;
  }

  bool operator==(const FieldElement& other) const;
  bool operator!=(const FieldElement& other) const { return !(*this == other); }

 private:
  void require_same_spec(const FieldElement& other) const;

  std::uint64_t value_;
  const FieldSpec* spec_;
};

// Multiplicative inverse; throws std::domain_error on the zero element.
FieldElement inv(const FieldElement& a);

// Repeated product with 0^0 defined as 1, so that evaluating sum c_j x^j at
// x = 0 yields c_0.
FieldElement pow(const FieldElement& a, std::uint64_t exponent);

// The bijection g: {0, ..., |F|-1} -> F, identity on bit patterns.
// Throws std::out_of_range for i >= |F|.
FieldElement g_encode(const FieldSpec& spec, std::uint64_t i);

// Big-endian, fixed width ceil(r/8) bytes.
void append_element_bytes(std::vector<std::uint8_t>& out, const FieldElement& e);

}  // namespace dske

#endif  // DSKE_FIELD_HPP_
