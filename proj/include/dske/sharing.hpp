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

#ifndef DSKE_SHARING_HPP_
#define DSKE_SHARING_HPP_

#include <map>
#include <vector>

#include "dske/field.hpp"
#include "dske/hash.hpp"

namespace dske {

/// Parameters of the (n,k)-threshold scheme run elementwise over 3+m-element
/// tuples. The x-coordinates are fixed as x_i = g(i), so x_0 = 0 and the
/// secret is the constant coefficient.
struct ThresholdParams {
  int n;
  int k;
  int m;  // secret payload length in elements
  const FieldSpec* spec;

  ThresholdParams(int n, int k, int m, const FieldSpec& spec);

  int tuple_len() const { return 3 + m; }
  FieldElement x_coord(int i) const;
};

// One of the n shares: index in 1..n plus a (3+m)-element sequence, one
// element per parallel scheme.
struct ShareTuple {
  int index = 0;
  std::vector<FieldElement> elements;
};

// The scheme's value at x_0, split as the 3-element tag key u followed by
// the m-element payload.
struct SecretTuple {
  SecretTagKey u;
  std::vector<FieldElement> payload;

  std::vector<FieldElement> flat() const;
  static SecretTuple from_flat(std::span<const FieldElement> elements);
  bool operator==(const SecretTuple& other) const;
};

// Lagrange basis values L_i(target) for i in the k-subset J, satisfying
// L_i(x_j) = delta_ij. All L_i(x_0) are nonzero.
std::map<int, FieldElement> lagrange_at(const ThresholdParams& params,
                                        const std::vector<int>& subset,
                                        const FieldElement& target);

struct ExtendResult {
  std::vector<ShareTuple> shares;  // indices 1..n, the first k unchanged
  SecretTuple secret;
};

// Takes the k PSRD-derived shares Y_1..Y_k and evaluates the interpolating
// polynomials at x_{k+1}..x_n and x_0. Elementwise over the 3+m schemes.
ExtendResult extend_shares(const ThresholdParams& params,
                           const std::vector<ShareTuple>& first_k);

// Inverse of extend_shares on any k-subset of its output:
// y_0 = sum_i y_i L_i(x_0), elementwise.
SecretTuple reconstruct(const ThresholdParams& params,
                        const std::vector<ShareTuple>& points);

// Exact secret shift induced by additive share deltas:
// sum_i delta_i L_i(x_0), elementwise. Delta keys must lie within subset.
std::vector<FieldElement> apply_tamper(
    const ThresholdParams& params, const std::vector<int>& subset,
    const std::map<int, std::vector<FieldElement>>& deltas);

/// Immutable-after-build cache of the L_i(x_0) coefficient vectors for every
/// k-subset of {1..n}; C(n,k) entries, safe for concurrent reads.
class ReconstructionPlan {
 public:
  explicit ReconstructionPlan(const ThresholdParams& params);

  const ThresholdParams& params() const { return params_; }
  const std::vector<std::vector<int>>& subsets() const { return subsets_; }
  // Coefficients aligned with the subset at the same position.
  const std::vector<FieldElement>& coefficients(std::size_t subset_pos) const {
    return coeffs_.at(subset_pos);
  }

  SecretTuple reconstruct_subset(std::size_t subset_pos,
                                 const std::map<int, ShareTuple>& pool) const;

 private:
  ThresholdParams params_;
  std::vector<std::vector<int>> subsets_;
  std::vector<std::vector<FieldElement>> coeffs_;
};

}  // namespace dske

#endif  // DSKE_SHARING_HPP_
