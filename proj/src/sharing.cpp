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

#include "dske/sharing.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <set>

namespace dske {

ThresholdParams::ThresholdParams(int n_, int k_, int m_, const FieldSpec& s)
    : n(n_), k(k_), m(m_), spec(&s) {
  if (k < 1 || k > n) {
    throw std::invalid_argument("threshold requires 1 <= k <= n");
  }
  // n < |F| so that x_0..x_n are distinct elements.
  if (static_cast<std::uint64_t>(n) > spec->element_mask()) {
    throw std::invalid_argument("threshold requires n < |F|");
  }
  if (m < 1) throw std::invalid_argument("payload length m must be >= 1");
}

FieldElement ThresholdParams::x_coord(int i) const {
  return g_encode(*spec, static_cast<std::uint64_t>(i));
}

std::vector<FieldElement> SecretTuple::flat() const {
  std::vector<FieldElement> out;
  out.reserve(3 + payload.size());
  out.push_back(u.c);
  out.push_back(u.d);
  out.push_back(u.e);
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

SecretTuple SecretTuple::from_flat(std::span<const FieldElement> elements) {
  if (elements.size() < 4) {
    throw std::invalid_argument("secret tuple needs 3+m elements with m >= 1");
  }
  SecretTuple t{{elements[0], elements[1], elements[2]}, {}};
  t.payload.assign(elements.begin() + 3, elements.end());
  return t;
}

bool SecretTuple::operator==(const SecretTuple& other) const {
  return u.c == other.u.c && u.d == other.u.d && u.e == other.u.e &&
         payload == other.payload;
}

namespace {

void check_subset(const ThresholdParams& params, const std::vector<int>& subset) {
  if (static_cast<int>(subset.size()) != params.k) {
    throw std::invalid_argument("subset size must equal k");
  }
  std::set<int> seen;
  for (int i : subset) {
    if (i < 1 || i > params.n) {
      throw std::invalid_argument("share index outside 1..n");
    }
    if (!seen.insert(i).second) {
      throw std::invalid_argument("duplicate share index");
    }
  }
}

struct PlanKey {
  int n;
  int k;
  unsigned r;
  std::uint64_t poly;
  auto operator<=>(const PlanKey&) const = default;
};

// Raw coefficient values shared across all instances with the same (n, k)
// and field; built once, read-only afterwards. Values rather than elements
// are cached so entries never dangle on a caller-owned FieldSpec.
struct PlanValues {
  std::vector<std::vector<int>> subsets;           // lexicographic k-subsets
  std::vector<std::vector<std::uint64_t>> coeffs;  // L_i(x_0) per subset
  // Extension coefficients over the base subset {1..k}: row 0 holds
  // L_i(x_0), row j >= 1 holds L_i(x_{k+j}).
  std::vector<std::vector<std::uint64_t>> ext;
};

const PlanValues& plan_values(const ThresholdParams& params) {
  static std::mutex mutex;
  static std::map<PlanKey, std::unique_ptr<PlanValues>> cache;
  const PlanKey key{params.n, params.k, params.spec->bit_width(),
                    params.spec->reduction_poly()};
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[key];
  if (!slot) {
    auto values = std::make_unique<PlanValues>();
    std::vector<int> pick(static_cast<std::size_t>(params.k));
    for (int i = 0; i < params.k; ++i) pick[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
      const auto coeffs = lagrange_at(params, pick, params.x_coord(0));
      std::vector<std::uint64_t> row;
      row.reserve(static_cast<std::size_t>(params.k));
      for (int i : pick) row.push_back(coeffs.at(i).value());
      values->subsets.push_back(pick);
      values->coeffs.push_back(std::move(row));

      int pos = params.k - 1;
      while (pos >= 0 &&
             pick[static_cast<std::size_t>(pos)] ==
                 params.n - (params.k - 1 - pos)) {
        --pos;
      }
      if (pos < 0) break;
      ++pick[static_cast<std::size_t>(pos)];
      for (int j = pos + 1; j < params.k; ++j) {
        pick[static_cast<std::size_t>(j)] =
            pick[static_cast<std::size_t>(j - 1)] + 1;
      }
    }

    std::vector<int> base(static_cast<std::size_t>(params.k));
    for (int i = 0; i < params.k; ++i) base[static_cast<std::size_t>(i)] = i + 1;
    for (int target = 0; target <= params.n - params.k; ++target) {
      const FieldElement x =
          params.x_coord(target == 0 ? 0 : params.k + target);
      const auto coeffs = lagrange_at(params, base, x);
      std::vector<std::uint64_t> row;
      row.reserve(static_cast<std::size_t>(params.k));
      for (int i = 1; i <= params.k; ++i) row.push_back(coeffs.at(i).value());
      values->ext.push_back(std::move(row));
    }
    slot = std::move(values);
  }
  return *slot;
}

}  // namespace

std::map<int, FieldElement> lagrange_at(const ThresholdParams& params,
                                        const std::vector<int>& subset,
                                        const FieldElement& target) {
  check_subset(params, subset);
  std::map<int, FieldElement> out;
  for (int i : subset) {
    FieldElement li(1, *params.spec);
    const FieldElement xi = params.x_coord(i);
    for (int j : subset) {
      if (j == i) continue;
      const FieldElement xj = params.x_coord(j);
      li *= (target - xj) * inv(xi - xj);
    }
    out.emplace(i, li);
  }
  return out;
}

ExtendResult extend_shares(const ThresholdParams& params,
                           const std::vector<ShareTuple>& first_k) {
  if (static_cast<int>(first_k.size()) != params.k) {
    throw std::invalid_argument("extend_shares expects exactly k tuples");
  }
  for (int i = 0; i < params.k; ++i) {
    if (first_k[i].index != i + 1) {
      throw std::invalid_argument("extend_shares expects indices 1..k in order");
    }
    if (static_cast<int>(first_k[i].elements.size()) != params.tuple_len()) {
      throw std::invalid_argument("share tuple must have 3+m elements");
    }
  }

  const PlanValues& cached = plan_values(params);
  const auto combine = [&](const std::vector<std::uint64_t>& coeff_row) {
    std::vector<FieldElement> value;
    value.reserve(params.tuple_len());
    for (int p = 0; p < params.tuple_len(); ++p) {
      FieldElement acc(0, *params.spec);
      for (int i = 0; i < params.k; ++i) {
        acc += first_k[static_cast<std::size_t>(i)]
                   .elements[static_cast<std::size_t>(p)] *
               FieldElement(coeff_row[static_cast<std::size_t>(i)],
                            *params.spec);
      }
      value.push_back(acc);
    }
    return value;
  };

  ExtendResult result;
  result.shares = first_k;
  for (int target = params.k + 1; target <= params.n; ++target) {
    result.shares.push_back(ShareTuple{
        target,
        combine(cached.ext[static_cast<std::size_t>(target - params.k)])});
  }
  result.secret = SecretTuple::from_flat(combine(cached.ext[0]));
  return result;
}

SecretTuple reconstruct(const ThresholdParams& params,
                        const std::vector<ShareTuple>& points) {
  std::vector<int> subset;
  subset.reserve(points.size());
  for (const auto& p : points) subset.push_back(p.index);
  const auto coeffs = lagrange_at(params, subset, params.x_coord(0));

  std::vector<FieldElement> flat;
  flat.reserve(params.tuple_len());
  for (int p = 0; p < params.tuple_len(); ++p) {
    FieldElement acc(0, *params.spec);
    for (const auto& pt : points) {
      if (static_cast<int>(pt.elements.size()) != params.tuple_len()) {
        throw std::invalid_argument("share tuple must have 3+m elements");
      }
      acc += pt.elements[p] * coeffs.at(pt.index);
    }
    flat.push_back(acc);
  }
  return SecretTuple::from_flat(flat);
}

std::vector<FieldElement> apply_tamper(
    const ThresholdParams& params, const std::vector<int>& subset,
    const std::map<int, std::vector<FieldElement>>& deltas) {
  const auto coeffs = lagrange_at(params, subset, params.x_coord(0));
  std::vector<FieldElement> shift(params.tuple_len(),
                                  FieldElement(0, *params.spec));
  for (const auto& [index, delta] : deltas) {
    if (coeffs.find(index) == coeffs.end()) {
      throw std::invalid_argument("tamper index outside reconstruction subset");
    }
    if (static_cast<int>(delta.size()) != params.tuple_len()) {
      throw std::invalid_argument("tamper delta must have 3+m elements");
    }
    for (int p = 0; p < params.tuple_len(); ++p) {
      shift[p] += delta[p] * coeffs.at(index);
    }
  }
  return shift;
}

ReconstructionPlan::ReconstructionPlan(const ThresholdParams& params)
    : params_(params) {
  // All k-subsets of {1..n} in lexicographic order, coefficients from the
  // per-(n,k) cache.
  const PlanValues& cached = plan_values(params_);
  subsets_ = cached.subsets;
  coeffs_.reserve(cached.coeffs.size());
  for (const auto& row : cached.coeffs) {
    std::vector<FieldElement> elements;
    elements.reserve(row.size());
    for (std::uint64_t v : row) elements.emplace_back(v, *params_.spec);
    coeffs_.push_back(std::move(elements));
  }
}

SecretTuple ReconstructionPlan::reconstruct_subset(
    std::size_t subset_pos, const std::map<int, ShareTuple>& pool) const {
  const auto& subset = subsets_.at(subset_pos);
  const auto& coeffs = coeffs_.at(subset_pos);
  std::vector<FieldElement> flat(params_.tuple_len(),
                                 FieldElement(0, *params_.spec));
  for (std::size_t s = 0; s < subset.size(); ++s) {
    const auto& share = pool.at(subset[s]);
    for (int p = 0; p < params_.tuple_len(); ++p) {
      flat[p] += share.elements[p] * coeffs[s];
    }
  }
  return SecretTuple::from_flat(flat);
}

}  // namespace dske
