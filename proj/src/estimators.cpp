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

#include "dske/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"

namespace dske {

std::string BoundReport::to_json() const {
  nlohmann::json j{{"name", name},
                   {"bound", bound},
                   {"measured", measured},
                   {"method", method},
                   {"pass", pass}};
  if (method.rfind("monte-carlo", 0) == 0) {
    j["ci_low"] = ci_low;
    j["ci_high"] = ci_high;
  }
  if (!detail.empty()) j["detail"] = detail;
  return j.dump();
}

double statistical_distance(std::span<const double> p,
                            std::span<const double> q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("distributions on different supports");
  }
  double sum_p = 0, sum_q = 0, dist = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0 || q[i] < 0) {
      throw std::invalid_argument("negative probability mass");
    }
    sum_p += p[i];
    sum_q += q[i];
    dist += std::abs(p[i] - q[i]);
  }
  if (std::abs(sum_p - 1.0) > 1e-12 || std::abs(sum_q - 1.0) > 1e-12) {
    throw std::invalid_argument("distribution does not sum to 1");
  }
  return dist / 2.0;
}

namespace {

// P(X <= k) for X ~ Binomial(n, p), summed in linear space from log terms.
double binomial_cdf(std::uint64_t k, std::uint64_t n, double p,
                    const std::vector<double>& log_fact) {
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return k >= n ? 1.0 : 0.0;
  const double lp = std::log(p), lq = std::log1p(-p);
  double cdf = 0.0;
  for (std::uint64_t i = 0; i <= k; ++i) {
    const double log_term = log_fact[n] - log_fact[i] - log_fact[n - i] +
                            static_cast<double>(i) * lp +
                            static_cast<double>(n - i) * lq;
    cdf += std::exp(log_term);
  }
  return cdf;
}

}  // namespace

BinomialInterval clopper_pearson(std::uint64_t successes, std::uint64_t trials,
                                 double confidence) {
  if (trials == 0 || successes > trials) {
    throw std::invalid_argument("bad binomial sample");
  }
  const double alpha = 1.0 - confidence;
  std::vector<double> log_fact(trials + 1, 0.0);
  for (std::uint64_t i = 1; i <= trials; ++i) {
    log_fact[i] = log_fact[i - 1] + std::log(static_cast<double>(i));
  }
  const auto bisect = [&](std::uint64_t k, double target) {
    // binomial_cdf(k; n, p) is decreasing in p; find p with cdf == target.
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
      const double mid = (lo + hi) / 2.0;
      if (binomial_cdf(k, trials, mid, log_fact) > target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return (lo + hi) / 2.0;
  };
  BinomialInterval out;
  out.low = successes == 0 ? 0.0 : bisect(successes - 1, 1.0 - alpha / 2.0);
  out.high = successes == trials ? 1.0 : bisect(successes, alpha / 2.0);
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) /
             static_cast<std::uint64_t>(i);
  }
  return result;
}

double log2_binomial(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("bad binomial arguments");
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
          std::lgamma(n - k + 1.0)) /
         std::log(2.0);
}

namespace {

// |F| as a double; exact up to 2^53 and plenty for bound arithmetic at 2^64.
double field_size(const FieldSpec& spec) {
  return std::ldexp(1.0, static_cast<int>(spec.bit_width()));
}

// State-space guard expressed in bits so 2^128-sized spaces cannot overflow
// the comparison.
constexpr unsigned kCapBits = 24;
static_assert(kEnumerationCap == std::uint64_t{1} << kCapBits);

bool over_cap(unsigned bits) { return bits > kCapBits; }

}  // namespace

double forgery_bound(const FieldSpec& spec, std::uint64_t s) {
  return std::min(static_cast<double>(s) / field_size(spec), 1.0);
}

double validation_bound(const FieldSpec& spec, int m) {
  return std::min((m + 1.0) / field_size(spec), 1.0);
}

double skeleton_epsilon(const ThresholdParams& params) {
  const double combos =
      static_cast<double>(binomial(params.n, params.k));
  return std::min(combos * (params.m + 1.0) / field_size(*params.spec), 1.0);
}

double composed_epsilon(const ThresholdParams& params, std::uint64_t s) {
  const double eps_prime = forgery_bound(*params.spec, s);
  return std::min(skeleton_epsilon(params) + 2.0 * params.n * eps_prime, 1.0);
}

namespace {

// Field arithmetic re-implemented for the enumeration oracles: schoolbook
// expansion followed by long division, tabulated. Deliberately a separate
// code path from FieldElement.
class SmallField {
 public:
  explicit SmallField(const FieldSpec& spec)
      : size_(static_cast<std::uint32_t>(spec.element_mask() + 1)),
        r_(spec.bit_width()) {
    if (r_ > 8) {
      throw std::invalid_argument("enumeration oracle needs |F| <= 256");
    }
    const std::uint64_t full =
        spec.reduction_poly() | (std::uint64_t{1} << r_);
    mul_.resize(static_cast<std::size_t>(size_) * size_);
    for (std::uint32_t a = 0; a < size_; ++a) {
      for (std::uint32_t b = 0; b < size_; ++b) {
        std::uint64_t prod = 0;
        for (unsigned i = 0; i < r_; ++i) {
          if (b & (1u << i)) prod ^= static_cast<std::uint64_t>(a) << i;
        }
        for (int bit = 2 * static_cast<int>(r_) - 2;
             bit >= static_cast<int>(r_); --bit) {
          if (prod & (std::uint64_t{1} << bit)) {
            prod ^= full << (bit - r_);
          }
        }
        mul_[static_cast<std::size_t>(a) * size_ + b] =
            static_cast<std::uint8_t>(prod);
      }
    }
  }

  std::uint32_t size() const { return size_; }
  std::uint8_t mul(std::uint32_t a, std::uint32_t b) const {
    return mul_[static_cast<std::size_t>(a) * size_ + b];
  }

  // sum_{j=1..s} c^j v_j
  std::uint8_t poly_eval(std::uint32_t c,
                         std::span<const std::uint8_t> v) const {
    std::uint8_t acc = 0;
    std::uint32_t power = c;
    for (std::uint8_t vj : v) {
      acc ^= mul(power, vj);
      power = mul(power, c);
    }
    return acc;
  }

  // d + ce + sum_{j=1..m} c^{j+1} y_j
  std::uint8_t h_secret(std::uint32_t c, std::uint32_t d, std::uint32_t e,
                        std::span<const std::uint8_t> y) const {
    std::uint8_t acc = static_cast<std::uint8_t>(d) ^ mul(c, e);
    std::uint32_t power = mul(c, c);
    for (std::uint8_t yj : y) {
      acc ^= mul(power, yj);
      power = mul(power, c);
    }
    return acc;
  }

 private:
  std::uint32_t size_;
  unsigned r_;
  std::vector<std::uint8_t> mul_;
};

bool next_odometer(std::vector<std::uint8_t>& digits, std::uint32_t base) {
  for (auto& d : digits) {
    if (++d < base) return true;
    d = 0;
  }
  return false;
}

}  // namespace

BoundReport forgery_bound_exhaustive(const FieldSpec& spec, std::uint64_t s) {
  if (s == 0) throw std::invalid_argument("message length s must be >= 1");
  const unsigned r = spec.bit_width();
  // |F|^s forged messages, each checked against the |F| consistent keys.
  if (over_cap(2 * r) || over_cap(r * static_cast<unsigned>(s + 1))) {
    throw std::invalid_argument("enumeration cap exceeded");
  }
  const SmallField f(spec);
  const std::uint32_t F = f.size();

  // Observed message with a valid tag t. The keys consistent with (v, t)
  // are exactly {(c, d = t - Pv(c)) : c in F}, one per c, uniformly likely.
  // A forgery (v*, t*) is accepted by the key with parameter c iff
  // Pv(c) - P*(c) = t - t*, so its acceptance probability is
  // #{c : D(c) = t xor t*} / |F| with D = Pv xor P*. Maximizing over t*
  // sweeps every value of D; the result is the same for every observed t.
  std::vector<std::uint8_t> v(s);
  for (std::size_t j = 0; j < s; ++j) {
    v[j] = static_cast<std::uint8_t>((j + 1) % F);
  }
  std::vector<std::uint8_t> pv(F);
  for (std::uint32_t c = 0; c < F; ++c) pv[c] = f.poly_eval(c, v);

  std::uint32_t max_count = 0;
  std::vector<std::uint8_t> vstar(s, 0);
  std::vector<std::uint32_t> count_by_d(F);
  do {
    if (vstar == v) continue;
    std::fill(count_by_d.begin(), count_by_d.end(), 0);
    for (std::uint32_t c = 0; c < F; ++c) {
      const std::uint8_t diff =
          static_cast<std::uint8_t>(pv[c] ^ f.poly_eval(c, vstar));
      ++count_by_d[diff];
    }
    max_count =
        std::max(max_count, *std::max_element(count_by_d.begin(),
                                              count_by_d.end()));
  } while (next_odometer(vstar, F));

  BoundReport report;
  report.name = "forgery(s=" + std::to_string(s) + "," + spec.name() + ")";
  report.method = "exhaustive";
  report.bound = forgery_bound(spec, s);
  report.measured = static_cast<double>(max_count) / F;
  report.pass = report.measured == report.bound;  // equality, not just <=
  report.detail = "max acceptance over all forgeries of a tagged message";
  return report;
}

namespace {

struct ValidationScratch {
  const SmallField& f;
  std::uint32_t F;
  std::vector<std::uint8_t> payload;            // the fixed y
  std::vector<std::uint8_t> base;               // A[c*F+e] for y
  std::vector<std::vector<std::uint8_t>> alt;   // per y', A for y + y'

  ValidationScratch(const SmallField& field, std::vector<std::uint8_t> y)
      : f(field), F(field.size()), payload(std::move(y)) {
    const std::size_t m = payload.size();
    base = table_for(payload);
    std::size_t variants = 1;
    for (std::size_t j = 0; j < m; ++j) variants *= F;
    alt.resize(variants);
    std::vector<std::uint8_t> delta(m, 0);
    do {
      std::vector<std::uint8_t> shifted(m);
      for (std::size_t j = 0; j < m; ++j) shifted[j] = payload[j] ^ delta[j];
      alt[delta_index(delta)] = table_for(shifted);
    } while (next_odometer(delta, F));
  }

  // ce + sum c^{j+1} y_j tabulated over (c, e); the d term stays outside.
  std::vector<std::uint8_t> table_for(
      const std::vector<std::uint8_t>& y) const {
    std::vector<std::uint8_t> table(static_cast<std::size_t>(F) * F);
    for (std::uint32_t c = 0; c < F; ++c) {
      for (std::uint32_t e = 0; e < F; ++e) {
        table[c * F + e] = f.h_secret(c, 0, e, y);
      }
    }
    return table;
  }

  std::size_t delta_index(std::span<const std::uint8_t> delta) const {
    std::size_t index = 0;
    for (std::size_t j = delta.size(); j-- > 0;) {
      index = index * F + delta[j];
    }
    return index;
  }

  // Exact acceptance count over the full (c,d,e) key space for one attack.
  std::uint64_t full_count(std::uint8_t tp, std::uint8_t cp, std::uint8_t dp,
                           std::uint8_t ep,
                           std::span<const std::uint8_t> yp) const {
    const auto& shifted = alt[delta_index(yp)];
    std::uint64_t count = 0;
    for (std::uint32_t c = 0; c < F; ++c) {
      for (std::uint32_t e = 0; e < F; ++e) {
        const std::uint8_t lhs_no_d =
            static_cast<std::uint8_t>(base[c * F + e] ^ tp);
        const std::uint8_t rhs_no_d =
            static_cast<std::uint8_t>(dp ^ shifted[(c ^ cp) * F + (e ^ ep)]);
        for (std::uint32_t d = 0; d < F; ++d) {
          count += static_cast<std::uint8_t>(d ^ lhs_no_d) ==
                   static_cast<std::uint8_t>(d ^ rhs_no_d);
        }
      }
    }
    return count;
  }

  // The same count with d factored out: both sides of the acceptance
  // relation carry d + ..., so the relation is d-independent and every
  // (c,e) hit contributes |F| keys. Verified against full_count in tests
  // and on a subsample below.
  std::uint64_t reduced_count(std::uint8_t w, std::uint8_t cp, std::uint8_t ep,
                              std::span<const std::uint8_t> yp) const {
    const auto& shifted = alt[delta_index(yp)];
    std::uint64_t count = 0;
    for (std::uint32_t c = 0; c < F; ++c) {
      for (std::uint32_t e = 0; e < F; ++e) {
        count += static_cast<std::uint8_t>(base[c * F + e] ^ w) ==
                 shifted[(c ^ cp) * F + (e ^ ep)];
      }
    }
    return count * F;
  }

  // Distinct roots of w = C e' + C^2 y'_1 + ... + C^{m+1} y'_m, the
  // acceptance condition of the c'=0 class.
  std::uint32_t root_count(std::uint8_t w, std::uint8_t ep,
                           std::span<const std::uint8_t> yp) const {
    std::uint32_t roots = 0;
    for (std::uint32_t cc = 0; cc < F; ++cc) {
      std::uint8_t value = f.mul(cc, ep);
      std::uint32_t power = f.mul(cc, cc);
      for (std::uint8_t yj : yp) {
        value ^= f.mul(power, yj);
        power = f.mul(power, cc);
      }
      roots += value == w;
    }
    return roots;
  }
};

}  // namespace

BoundReport secret_validation_bound_exhaustive(const FieldSpec& spec, int m) {
  if (m < 1 || m > 2) {
    throw std::invalid_argument("exhaustive validation oracle supports m in 1..2");
  }
  const unsigned r = spec.bit_width();
  if (over_cap(3 * r) || over_cap(r * static_cast<unsigned>(m + 4))) {
    throw std::invalid_argument("enumeration cap exceeded");
  }
  const SmallField f(spec);
  const std::uint32_t F = f.size();
  const std::uint64_t key_space = static_cast<std::uint64_t>(F) * F * F;

  // Fixed payload; the m=2 witness below needs y_2 != 0.
  std::vector<std::uint8_t> payload(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    payload[static_cast<std::size_t>(j)] =
        static_cast<std::uint8_t>((5 * j + 3) % F);
  }
  const ValidationScratch scratch(f, payload);

  std::uint64_t max_count = 0;
  bool root_counts_match = true;
  std::uint64_t unique_root_attack_count = 0;  // t'=c'=d'=e'=0, y'=(1,0,..)

  std::vector<std::uint8_t> delta(static_cast<std::size_t>(m), 0);
  do {
    const bool delta_zero =
        std::all_of(delta.begin(), delta.end(),
                    [](std::uint8_t d) { return d == 0; });
    if (delta_zero) continue;  // y' = 0 is excluded: not an alteration of y

    const bool unique_root_attack =
        delta[0] == 1 &&
        std::all_of(delta.begin() + 1, delta.end(),
                    [](std::uint8_t d) { return d == 0; });

    for (std::uint32_t cp = 0; cp < F; ++cp) {
      for (std::uint32_t ep = 0; ep < F; ++ep) {
        for (std::uint32_t w = 0; w < F; ++w) {
          // Acceptance of the c'=0 class is set by the distinct roots of
          // a nonconstant polynomial in C of degree at most m+1.
          const std::uint64_t predicted =
              cp == 0 ? static_cast<std::uint64_t>(scratch.root_count(
                            static_cast<std::uint8_t>(w),
                            static_cast<std::uint8_t>(ep), delta)) *
                            (key_space / F)
                      : 0;
          std::uint64_t count = 0;
          if (m == 1) {
            // The literal sweep: every (t', d') pair with its own full
            // (c,d,e) enumeration.
            for (std::uint32_t tp = 0; tp < F; ++tp) {
              const std::uint32_t dp = tp ^ w;
              count = scratch.full_count(
                  static_cast<std::uint8_t>(tp), static_cast<std::uint8_t>(cp),
                  static_cast<std::uint8_t>(dp), static_cast<std::uint8_t>(ep),
                  delta);
              max_count = std::max(max_count, count);
              if (cp == 0 && count != predicted) root_counts_match = false;
            }
          } else {
            count = scratch.reduced_count(static_cast<std::uint8_t>(w),
                                          static_cast<std::uint8_t>(cp),
                                          static_cast<std::uint8_t>(ep), delta);
            max_count = std::max(max_count, count);
            if (cp == 0 && count != predicted) root_counts_match = false;
          }
          if (cp == 0 && ep == 0 && w == 0 && unique_root_attack) {
            unique_root_attack_count = count;
          }
        }
      }
    }
  } while (next_odometer(delta, F));

  // Cross-check the d-factoring on a pseudo-random subsample of attacks.
  bool reduction_consistent = true;
  if (m == 2) {
    SplitMix64 sample_rng(0xBEEF);
    for (int i = 0; i < 64; ++i) {
      const std::uint8_t tp = static_cast<std::uint8_t>(sample_rng.below(F));
      const std::uint8_t cp = static_cast<std::uint8_t>(sample_rng.below(F));
      const std::uint8_t dp = static_cast<std::uint8_t>(sample_rng.below(F));
      const std::uint8_t ep = static_cast<std::uint8_t>(sample_rng.below(F));
      std::vector<std::uint8_t> yp(2);
      yp[0] = static_cast<std::uint8_t>(sample_rng.below(F));
      yp[1] = static_cast<std::uint8_t>(1 + sample_rng.below(F - 1));
      if (scratch.full_count(tp, cp, dp, ep, yp) !=
          scratch.reduced_count(tp ^ dp, cp, ep, yp)) {
        reduction_consistent = false;
      }
    }
  }

  // The attack with a unique root (y'_1 = 1, everything else 0) accepts on
  // exactly the C = 0 keys: probability 1/|F|.
  const bool unique_root_ok = unique_root_attack_count == key_space / F;

  BoundReport report;
  report.name = "secret-validation(m=" + std::to_string(m) + "," +
                spec.name() + ")";
  report.method = "exhaustive";
  report.bound = validation_bound(spec, m);
  report.measured = static_cast<double>(max_count) /
                    static_cast<double>(key_space);
  report.pass = report.measured <= report.bound &&
                report.measured >= 1.0 / field_size(spec) &&
                root_counts_match && unique_root_ok && reduction_consistent;
  report.detail = "max acceptance over all additive attacks; c'=0 class "
                  "cross-checked against polynomial root counts";
  return report;
}

BoundReport confidentiality_exact(const FieldSpec& spec, int n, int k,
                                  int observed) {
  const ThresholdParams params(n, k, 1, spec);
  if (observed < 0 || observed > n) {
    throw std::invalid_argument("observed subset size outside 0..n");
  }
  const unsigned r = spec.bit_width();
  if (over_cap(static_cast<unsigned>(k) * r) ||
      over_cap(static_cast<unsigned>(observed) * r) || n > 12) {
    throw std::invalid_argument("enumeration cap exceeded");
  }
  const SmallField f(spec);
  const std::uint32_t F = f.size();

  double max_distance = 0.0;
  std::vector<int> subset(static_cast<std::size_t>(observed));
  for (int i = 0; i < observed; ++i) subset[static_cast<std::size_t>(i)] = i + 1;
  const auto advance_subset = [&subset, n, observed]() {
    int pos = observed - 1;
    while (pos >= 0 && subset[static_cast<std::size_t>(pos)] ==
                           n - (observed - 1 - pos)) {
      --pos;
    }
    if (pos < 0) return false;
    ++subset[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < observed; ++j) {
      subset[static_cast<std::size_t>(j)] =
          subset[static_cast<std::size_t>(j - 1)] + 1;
    }
    return true;
  };

  do {
    // hist[shares assignment][secret]
    std::size_t assignments = 1;
    for (int i = 0; i < observed; ++i) assignments *= F;
    std::vector<std::uint32_t> hist(assignments * F, 0);

    std::vector<std::uint8_t> coeffs(static_cast<std::size_t>(k), 0);
    do {
      std::size_t key = 0;
      for (int pos = observed - 1; pos >= 0; --pos) {
        // Direct polynomial evaluation at x_i = i.
        const std::uint32_t x =
            static_cast<std::uint32_t>(subset[static_cast<std::size_t>(pos)]);
        std::uint8_t y = 0;
        std::uint32_t power = 1;
        for (int j = 0; j < k; ++j) {
          y ^= f.mul(power, coeffs[static_cast<std::size_t>(j)]);
          power = f.mul(power, x);
        }
        key = key * F + y;
      }
      ++hist[key * F + coeffs[0]];  // the secret is f(0) = c_0
    } while (next_odometer(coeffs, F));

    for (std::size_t a = 0; a < assignments; ++a) {
      std::uint64_t total = 0;
      for (std::uint32_t sv = 0; sv < F; ++sv) total += hist[a * F + sv];
      if (total == 0) continue;
      std::vector<double> conditional(F), uniform(F, 1.0 / F);
      for (std::uint32_t sv = 0; sv < F; ++sv) {
        conditional[sv] = static_cast<double>(hist[a * F + sv]) /
                          static_cast<double>(total);
      }
      max_distance =
          std::max(max_distance, statistical_distance(conditional, uniform));
    }
  } while (advance_subset());

  BoundReport report;
  report.name = "confidentiality(" + spec.name() + ",n=" + std::to_string(n) +
                ",k=" + std::to_string(k) +
                ",observe=" + std::to_string(observed) + ")";
  report.method = "exhaustive";
  report.bound = 0.0;
  report.measured = max_distance;
  report.pass = observed <= k - 1 ? max_distance == 0.0 : max_distance > 0.0;
  report.detail =
      observed <= k - 1
          ? "conditional secret distribution must be exactly uniform"
          : "k or more shares determine the secret (distance must be > 0)";
  return report;
}

BoundReport eve_view_independence_exact(const FieldSpec& spec, int n, int k,
                                        int m,
                                        const std::vector<int>& compromised) {
  const ThresholdParams params(n, k, m, spec);
  const unsigned r = spec.bit_width();
  if (over_cap(static_cast<unsigned>(k) * r) ||
      over_cap((3 + static_cast<unsigned>(m)) * r)) {
    throw std::invalid_argument("enumeration cap exceeded");
  }
  if (static_cast<int>(compromised.size()) > k - 1) {
    throw std::invalid_argument("view test requires |C| <= k-1");
  }
  const SmallField f(spec);
  const std::uint32_t F = f.size();

  // Stage 1, through the real share extension: per parallel scheme, the
  // tuple (shares at the compromised hubs, secret element) must hit every
  // combination equally often as the k defining pads sweep F^k. With the
  // schemes drawing disjoint pad elements, the joint over all 3+m schemes
  // is the product, so (Y_C, Y_0) is exactly uniform and Y_C carries no
  // information beyond what the tag layer leaks.
  std::size_t combos = F;  // secret value
  for (std::size_t i = 0; i < compromised.size(); ++i) combos *= F;
  std::vector<std::uint64_t> pair_hits(combos, 0);
  std::vector<std::uint8_t> pads(static_cast<std::size_t>(k), 0);
  std::uint64_t pad_space = 1;
  for (int i = 0; i < k; ++i) pad_space *= F;
  do {
    std::vector<ShareTuple> first_k;
    for (int i = 1; i <= k; ++i) {
      first_k.push_back(ShareTuple{
          i, std::vector<FieldElement>(
                 static_cast<std::size_t>(params.tuple_len()),
                 FieldElement(pads[static_cast<std::size_t>(i - 1)], spec))});
    }
    const auto ext = extend_shares(params, first_k);
    std::size_t key = ext.secret.payload[0].value();
    for (int hub : compromised) {
      key = key * F +
            ext.shares[static_cast<std::size_t>(hub - 1)].elements[0].value();
    }
    ++pair_hits[key];
  } while (next_odometer(pads, F));
  // F^k pad combinations spread over F^{|C|+1} cells, equally when uniform.
  const std::uint64_t cell_expected = pad_space / combos;
  bool share_layer_uniform = true;
  for (const auto h : pair_hits) {
    if (h != cell_expected) share_layer_uniform = false;
  }

  // Stage 2, the tag layer with its own hash evaluation: the histogram of
  // o = h'_u(s) over all u in F^3 must be identical (and uniform) for every
  // payload value s.
  double max_distance = 0.0;
  bool tag_layer_uniform = true;
  std::vector<std::vector<double>> tag_dists;
  std::vector<std::uint8_t> payload(static_cast<std::size_t>(m), 0);
  do {
    std::vector<std::uint64_t> hist(F, 0);
    for (std::uint32_t c = 0; c < F; ++c) {
      for (std::uint32_t d = 0; d < F; ++d) {
        for (std::uint32_t e = 0; e < F; ++e) {
          ++hist[f.h_secret(c, d, e, payload)];
        }
      }
    }
    std::vector<double> dist(F);
    for (std::uint32_t o = 0; o < F; ++o) {
      if (hist[o] != static_cast<std::uint64_t>(F) * F) {
        tag_layer_uniform = false;
      }
      dist[o] = static_cast<double>(hist[o]) /
                (static_cast<double>(F) * F * F);
    }
    tag_dists.push_back(std::move(dist));
  } while (next_odometer(payload, F));
  for (std::size_t i = 1; i < tag_dists.size(); ++i) {
    max_distance = std::max(
        max_distance, statistical_distance(tag_dists[i], tag_dists[0]));
  }

  BoundReport report;
  report.name = "eve-view-independence(" + spec.name() +
                ",|C|=" + std::to_string(compromised.size()) + ")";
  report.method = "exhaustive";
  report.bound = 0.0;
  report.measured = share_layer_uniform ? max_distance : 1.0;
  report.pass = share_layer_uniform && tag_layer_uniform &&
                max_distance == 0.0;
  report.detail = "joint (compromised shares, tag) conditional on the payload";
  return report;
}

namespace {

bool link_blocked(const AdversaryConfig& adversary, ChannelLeg leg, int hub) {
  const auto it = adversary.channel_policies.find({leg, hub});
  return it != adversary.channel_policies.end() &&
         it->second.kind == ChannelPolicyKind::block;
}

}  // namespace

BoundReport best_attack_exhaustive(const ScenarioConfig& config) {
  config.validate();
  const FieldSpec& spec = config.field_spec();
  const ThresholdParams params = config.params();
  if (!config.adversary.attack ||
      config.adversary.hub_behavior != HubBehavior::share_shift) {
    throw std::invalid_argument("exhaustive attack run needs a share-shift script");
  }
  for (const auto& [link, policy] : config.adversary.channel_policies) {
    if (policy.kind == ChannelPolicyKind::mutate) {
      throw std::invalid_argument(
          "exhaustive attack run supports faithful/block channels only");
    }
  }
  const unsigned r = spec.bit_width();
  const unsigned tuple_len = static_cast<unsigned>(params.tuple_len());
  if (over_cap(r * tuple_len)) {
    throw std::invalid_argument("enumeration cap exceeded");
  }
  const std::uint32_t F = static_cast<std::uint32_t>(spec.element_mask() + 1);

  // Pads R_1..R_{k-1} pinned to zero make Y_0 = R_k * L_k(x_0) elementwise,
  // so sweeping R_k sweeps the whole (u, S) key-material space exactly once.
  std::vector<int> base_subset(static_cast<std::size_t>(params.k));
  std::iota(base_subset.begin(), base_subset.end(), 1);
  const auto base_coeffs = lagrange_at(params, base_subset, params.x_coord(0));
  const FieldElement craft_scale = inv(base_coeffs.at(params.k));

  std::vector<std::string> hub_ids;
  for (int i = 1; i <= params.n; ++i) hub_ids.push_back("P" + std::to_string(i));

  std::uint64_t wrong = 0;
  std::uint64_t total = 1;
  for (unsigned i = 0; i < tuple_len; ++i) total *= F;

  std::vector<std::uint8_t> target(tuple_len, 0);
  do {
    SplitMix64 rng(0x5EED0000ull ^ std::accumulate(
        target.begin(), target.end(), std::uint64_t{0},
        [F](std::uint64_t acc, std::uint8_t t) { return acc * F + t; }));

    std::vector<PsrdTable> alice_tables;
    std::vector<PsrdTable> bob_tables;
    std::vector<Hub> hubs;
    std::set<RouteTuple> bob_allowlist;
    for (int i = 1; i <= params.n; ++i) {
      std::vector<FieldElement> alice_side;
      for (unsigned p = 0; p < tuple_len; ++p) {
        FieldElement pad(0, spec);
        if (i == params.k) {
          pad = FieldElement(target[p], spec) * craft_scale;
        } else if (i > params.k) {
          pad = FieldElement((static_cast<std::uint64_t>(i) * 7 + p) % F, spec);
        }
        alice_side.push_back(pad);
      }
      alice_side.push_back(FieldElement(1 % F, spec));  // tag key c
      alice_side.push_back(FieldElement(2 % F, spec));  // tag key d
      std::vector<FieldElement> bob_side;
      for (unsigned p = 0; p < tuple_len + 2; ++p) {
        bob_side.push_back(
            FieldElement((static_cast<std::uint64_t>(i) * 3 + p + 1) % F, spec));
      }
      const OwnerPair in_owner{"A", hub_ids[i - 1], TableDirection::client_to_hub};
      const OwnerPair out_owner{"B", hub_ids[i - 1], TableDirection::hub_to_client};
      alice_tables.emplace_back(in_owner, spec, alice_side);
      bob_tables.emplace_back(out_owner, spec, bob_side);
      const RouteTuple route{hub_ids[i - 1], "A", "B"};
      bob_allowlist.insert(route);
      hubs.emplace_back(params, i, hub_ids[i - 1], std::set<RouteTuple>{route},
                        PsrdTable(in_owner, spec, alice_side),
                        PsrdTable(out_owner, spec, bob_side),
                        config.adversary.compromised.count(i) != 0
                            ? HubMode::compromised
                            : HubMode::honest);
    }

    Alice alice(params, "A", hub_ids, std::move(alice_tables));
    Bob bob(params, "B", hub_ids, bob_allowlist, std::move(bob_tables));
    Eve eve(config.adversary, params, 1);

    auto initiated = alice.initiate("B", rng);
    if (!initiated) throw std::logic_error("crafted tables must not exhaust");
    const auto inject_hook = [&eve](int hub,
                                    const std::vector<FieldElement>& share,
                                    const FieldElement& o) {
      return eve.on_hub_plaintext(hub, share, o);
    };
    for (int i = 1; i <= params.n; ++i) {
      if (link_blocked(config.adversary, ChannelLeg::alice_to_hub, i)) continue;
      auto relay = hubs[static_cast<std::size_t>(i - 1)].process(
          initiated->messages[static_cast<std::size_t>(i - 1)], "A",
          inject_hook);
      if (!relay.forward) continue;
      if (link_blocked(config.adversary, ChannelLeg::hub_to_bob, i)) continue;
      bob.receive(*relay.forward, hub_ids[static_cast<std::size_t>(i - 1)]);
    }
    const auto outcome = bob.finalize_session("A", initiated->session_id);
    if (outcome.kind == OutcomeKind::success &&
        !(outcome.secret == initiated->secret.payload)) {
      ++wrong;
    }
  } while (next_odometer(target, F));

  BoundReport report;
  report.name = "skeleton-attack(" + spec.name() + ",n=" +
                std::to_string(params.n) + ",k=" + std::to_string(params.k) +
                ")";
  report.method = "exhaustive";
  report.bound = skeleton_epsilon(params);
  report.measured = static_cast<double>(wrong) / static_cast<double>(total);
  report.pass = report.measured <= report.bound;
  report.detail = "wrong-secret fraction over the full (u,S) key-material space";
  return report;
}

BoundReport best_attack_monte_carlo(const ScenarioConfig& config,
                                    double reference) {
  const auto agg = run_trials(config);
  const auto ci = clopper_pearson(agg.wrong_secret, agg.trials);
  BoundReport report;
  report.name = "skeleton-attack-mc(" + config.field + ")";
  report.method = "monte-carlo(" + std::to_string(agg.trials) + ")";
  report.bound = skeleton_epsilon(config.params());
  report.measured =
      static_cast<double>(agg.wrong_secret) / static_cast<double>(agg.trials);
  report.ci_low = ci.low;
  report.ci_high = ci.high;
  report.pass = reference >= ci.low && reference <= ci.high &&
                report.measured <= report.bound;
  report.detail = "99% Clopper-Pearson interval must cover the exact rate; "
                  "seed=" + std::to_string(config.master_seed);
  return report;
}

BoundReport protocol_epsilon_estimate(const ScenarioConfig& config) {
  if (config.mode != ProtocolMode::general) {
    throw std::invalid_argument("composition estimate runs in general mode");
  }
  const ThresholdParams params = config.params();
  const auto agg = run_trials(config);
  // The longest hub id bounds s across the 2n links.
  const std::size_t hub_id_len = 1 + std::to_string(config.n).size();
  const std::uint64_t s = tagged_element_count(*params.spec, params.m,
                                               hub_id_len, 1, 1);
  const double bound = composed_epsilon(params, s);
  const double sigma =
      std::sqrt(bound * (1.0 - bound) / static_cast<double>(agg.trials));
  const auto ci = clopper_pearson(agg.wrong_secret, agg.trials);

  BoundReport report;
  report.name = "general-protocol(" + config.field + ")";
  report.method = "monte-carlo(" + std::to_string(agg.trials) + ")";
  report.bound = bound;
  report.measured =
      static_cast<double>(agg.wrong_secret) / static_cast<double>(agg.trials);
  report.ci_low = ci.low;
  report.ci_high = ci.high;
  report.pass = report.measured <= std::min(bound + 3.0 * sigma, 1.0);
  report.detail = "bad-event rate vs eps + 2n*eps' with s=" +
                  std::to_string(s) + "; forged deliveries accepted: " +
                  std::to_string(agg.forged_accepted) + "/" +
                  std::to_string(agg.mutated_deliveries) +
                  "; seed=" + std::to_string(config.master_seed);
  return report;
}

}  // namespace dske
