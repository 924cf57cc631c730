#include "mgt/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "mgt/rates.hpp"

namespace mgt {

namespace {

// 12-decimal-digit rationals for 1-sqrt(0.5) and 1-0.5^(1/3).
constexpr std::int64_t kRateDen = 1'000'000'000'000LL;
constexpr Rational kRateTwo{292'893'218'813LL, kRateDen};
constexpr Rational kRateThree{206'299'474'016LL, kRateDen};

int ceil_log2_log2(std::int64_t t) {
  const double ll = std::log2(std::log2(static_cast<double>(t)));
  return static_cast<int>(std::ceil(ll - 1e-12));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Unbiased bounded draw; mt19937_64 output is specified by the standard, so
// matrices are reproducible across platforms.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t rem = std::numeric_limits<std::uint64_t>::max() % n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % n;
}

}  // namespace

std::uint64_t column_stream_seed(std::uint64_t seed, std::int64_t column) {
  return splitmix64(seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(column + 1)));
}

DesignParams compute_params(std::int64_t t, int s, const ParamOverrides& overrides) {
  if (s != 2 && s != 3) throw InvalidParamsError("defective count must be 2 or 3");
  if (t < std::max<std::int64_t>(s + 1, 4)) throw InvalidParamsError("need t >= max(s+1, 4)");

  DesignParams p;
  p.num_items = t;
  p.num_defectives = s;
  p.seed = overrides.seed;

  if (overrides.sparsity_threshold) {
    if (*overrides.sparsity_threshold < 1) throw InvalidParamsError("sparsity threshold must be positive");
    p.sparsity_threshold = *overrides.sparsity_threshold;
    p.l1_overridden = true;
  } else {
    p.sparsity_threshold = ceil_log2_log2(t);
  }

  if (overrides.column_rate) {
    const Rational r = *overrides.column_rate;
    if (r.den <= 0 || r.num <= 0 || r.num >= r.den) throw InvalidParamsError("column rate must lie in (0,1)");
    p.column_rate = r;
    p.p_overridden = true;
  } else {
    p.column_rate = (s == 2) ? kRateTwo : kRateThree;
  }

  const double log2t = std::log2(static_cast<double>(t));
  const double pv = p.column_rate.value();
  if (s == 3) {
    p.sibling_threshold = 3 * p.sparsity_threshold;
    p.rate_constant = rates::rate_constant_c3(pv);
  }
  // The structural thresholds round log2 log2 t up so the sparsity caps only
  // tighten; the test-count coefficient keeps the real-valued exponent, which
  // shrinks strictly with t (rounding it flattens the coefficient across
  // desk-scale sizes and inverts the test-count trend).
  const double d = overrides.sparsity_threshold ? static_cast<double>(*overrides.sparsity_threshold)
                                                : std::log2(log2t);
  if (overrides.num_tests) {
    p.num_tests = *overrides.num_tests;
    p.n_overridden = true;
  } else if (s == 2) {
    const double denom = rates::entropy(pv) - pv;
    if (denom <= 0.0) throw InvalidParamsError("entropy gap h(p)-p must be positive");
    p.num_tests = static_cast<int>(std::ceil((d + 4.0) / d * log2t / denom));
  } else {
    p.num_tests = static_cast<int>(std::ceil((2.0 * d + 10.0) / d * log2t * p.rate_constant));
  }
  if (p.num_tests <= 0) throw InvalidParamsError("test count must be positive");

  // k = floor(p*N) in exact integer arithmetic.
  p.column_weight = static_cast<int>(p.column_rate.num * p.num_tests / p.column_rate.den);
  if (p.column_weight <= 0 || p.column_weight >= p.num_tests)
    throw InvalidParamsError("column weight must satisfy 0 < k < N");
  return p;
}

PoolMatrix generate_matrix(const DesignParams& params) {
  const std::int64_t t = params.num_items;
  const int n = params.num_tests;
  const int k = params.column_weight;
  if (k <= 0 || k >= n) throw InvalidParamsError("column weight must satisfy 0 < k < N");

  std::vector<BitVec> cols;
  cols.reserve(static_cast<std::size_t>(t));
  std::vector<std::int32_t> idx(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < t; ++j) {
    std::mt19937_64 rng(column_stream_seed(params.seed, j));
    std::iota(idx.begin(), idx.end(), 0);
    BitVec col(static_cast<std::size_t>(n));
    for (int i = 0; i < k; ++i) {
      const auto pick = i + static_cast<std::int32_t>(bounded(rng, static_cast<std::uint64_t>(n - i)));
      std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick)]);
      col.set(static_cast<std::size_t>(idx[static_cast<std::size_t>(i)]));
    }
    cols.push_back(std::move(col));
  }
  return PoolMatrix(params, std::move(cols));
}

OutcomeVector outcome(const PoolMatrix& x, std::span<const std::int32_t> subset) {
  if (subset.empty()) throw InvalidParamsError("tested subset must be nonempty");
  BitVec acc(static_cast<std::size_t>(x.num_tests()));
  for (std::int32_t j : subset) {
    if (j < 0 || j >= x.num_items()) throw std::out_of_range("sample index out of range");
    acc |= x.column(j);
  }
  return OutcomeVector(std::move(acc));
}

}  // namespace mgt
