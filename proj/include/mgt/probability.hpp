#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace mgt::prob {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

BigInt binomial(std::int64_t n, std::int64_t r);

// Probability that the union of s independent uniform weight-k columns of
// length N equals a fixed vector of weight w. Exact; 0 when infeasible.
BigRat union_probability(int s, std::int64_t w, std::int64_t n, std::int64_t k);

// Probability that the union of s such columns with a fixed covered vector
// of weight w1 equals a fixed weight-w vector above it.
BigRat completion_probability(int s, std::int64_t w1, std::int64_t w, std::int64_t n, std::int64_t k);

// The matching-density value q from the two-defective audit:
// C(w,k)*C(k,w-k)/C(N,k)^2. Identical to union_probability(2, w, N, k).
BigRat pair_union_q(std::int64_t w, std::int64_t n, std::int64_t k);

// Piecewise cap B(N,t) on how many columns may complete a fixed (y1, y)
// pair: t*Pr above N, N in the middle band, L1/10 when the expectation drops
// below t^(-1/sqrt(L1)).
double completion_count_threshold(std::int64_t n, std::int64_t t, std::int64_t w1, std::int64_t w, int l1,
                                  std::int64_t k);

// Integer ceiling of a positive rational.
std::int64_t ceil_to_int(const BigRat& value);

double to_double(const BigRat& value);

}  // namespace mgt::prob
