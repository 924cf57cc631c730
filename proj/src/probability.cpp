#include "mgt/probability.hpp"

#include <cmath>
#include <stdexcept>

namespace mgt::prob {

BigInt binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  BigInt acc = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    acc *= (n - r + i);
    acc /= i;
  }
  return acc;
}

namespace {

BigInt pow_int(BigInt base, int e) {
  BigInt acc = 1;
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

// Ordered s-tuples of weight-k columns, each covered by the fixed weight-w
// target, jointly covering m designated positions. Inclusion-exclusion over
// the designated positions left uncovered.
BigInt cover_count(int s, std::int64_t m, std::int64_t w, std::int64_t k) {
  BigInt acc = 0;
  for (std::int64_t j = 0; j <= m; ++j) {
    const BigInt term = binomial(m, j) * pow_int(binomial(w - j, k), s);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

}  // namespace

BigRat union_probability(int s, std::int64_t w, std::int64_t n, std::int64_t k) {
  if (s < 1 || s > 3) throw std::domain_error("union_probability defined for 1 <= s <= 3");
  if (w < 0 || w > n) throw std::domain_error("weight outside [0, N]");
  const BigInt den = pow_int(binomial(n, k), s);
  if (den == 0) throw std::domain_error("invalid column ensemble");
  return BigRat(cover_count(s, w, w, k), den);
}

BigRat completion_probability(int s, std::int64_t w1, std::int64_t w, std::int64_t n, std::int64_t k) {
  if (s < 1 || s > 3) throw std::domain_error("completion_probability defined for 1 <= s <= 3");
  if (w1 < 0 || w1 > w || w > n) throw std::domain_error("need 0 <= w1 <= w <= N");
  const BigInt den = pow_int(binomial(n, k), s);
  if (den == 0) throw std::domain_error("invalid column ensemble");
  if (s == 1) return BigRat(binomial(w1, k - (w - w1)), den);
  return BigRat(cover_count(s, w - w1, w, k), den);
}

BigRat pair_union_q(std::int64_t w, std::int64_t n, std::int64_t k) {
  const BigInt den = binomial(n, k) * binomial(n, k);
  if (den == 0) throw std::domain_error("invalid column ensemble");
  return BigRat(binomial(w, k) * binomial(k, w - k), den);
}

double completion_count_threshold(std::int64_t n, std::int64_t t, std::int64_t w1, std::int64_t w, int l1,
                                  std::int64_t k) {
  const BigRat expectation = t * completion_probability(1, w1, w, n, k);
  if (expectation > BigRat(n)) return to_double(expectation);
  const double low = std::pow(static_cast<double>(t), -1.0 / std::sqrt(static_cast<double>(l1)));
  if (to_double(expectation) >= low) return static_cast<double>(n);
  return static_cast<double>(l1) / 10.0;
}

std::int64_t ceil_to_int(const BigRat& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  BigInt q = num / den;
  if (q * den != num && num > 0) q += 1;
  return q.convert_to<std::int64_t>();
}

double to_double(const BigRat& value) { return value.convert_to<double>(); }

}  // namespace mgt::prob
