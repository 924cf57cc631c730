#include "mgt/rates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace mgt::rates {

namespace {

constexpr double kNegInf = -1e300;
const double kLn2 = std::log(2.0);

// log2 C(n, r) for real n >= r >= 0; -inf when infeasible.
double lchoose2(double n, double r) {
  if (r < -1e-9 || n < -1e-9 || r > n + 1e-9) return kNegInf;
  r = std::clamp(r, 0.0, n);
  return (std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0)) / kLn2;
}

double logsumexp2(const std::vector<double>& vals) {
  double m = kNegInf;
  for (double v : vals) m = std::max(m, v);
  if (m <= kNegInf / 2) return kNegInf;
  double s = 0.0;
  for (double v : vals) s += std::exp2(v - m);
  return m + std::log2(s);
}

// log2 of the number of ordered s-tuples of k-subsets of a w-set that
// jointly cover m designated elements. Real-valued w, k, m; the tuple counts
// themselves are the positive-term expansion of the covering count, summed
// over how much of the designated part each column takes.
double log_cover_count(int s, double m, double w, double k) {
  if (m < -1e-9) return kNegInf;
  m = std::max(m, 0.0);
  if (s == 0) return m <= 1e-9 ? 0.0 : kNegInf;
  if (s == 1) return lchoose2(w - m, k - m);
  const int imax = static_cast<int>(std::min(m, k)) + 1;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(imax) + 1);
  for (int i = 0; i <= imax; ++i) {
    const double di = i;
    if (di > m + 1e-9 || di > k + 1e-9) break;
    const double pick = lchoose2(m, di) + lchoose2(w - m, k - di);
    if (pick <= kNegInf / 2) continue;
    const double rest = log_cover_count(s - 1, m - di, w, k);
    if (rest <= kNegInf / 2) continue;
    terms.push_back(pick + rest);
  }
  return logsumexp2(terms);
}

// -log2(probability)/N at a single N with real-valued weights.
double prelimit(int s, double w1, double w, double n, double p) {
  const double k = p * n;
  const double lt = log_cover_count(s, w - w1, w, k);
  if (lt <= kNegInf / 2) return kNegInf;  // zero probability
  const double lpr = lt - s * lchoose2(n, k);
  return -lpr / n;
}

// Fit f(N) = A + (a ln N + b)/N through three points and return A.
double extrapolate(const std::function<double(double)>& f) {
  const double ns[3] = {2000.0, 4000.0, 8000.0};
  double m[3][4];
  for (int i = 0; i < 3; ++i) {
    const double v = f(ns[i]);
    if (v <= kNegInf / 2 || !std::isfinite(v)) return kNegInf;
    m[i][0] = 1.0;
    m[i][1] = std::log(ns[i]) / ns[i];
    m[i][2] = 1.0 / ns[i];
    m[i][3] = v;
  }
  // Gaussian elimination on the 3x3 system.
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    std::swap(m[piv], m[col]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f2 = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f2 * m[col][c];
    }
  }
  return m[0][3] / m[0][0];
}

double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Grid seed followed by golden-section refinement of a 1-D maximum.
double refine_max(const std::function<double(double)>& f, double lo, double hi, double step, double* arg) {
  double best_x = lo, best_v = kNegInf;
  for (double x = lo; x <= hi + 1e-15; x += step) {
    const double xx = std::min(x, hi);
    const double v = f(xx);
    if (v > best_v) {
      best_v = v;
      best_x = xx;
    }
  }
  if (best_v <= kNegInf / 2) throw std::runtime_error("optimizer bracket failure: no feasible grid point");
  const double a = std::max(lo, best_x - 2.0 * step);
  const double b = std::min(hi, best_x + 2.0 * step);
  const double x = golden_max(f, a, b, 1e-8 * (hi - lo));
  const double v = f(x);
  if (arg) *arg = v >= best_v ? x : best_x;
  return std::max(v, best_v);
}

double completion_exponent_2(double p, double omega) {
  return extrapolate([&](double n) { return prelimit(2, p * n, omega * n, n, p); });
}

}  // namespace

double entropy(double x) {
  if (x < 0.0 || x > 1.0) throw std::domain_error("entropy argument outside [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double exponent(ExponentKind kind, int s, std::optional<double> omega1, double omega, double p) {
  if (s < 1 || s > 3) throw std::domain_error("exponent defined for 1 <= s <= 3");
  if (omega < 0.0 || omega > 1.0 || p <= 0.0 || p >= 1.0) throw std::domain_error("relative weight outside range");
  double w1 = 0.0;
  if (kind == ExponentKind::Completion) {
    if (!omega1) throw std::domain_error("completion exponent needs omega1");
    if (*omega1 < 0.0 || *omega1 > omega + 1e-12) throw std::domain_error("omega1 must lie in [0, omega]");
    w1 = *omega1;
  }
  return extrapolate([&](double n) { return prelimit(s, w1 * n, omega * n, n, p); });
}

RateReport optimize_constants(double p2, double p3) {
  if (p2 <= 0.0 || p2 >= 0.5 || p3 <= 0.0 || p3 >= 1.0 / 3.0)
    throw std::domain_error("relative weights outside usable range");
  RateReport rep;

  // Worst completion rate over the reachable outcome weights [p, 3p].
  double omega_min = 0.0;
  const double inv = refine_max(
      [&](double om) {
        const double a2 = completion_exponent_2(p3, om);
        return a2 > 1e-12 ? 1.0 / a2 : kNegInf;
      },
      p3 + 1e-6, 3.0 * p3, 1e-3, &omega_min);
  rep.c3 = inv;

  // s=2 matching-rate expression: omega*h(p/omega) + p*h((omega-p)/p) - 2h(p).
  const double hp2 = entropy(p2);
  auto f2 = [&](double om) {
    if (om < p2 || om > std::min(2.0 * p2, 1.0)) return kNegInf;
    return om * entropy(p2 / om) + p2 * entropy((om - p2) / p2) - 2.0 * hp2;
  };
  rep.value_s2 = refine_max(f2, p2 + 1e-12, std::min(2.0 * p2, 1.0) - 1e-12, 1e-3, &rep.omega_star_s2);

  // Dense-branch coefficient: maximize nu + 2*max(r2, r1+r2) over the
  // (omega1, omega) simplex with r2 >= 0, everything divided by log2(t) and
  // N/log2(t) pinned at its limiting value nu = 2*c3.
  const double nu = 2.0 * rep.c3;
  const double hp3 = entropy(p3);
  auto r1 = [&](double om1, double om) {
    return nu * (om * entropy(om1 / om) + om1 * entropy(p3 / om1) + p3 * entropy((om1 - p3) / p3) - 2.0 * hp3) + 2.0;
  };
  auto r2 = [&](double om1, double om) {
    const double x = (om - p3) / om1;
    if (x < 0.0 || x > 1.0) return kNegInf;  // zero completion probability
    return 1.0 + nu * (om1 * entropy(x) - hp3);
  };
  auto objective = [&](double om1, double om) {
    if (om1 < p3 || om1 > std::min(2.0 * p3, om) || om > std::min(3.0 * p3, 1.0)) return kNegInf;
    const double b = r2(om1, om);
    if (b <= kNegInf / 2 || b < 0.0) return kNegInf;
    const double a = r1(om1, om);
    return nu + 2.0 * std::max(b, a + b);
  };
  double best = kNegInf, b_om1 = 0.0, b_om = 0.0;
  const double step = 1e-3;
  for (double om1 = p3; om1 <= 2.0 * p3 + 1e-15; om1 += step) {
    for (double om = om1; om <= 3.0 * p3 + 1e-15; om += step) {
      const double v = objective(om1, om);
      if (v > best) {
        best = v;
        b_om1 = om1;
        b_om = om;
      }
    }
  }
  if (best <= kNegInf / 2) throw std::runtime_error("optimizer bracket failure: dense-branch grid empty");
  for (int round = 0; round < 4; ++round) {
    const double w1 = golden_max([&](double x) { return objective(x, b_om); }, std::max(p3, b_om1 - 2.0 * step),
                                 std::min(2.0 * p3, b_om1 + 2.0 * step), 1e-9);
    if (objective(w1, b_om) >= best) b_om1 = w1;
    const double w = golden_max([&](double x) { return objective(b_om1, x); }, std::max(b_om1, b_om - 2.0 * step),
                                std::min(3.0 * p3, b_om + 2.0 * step), 1e-9);
    if (objective(b_om1, w) >= best) b_om = w;
    best = std::max(best, objective(b_om1, b_om));
  }
  rep.e1_bound = best;
  return rep;
}

double rate_constant_c3(double p3) {
  static std::mutex mu;
  static std::map<long long, double> cache;
  const long long key = static_cast<long long>(std::llround(p3 * 1e12));
  {
    std::scoped_lock lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  // Positivity sweep before trusting the maximum of the reciprocal.
  double worst = 1e300;
  for (double om = p3 + 1e-6; om <= 3.0 * p3; om += 1e-3) worst = std::min(worst, completion_exponent_2(p3, om));
  if (worst <= 0.0) throw std::runtime_error("completion exponent not positive on [p, 3p]");
  double arg = 0.0;
  const double inv = refine_max(
      [&](double om) {
        const double a2 = completion_exponent_2(p3, om);
        return a2 > 1e-12 ? 1.0 / a2 : kNegInf;
      },
      p3 + 1e-6, 3.0 * p3, 1e-3, &arg);
  std::scoped_lock lock(mu);
  cache[key] = inv;
  return inv;
}

}  // namespace mgt::rates
