#pragma once

#include <optional>

namespace mgt::rates {

// Binary entropy, h(0) = h(1) = 0. Throws std::domain_error outside [0,1].
double entropy(double x);

enum class ExponentKind {
  UnionWeight,  // rate of: union of s random weight-k columns equals a fixed weight-w vector
  Completion,   // rate of: union of s columns on top of a fixed weight-w1 vector equals it
};

// Asymptotic exponent -log2(probability)/N as N grows, for columns of
// relative weight p. omega (and omega1 for Completion) are relative weights
// of the fixed target vectors. Evaluated from the exact counting formulas at
// N in {2000, 4000, 8000} via log-gamma and extrapolated; accurate to ~1e-4
// away from the domain boundary.
double exponent(ExponentKind kind, int s, std::optional<double> omega1, double omega, double p);

struct RateReport {
  double c3 = 0.0;            // max over omega in [p,3p] of 1/Completion(2, p, omega)
  double omega_star_s2 = 0.0; // argmax of the s=2 matching-rate expression
  double value_s2 = 0.0;      // its maximum
  double e1_bound = 0.0;      // worst-case test-count coefficient of the dense branch
};

// Scans and refines the three optimizations above. p2/p3 are the relative
// column weights used by the 2- and 3-defective designs.
RateReport optimize_constants(double p2, double p3);

// The factor entering the s=3 test-count formula; computed once per p and
// cached. Also verifies the completion exponent stays positive on [p, 3p]
// and throws std::runtime_error if it does not.
double rate_constant_c3(double p3);

}  // namespace mgt::rates
