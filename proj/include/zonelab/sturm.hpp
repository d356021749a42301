#pragma once

#include <gmpxx.h>

#include <vector>

#include "zonelab/rational_polynomial.hpp"

namespace zonelab {

/// p / gcd(p, p'), monic.
RationalPolynomial square_free_part(const RationalPolynomial& p);

/// 1 + max |a_i| / |a_lead|; every real root has absolute value below it.
mpq_class cauchy_bound(const RationalPolynomial& p);

/// Sturm chain of the square-free part, kept as primitive integer
/// polynomials (a positive rescaling of the classical chain).
class SturmSequence {
 public:
  explicit SturmSequence(const RationalPolynomial& p);

  std::size_t length() const { return chain_.size(); }
  /// Sign variations of the chain at x (zeros dropped).
  int variations(const mpq_class& x) const;
  int variations_at_neg_infinity() const;
  int variations_at_pos_infinity() const;

  /// Distinct real roots in (lo, hi].
  int count(const mpq_class& lo, const mpq_class& hi) const;
  int count_all() const { return variations_at_neg_infinity() - variations_at_pos_infinity(); }

 private:
  std::vector<std::vector<mpz_class>> chain_;
};

/// Distinct real roots of p in (lo, hi]. Throws for p = 0 or lo >= hi.
int sturm_real_roots(const RationalPolynomial& p, const mpq_class& lo, const mpq_class& hi);

struct RootInterval {
  mpq_class lo, hi;  // exactly one distinct root in (lo, hi]
};

/// Isolating intervals of width <= max_width for the roots in (lo, hi],
/// in increasing order.
std::vector<RootInterval> isolate_real_roots(const RationalPolynomial& p, const mpq_class& lo, const mpq_class& hi,
                                             const mpq_class& max_width);

}  // namespace zonelab
