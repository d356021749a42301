#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

namespace zonelab {

/// Univariate polynomial with exact rational coefficients; coeffs()[i]
/// multiplies n^i. Trailing zero coefficients are never stored, so the zero
/// polynomial has no coefficients and degree -1.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<mpq_class> coeffs);
  RationalPolynomial(std::initializer_list<mpq_class> coeffs);

  static RationalPolynomial constant(const mpq_class& c);
  /// The polynomial n.
  static RationalPolynomial identity();
  /// (n - r).
  static RationalPolynomial linear_root(const mpq_class& r);
  /// n (n-1) ... (n-k+1) / k!, i.e. binomial(n, k) as a polynomial.
  static RationalPolynomial binomial(int k);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  mpq_class coeff(int i) const;
  mpq_class leading() const;

  mpq_class evaluate(const mpq_class& x) const;
  /// p(q(n)).
  RationalPolynomial compose(const RationalPolynomial& q) const;
  /// p(n + c), by a Taylor shift over a common denominator.
  RationalPolynomial shifted(long c) const;
  RationalPolynomial derivative() const;
  RationalPolynomial monic() const;

  RationalPolynomial& operator+=(const RationalPolynomial& o);
  RationalPolynomial& operator-=(const RationalPolynomial& o);
  RationalPolynomial& operator*=(const RationalPolynomial& o);
  RationalPolynomial& operator*=(const mpq_class& s);

  friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
  friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) { return a -= b; }
  friend RationalPolynomial operator*(RationalPolynomial a, const RationalPolynomial& b) { return a *= b; }
  friend RationalPolynomial operator*(RationalPolynomial a, const mpq_class& s) { return a *= s; }
  friend RationalPolynomial operator*(const mpq_class& s, RationalPolynomial a) { return a *= s; }
  RationalPolynomial operator-() const;

  bool operator==(const RationalPolynomial& o) const;

  /// Coefficients as exact strings ("a" or "a/b"), lowest degree first.
  std::vector<std::string> coefficient_strings() const;
  /// Human-readable form in the variable n, highest degree first.
  std::string to_string() const;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

struct DivMod {
  RationalPolynomial quotient;
  RationalPolynomial remainder;
};
/// Euclidean division; throws std::domain_error for a zero divisor.
DivMod divmod(const RationalPolynomial& a, const RationalPolynomial& b);

/// Monic gcd (zero when both inputs are zero).
RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);

/// Product of (n - r) over the listed roots.
RationalPolynomial from_roots(const std::vector<mpq_class>& roots);

}  // namespace zonelab
