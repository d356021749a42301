#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zonelab/random.hpp"
#include "zonelab/rational_polynomial.hpp"
#include "zonelab/sturm.hpp"

namespace zonelab {

/// Face counts of the cell decomposition of S^{d-1} cut by n central great
/// spheres in general position, as polynomials in n. Indices run from -1
/// to d with f_{-1} = f_d = 1.
struct FaceVector {
  int d = 0;
  std::map<int, RationalPolynomial> entries;

  const RationalPolynomial& f(int i) const { return entries.at(i); }
};

/// d = 3 from the great-circle counts, d >= 4 by the dimension recursion.
FaceVector face_polynomials(int d);
/// One step of the recursion: d -> d + 1.
FaceVector next_dimension(const FaceVector& fv);

/// The alternating sum of face counts with the facet count replaced by
/// (2/d) f_{d-2}, made monic. Has degree d - 1.
RationalPolynomial euler_poincare_polynomial(int d);
RationalPolynomial euler_poincare_polynomial(const FaceVector& fv);

/// Closed-form factorizations for d = 4, 5, 6.
RationalPolynomial expected_factorization(int d);

struct FactorizationCheck {
  int d = 0;
  bool matches = false;
  std::string expected;
  std::string computed;
};
std::vector<FactorizationCheck> verify_paper_factorizations();

/// The cubic cofactor n^3 - n^2 - 2n - 8 of p(5, n): its real roots, each
/// with an isolating interval of width <= 2^-30.
struct QuinticCofactorReport {
  int real_roots = 0;
  std::vector<RootInterval> intervals;
  bool single_root_below_5 = false;
};
QuinticCofactorReport analyze_quintic_cofactor();

struct LargestRootRow {
  int d = 0;
  bool root_at_d = false;      // p(d, d) == 0 exactly
  int roots_above_d = 0;       // distinct real roots in (d, cauchy_bound]
  mpq_class cauchy_bound;
  bool pass = false;
};
LargestRootRow largest_root_row(int d);
LargestRootRow largest_root_row(int d, const RationalPolynomial& p);
std::vector<LargestRootRow> verify_largest_root_is_d(int d_max);

/// (n - d)(n - d + 5) prod_{i=0}^{d-4} (n - i).
RationalPolynomial even_conjecture_polynomial(int d);
/// Throws for odd d or d < 6.
bool check_even_d_conjecture(int d);

struct FaceCountS2 {
  long long v = 0, e = 0, f = 0;
  int resamples = 0;  // degenerate placements discarded
};

/// Counts vertices and edges of n random great circles on S^2 directly
/// from their intersection points; f from Euler's formula. 3 <= n <= 12.
FaceCountS2 geometric_face_count_s2(int n, RandomSource& rng);

struct CombinatoricsRow {
  int d = 0;
  RationalPolynomial p;
  LargestRootRow largest;
  std::optional<bool> even_conjecture;  // even d >= 6 only
};
std::vector<CombinatoricsRow> combinatorics_table(int d_max, bool even_conjecture);

}  // namespace zonelab
