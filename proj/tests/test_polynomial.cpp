#include <algorithm>
#include <set>

#include "doctest.h"
#include "zonelab/random.hpp"
#include "zonelab/rational_polynomial.hpp"
#include "zonelab/sturm.hpp"

using namespace zonelab;

using P = RationalPolynomial;

TEST_CASE("construction, degree and trimming") {
  CHECK(P().is_zero());
  CHECK(P().degree() == -1);
  CHECK(P({1, 2, 0, 0}).degree() == 1);
  CHECK(P::constant(0).is_zero());
  CHECK(P::identity() == P({0, 1}));
  CHECK(P::linear_root(3) == P({-3, 1}));
  CHECK(P::binomial(2) == P({0, mpq_class(-1, 2), mpq_class(1, 2)}));
  CHECK(P::binomial(3).evaluate(10) == 120);
  CHECK(P::binomial(0) == P::constant(1));
}

TEST_CASE("arithmetic") {
  const P a{1, 1};   // n + 1
  const P b{-1, 1};  // n - 1
  CHECK(a * b == P({-1, 0, 1}));
  CHECK(a + b == P({0, 2}));
  CHECK((a - a).is_zero());
  CHECK(-a == P({-1, -1}));
  CHECK(a * mpq_class(1, 3) == P({mpq_class(1, 3), mpq_class(1, 3)}));
  CHECK(P({0, 0, 1}).compose(a) == P({1, 2, 1}));
  CHECK(P({0, 0, 1}).shifted(-1) == P({1, -2, 1}));
  CHECK(P({1, 2, 3, 4}).derivative() == P({2, 6, 12}));
  CHECK(P({2, 4}).monic() == P({mpq_class(1, 2), 1}));
  CHECK(P({-6, -1, 1}).to_string() == "n^2 - n - 6");
  CHECK(P({mpq_class(1, 2), 0, -3}).coefficient_strings() == std::vector<std::string>{"1/2", "0", "-3"});
}

TEST_CASE("shifted agrees with compose") {
  RandomSource rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<mpq_class> c;
    const int deg = 1 + trial % 9;
    for (int i = 0; i <= deg; ++i) c.emplace_back(static_cast<long>(rng.next_u64() % 41) - 20, 1 + rng.next_u64() % 7);
    const P p(c);
    for (long s : {-3L, -1L, 2L}) CHECK(p.shifted(s) == p.compose(P({s, 1})));
  }
}

TEST_CASE("division and gcd") {
  const P a = from_roots({1, 2, 3});
  const DivMod qr = divmod(a, P::linear_root(2));
  CHECK(qr.remainder.is_zero());
  CHECK(qr.quotient == from_roots({1, 3}));
  const DivMod r = divmod(P({1, 0, 1}), P({0, 1}));
  CHECK(r.remainder == P::constant(1));
  CHECK_THROWS_AS(divmod(a, P()), std::domain_error);

  CHECK(gcd(from_roots({1, 2, 2}), from_roots({2, 5})) == P::linear_root(2));
  CHECK(gcd(P({1, 0, 1}), P::linear_root(1)) == P::constant(1));
  CHECK(gcd(P(), P()).is_zero());
  CHECK(gcd(P(), P({0, 3})) == P::identity());
}

TEST_CASE("square-free part and Cauchy bound") {
  const P p = from_roots({1, 1, 2});
  CHECK(square_free_part(p) == from_roots({1, 2}));
  CHECK(cauchy_bound(P({-6, -1, 1})) == 7);
  CHECK(cauchy_bound(P({4, 0, 2})) == 3);
}

TEST_CASE("Sturm counts on small examples") {
  CHECK(sturm_real_roots(P({-6, -1, 1}), 0, 10) == 1);
  CHECK(sturm_real_roots(P({-6, -1, 1}), -10, 10) == 2);
  CHECK(sturm_real_roots(P({1, 0, 1}), -100, 100) == 0);
  CHECK(sturm_real_roots(from_roots({1, 1, 2}), 0, 3) == 2);
  // the interval is half open: a root at lo is excluded, at hi included
  CHECK(sturm_real_roots(from_roots({1, 2}), 1, 2) == 1);
  CHECK(sturm_real_roots(from_roots({1, 2}), 0, 1) == 1);
  CHECK(SturmSequence(P({-2, 0, 1})).count_all() == 2);
  CHECK_THROWS(sturm_real_roots(P(), 0, 1));
  CHECK_THROWS(sturm_real_roots(P({1, 1}), 1, 1));
}

TEST_CASE("root isolation brackets sqrt 2") {
  const auto roots = isolate_real_roots(P({-2, 0, 1}), 0, 10, mpq_class(1, 1 << 20));
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].lo * roots[0].lo < 2);
  CHECK(roots[0].hi * roots[0].hi >= 2);
  CHECK(roots[0].hi - roots[0].lo <= mpq_class(1, 1 << 20));
}

TEST_CASE("random products of known roots") {
  RandomSource rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<mpq_class> roots;
    const int k = 1 + static_cast<int>(rng.next_u64() % 7);
    for (int i = 0; i < k; ++i) {
      roots.emplace_back(static_cast<long>(rng.next_u64() % 41) - 20, 1 + rng.next_u64() % 3);
      roots.back().canonicalize();
    }
    if (rng.next_u64() % 3 == 0) roots.push_back(roots.front());  // repeated root
    P p = from_roots(roots);
    if (rng.next_u64() % 2 == 0) p *= P({1 + static_cast<long>(rng.next_u64() % 9), 0, 1});  // no real roots
    const long scale = static_cast<long>(rng.next_u64() % 9) - 4;
    p *= mpq_class(scale == 0 ? 3 : scale);

    const std::set<mpq_class> distinct(roots.begin(), roots.end());
    const mpq_class lo(static_cast<long>(rng.next_u64() % 41) - 25);
    const mpq_class hi = lo + 1 + static_cast<long>(rng.next_u64() % 30);
    const auto expected =
        std::count_if(distinct.begin(), distinct.end(), [&](const mpq_class& r) { return r > lo && r <= hi; });
    REQUIRE(sturm_real_roots(p, lo, hi) == expected);
    CHECK(SturmSequence(p).count_all() == static_cast<int>(distinct.size()));
    for (const mpq_class& r : distinct) {
      CHECK(p.evaluate(r) == 0);
      CHECK(abs(r) < cauchy_bound(p));
    }
  }
}

TEST_CASE("random integer polynomials against a sign-change scan") {
  // on the square-free part every root is simple, so the sign changes
  // across a grid cell count its roots modulo 2
  RandomSource rng(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const int deg = 1 + static_cast<int>(rng.next_u64() % 8);
    std::vector<mpq_class> c;
    for (int i = 0; i <= deg; ++i) c.emplace_back(static_cast<long>(rng.next_u64() % 21) - 10);
    if (c.back() == 0) c.back() = 1;
    const P p(c);
    const P sf = square_free_part(p);
    const mpq_class b = cauchy_bound(p);
    const int cells = 256;
    int changes = 0;
    int odd_cells_match = 1;
    const SturmSequence s(p);
    mpq_class prev_x = -b;
    int prev_sign = sgn(sf.evaluate(prev_x));
    for (int k = 1; k <= cells; ++k) {
      const mpq_class x = -b + 2 * b * k / cells;
      const int sign = sgn(sf.evaluate(x));
      const int in_cell = s.count(prev_x, x);
      const bool flipped = prev_sign != 0 && sign != 0 && prev_sign != sign;
      if (prev_sign != 0 && sign != 0) odd_cells_match &= (in_cell % 2 == 1) == flipped;
      changes += flipped;
      prev_x = x;
      prev_sign = sign;
    }
    REQUIRE(odd_cells_match == 1);
    CHECK(s.count_all() >= changes);
    CHECK(s.count(-b, b) == s.count_all());
  }
}
