#include "zonelab/sturm.hpp"

#include <stdexcept>

namespace zonelab {

namespace {

using IntPoly = std::vector<mpz_class>;  // lowest degree first, no trailing zeros

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void make_primitive(IntPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p) g = ::gcd(g, c);
  if (g > 1) {
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
}

// Positive multiple of p with coprime integer coefficients.
IntPoly to_primitive_integer(const RationalPolynomial& p) {
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) l = lcm(l, mpz_class(c.get_den()));
  IntPoly out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(mpz_class(c.get_num() * (l / c.get_den())));
  make_primitive(out);
  return out;
}

IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

// lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_remainder(IntPoly r, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  const mpz_class& lb = b.back();
  for (std::size_t k = r.size(); k-- > db;) {
    const mpz_class f = r[k];
    for (auto& c : r) c *= lb;
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= f * b[j];
  }
  r.resize(std::min(r.size(), db));
  trim(r);
  return r;
}

int sign_at(const IntPoly& p, const mpq_class& x) {
  // sign of q^deg * p(num/q) with q > 0
  const mpz_class& num = x.get_num();
  const mpz_class& den = x.get_den();
  mpz_class acc = 0, qpow = 1;
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = acc * num + p[i] * qpow;
    qpow *= den;
  }
  return sgn(acc);
}

int count_variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

RationalPolynomial square_free_part(const RationalPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("square-free part of the zero polynomial");
  if (p.degree() == 0) return RationalPolynomial::constant(1);
  const RationalPolynomial g = gcd(p, p.derivative());
  return divmod(p, g).quotient.monic();
}

mpq_class cauchy_bound(const RationalPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("Cauchy bound of the zero polynomial");
  const mpq_class lead = abs(p.leading());
  mpq_class m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, mpq_class(abs(p.coeff(i)) / lead));
  return 1 + m;
}

SturmSequence::SturmSequence(const RationalPolynomial& p) {
  chain_.push_back(to_primitive_integer(square_free_part(p)));
  IntPoly d = derivative(chain_[0]);
  if (d.empty()) return;
  make_primitive(d);
  chain_.push_back(std::move(d));
  for (;;) {
    const IntPoly& a = chain_[chain_.size() - 2];
    const IntPoly& b = chain_.back();
    IntPoly r = pseudo_remainder(a, b);
    if (r.empty()) break;
    // The classical chain takes -(a mod b); pseudo-division scaled a by
    // lc(b)^(delta+1), so flip once more when that factor is negative.
    const bool scale_negative = b.back() < 0 && (a.size() - b.size() + 1) % 2 == 1;
    if (!scale_negative) {
      for (auto& c : r) c = -c;
    }
    make_primitive(r);
    chain_.push_back(std::move(r));
  }
}

int SturmSequence::variations(const mpq_class& x) const {
  std::vector<int> s;
  s.reserve(chain_.size());
  for (const auto& p : chain_) s.push_back(sign_at(p, x));
  return count_variations(s);
}

int SturmSequence::variations_at_neg_infinity() const {
  std::vector<int> s;
  for (const auto& p : chain_) s.push_back(sgn(p.back()) * ((p.size() - 1) % 2 == 0 ? 1 : -1));
  return count_variations(s);
}

int SturmSequence::variations_at_pos_infinity() const {
  std::vector<int> s;
  for (const auto& p : chain_) s.push_back(sgn(p.back()));
  return count_variations(s);
}

int SturmSequence::count(const mpq_class& lo, const mpq_class& hi) const {
  if (!(lo < hi)) throw std::invalid_argument("Sturm interval needs lo < hi");
  return variations(lo) - variations(hi);
}

int sturm_real_roots(const RationalPolynomial& p, const mpq_class& lo, const mpq_class& hi) {
  if (p.is_zero()) throw std::invalid_argument("Sturm count of the zero polynomial");
  return SturmSequence(p).count(lo, hi);
}

std::vector<RootInterval> isolate_real_roots(const RationalPolynomial& p, const mpq_class& lo, const mpq_class& hi,
                                             const mpq_class& max_width) {
  if (!(max_width > 0)) throw std::invalid_argument("isolation width must be positive");
  const SturmSequence s(p);
  std::vector<RootInterval> out;
  std::vector<RootInterval> stack{{lo, hi}};
  while (!stack.empty()) {
    RootInterval iv = stack.back();
    stack.pop_back();
    const int c = s.count(iv.lo, iv.hi);
    if (c == 0) continue;
    if (c == 1 && iv.hi - iv.lo <= max_width) {
      out.push_back(iv);
      continue;
    }
    const mpq_class mid = (iv.lo + iv.hi) / 2;
    stack.push_back({mid, iv.hi});
    stack.push_back({iv.lo, mid});
  }
  return out;
}

}  // namespace zonelab
