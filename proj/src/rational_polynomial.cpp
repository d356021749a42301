#include "zonelab/rational_polynomial.hpp"

#include <stdexcept>

namespace zonelab {

RationalPolynomial::RationalPolynomial(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

RationalPolynomial::RationalPolynomial(std::initializer_list<mpq_class> coeffs)
    : RationalPolynomial(std::vector<mpq_class>(coeffs)) {}

RationalPolynomial RationalPolynomial::constant(const mpq_class& c) { return RationalPolynomial({c}); }

RationalPolynomial RationalPolynomial::identity() { return RationalPolynomial({0, 1}); }

RationalPolynomial RationalPolynomial::linear_root(const mpq_class& r) { return RationalPolynomial({-r, 1}); }

RationalPolynomial RationalPolynomial::binomial(int k) {
  if (k < 0) throw std::invalid_argument("binomial polynomial needs k >= 0");
  RationalPolynomial p = constant(1);
  for (int j = 0; j < k; ++j) p *= linear_root(j) * mpq_class(1, j + 1);
  return p;
}

void RationalPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpq_class RationalPolynomial::coeff(int i) const {
  return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : mpq_class(0);
}

mpq_class RationalPolynomial::leading() const { return c_.empty() ? mpq_class(0) : c_.back(); }

mpq_class RationalPolynomial::evaluate(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RationalPolynomial RationalPolynomial::compose(const RationalPolynomial& q) const {
  RationalPolynomial acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= q;
    acc += constant(*it);
  }
  return acc;
}

RationalPolynomial RationalPolynomial::shifted(long c) const {
  if (c_.size() < 2 || c == 0) return *this;
  mpz_class l = 1;
  for (const auto& a : c_) l = lcm(l, mpz_class(a.get_den()));
  std::vector<mpz_class> a;
  a.reserve(c_.size());
  for (const auto& x : c_) a.push_back(x.get_num() * (l / x.get_den()));
  const std::size_t n = a.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = n - 1; j + 1 > i; --j) a[j] += c * a[j + 1];
  }
  std::vector<mpq_class> out;
  out.reserve(a.size());
  for (auto& x : a) out.emplace_back(x, l);
  return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::derivative() const {
  std::vector<mpq_class> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return RationalPolynomial(std::move(d));
}

RationalPolynomial RationalPolynomial::monic() const {
  if (is_zero()) return *this;
  RationalPolynomial p = *this;
  const mpq_class inv = 1 / leading();
  for (auto& c : p.c_) c *= inv;
  return p;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(const RationalPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const RationalPolynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<mpq_class> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const mpq_class& s) {
  mpq_class f(s);
  f.canonicalize();  // gmp arithmetic assumes canonical operands
  for (auto& c : c_) c *= f;
  trim();
  return *this;
}

RationalPolynomial RationalPolynomial::operator-() const { return *this * mpq_class(-1); }

bool RationalPolynomial::operator==(const RationalPolynomial& o) const { return c_ == o.c_; }

std::vector<std::string> RationalPolynomial::coefficient_strings() const {
  std::vector<std::string> out;
  out.reserve(c_.size());
  for (const auto& c : c_) out.push_back(c.get_str());
  return out;
}

std::string RationalPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const mpq_class& c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const mpq_class a = abs(c);
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    if (a != 1 || i == 0) s += a.get_str();
    if (i > 0) {
      if (a != 1) s += "*";
      s += "n";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

DivMod divmod(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<mpq_class> r = a.coeffs();
  const int db = b.degree();
  const int dq = a.degree() - db;
  if (dq < 0) return {RationalPolynomial(), a};
  std::vector<mpq_class> q(static_cast<std::size_t>(dq + 1));
  const mpq_class inv = 1 / b.leading();
  for (int k = dq; k >= 0; --k) {
    const mpq_class f = r[static_cast<std::size_t>(k + db)] * inv;
    q[static_cast<std::size_t>(k)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {RationalPolynomial(std::move(q)), RationalPolynomial(std::move(r))};
}

RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
  while (!b.is_zero()) {
    RationalPolynomial r = divmod(a, b).remainder;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

RationalPolynomial from_roots(const std::vector<mpq_class>& roots) {
  RationalPolynomial p = RationalPolynomial::constant(1);
  for (const auto& r : roots) p *= RationalPolynomial::linear_root(r);
  return p;
}

}  // namespace zonelab
