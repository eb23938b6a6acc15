#include "rittlab/kpoly.hpp"

#include <sstream>

#include "rittlab/error.hpp"
#include "rittlab/factor_q.hpp"

namespace rittlab {

KPoly::KPoly(FieldPtr field, std::vector<FieldElement> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (!field_) field_ = c.field();
  trim();
}

KPoly KPoly::constant(const FieldElement& c) { return KPoly(c.field(), {c}); }

KPoly KPoly::monomial(const FieldElement& c, std::size_t k) {
  std::vector<FieldElement> v(k + 1, FieldElement(c.field()));
  v[k] = c;
  return KPoly(c.field(), std::move(v));
}

KPoly KPoly::x(FieldPtr field) { return monomial(FieldElement(field, Rational(1)), 1); }

KPoly KPoly::from_q(FieldPtr field, const QPoly& p) {
  std::vector<FieldElement> v;
  for (const auto& c : p.coeffs()) v.emplace_back(field, c);
  return KPoly(field, std::move(v));
}

void KPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool KPoly::is_rational() const {
  for (const auto& c : c_)
    if (!c.is_rational()) return false;
  return true;
}

QPoly KPoly::to_q() const {
  std::vector<Rational> v;
  for (const auto& c : c_) v.push_back(c.rational_value());
  return QPoly(std::move(v));
}

FieldElement KPoly::operator()(const FieldElement& t) const {
  FieldElement acc(field_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

KPoly& KPoly::operator+=(const KPoly& o) {
  if (!field_) field_ = o.field_;
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), FieldElement(field_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

KPoly& KPoly::operator-=(const KPoly& o) {
  if (!field_) field_ = o.field_;
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), FieldElement(field_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

KPoly& KPoly::operator*=(const KPoly& o) {
  if (!field_) field_ = o.field_;
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<FieldElement> r(c_.size() + o.c_.size() - 1, FieldElement(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

KPoly& KPoly::operator*=(const FieldElement& s) {
  if (!field_) field_ = s.field();
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

KPoly KPoly::operator-() const {
  KPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

bool KPoly::operator==(const KPoly& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

std::string KPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    FieldElement c = c_[i];
    if (c.is_zero()) continue;
    const auto& co = c.coords();
    bool negative = sgn(co.back()) < 0;
    if (negative) c = -c;
    if (first) os << (negative ? "-" : "");
    else os << (negative ? " - " : " + ");
    first = false;
    if (!c.is_one() || i == 0) {
      std::size_t nz = 0;
      for (const auto& q : c.coords()) nz += sgn(q) != 0;
      if (c.is_rational()) os << c.rational_value().get_str();
      else if (nz == 1) os << c.str();
      else os << "(" << c.str() << ")";
      if (i > 0) os << "*";
    }
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::pair<KPoly, KPoly> divmod(const KPoly& a, const KPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  FieldPtr f = a.field() ? a.field() : b.field();
  std::vector<FieldElement> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {KPoly(f), a};
  std::vector<FieldElement> q(a.degree() - db + 1, FieldElement(f));
  FieldElement inv = b.lc().inv();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i].is_zero()) continue;
    FieldElement c = r[i] * inv;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b[j];
  }
  r.resize(db, FieldElement(f));
  return {KPoly(f, std::move(q)), KPoly(f, std::move(r))};
}

KPoly rem(const KPoly& a, const KPoly& b) { return divmod(a, b).second; }

KPoly monic(const KPoly& a) {
  if (a.is_zero()) return a;
  return a * a.lc().inv();
}

KPoly derivative(const KPoly& a) {
  if (a.degree() < 1) return KPoly(a.field());
  std::vector<FieldElement> d;
  for (int i = 1; i <= a.degree(); ++i) d.push_back(a[i].scaled(i));
  return KPoly(a.field(), std::move(d));
}

KPoly gcd(const KPoly& a, const KPoly& b) {
  KPoly r0 = a, r1 = b;
  while (!r1.is_zero()) {
    KPoly r = rem(r0, r1);
    r0 = std::move(r1);
    r1 = monic(r);
  }
  return monic(r0);
}

KPoly shift(const KPoly& a, const FieldElement& s) {
  KPoly r(a.field());
  KPoly lin(a.field(), {s, FieldElement(a.field(), Rational(1))});
  for (int i = a.degree(); i >= 0; --i) r = r * lin + KPoly::constant(a[i]);
  return r;
}

std::vector<std::pair<KPoly, int>> squarefree_k(const KPoly& a) {
  std::vector<std::pair<KPoly, int>> out;
  if (a.degree() < 1) return out;
  KPoly f = monic(a);
  KPoly d = derivative(f);
  KPoly g = gcd(f, d);
  KPoly b = divmod(f, g).first;
  KPoly c = divmod(d, g).first;
  KPoly e = c - derivative(b);
  for (int i = 1; b.degree() >= 1; ++i) {
    KPoly h = gcd(b, e);
    if (h.degree() >= 1) out.emplace_back(h, i);
    b = divmod(b, h).first;
    c = divmod(e, h).first;
    e = c - derivative(b);
  }
  return out;
}

Rational norm(const FieldElement& a) {
  if (a.is_rational() || !a.field()) {
    Rational v = a.rational_value();
    Rational r = 1;
    int d = a.field() ? a.field()->degree() : 1;
    for (int i = 0; i < d; ++i) r *= v;
    return r;
  }
  const FieldPtr& f = a.field();
  int d = f->degree();
  // Column j holds the coordinates of a * t^j.
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
  FieldElement col = a, t = FieldElement::generator(f);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) m[i][j] = col.coord(i);
    col *= t;
  }
  Rational det = 1;
  for (int k = 0; k < d; ++k) {
    int p = k;
    while (p < d && sgn(m[p][k]) == 0) ++p;
    if (p == d) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (int i = k + 1; i < d; ++i) {
      if (sgn(m[i][k]) == 0) continue;
      Rational fct = m[i][k] / m[k][k];
      for (int j = k; j < d; ++j) m[i][j] -= fct * m[k][j];
    }
  }
  return det;
}

QPoly norm(const KPoly& a) {
  if (a.is_zero()) return QPoly();
  int d = a.field() ? a.field()->degree() : 1;
  int n = a.degree() * d;
  std::vector<Rational> xs, ys;
  for (int j = 0; j <= n; ++j) {
    Rational x(j - n / 2);
    xs.push_back(x);
    ys.push_back(norm(a(FieldElement(a.field(), x))));
  }
  return interpolate(xs, ys);
}

namespace {

std::vector<KPoly> factor_squarefree_monic(const KPoly& g) {
  if (g.degree() <= 1) return {g};
  const FieldPtr& f = g.field();
  if (!f || f->degree() == 1 || g.is_rational()) {
    if (g.is_rational()) {
      std::vector<KPoly> qf;
      for (const auto& [p, m] : factor_over_q(g.to_q()).factors) qf.push_back(KPoly::from_q(f, p));
      if (!f || f->degree() == 1) return qf;
      // Rational factors may split further over K.
      std::vector<KPoly> out;
      for (const auto& p : qf) {
        if (p.degree() <= 1) {
          out.push_back(p);
          continue;
        }
        KPoly shifted = shift(p, FieldElement::generator(f));
        for (auto& h : factor_squarefree_monic(shifted)) out.push_back(shift(h, -FieldElement::generator(f)));
      }
      return out;
    }
  }
  FieldElement t = FieldElement::generator(f);
  for (int k = 0; k < 64; ++k) {
    long s = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
    FieldElement st = t.scaled(s);
    KPoly h = shift(g, -st);
    QPoly nh = norm(h);
    if (gcd(nh, derivative(nh)).degree() > 0) continue;
    std::vector<KPoly> out;
    for (const auto& [ni, m] : factor_over_q(nh).factors) {
      KPoly hi = gcd(h, KPoly::from_q(f, ni));
      if (hi.degree() >= 1) out.push_back(shift(hi, st));
    }
    return out;
  }
  throw Error(ErrorKind::CertificationFailed, "no squarefree norm found for " + g.str());
}

}  // namespace

KFactorization factor_over_k(const KPoly& a) {
  if (a.is_zero()) throw Error(ErrorKind::InvalidArgument, "factorization of zero");
  KFactorization out{a.lc(), {}};
  for (const auto& [g, m] : squarefree_k(a))
    for (auto& h : factor_squarefree_monic(g)) out.factors.emplace_back(monic(h), m);
  return out;
}

}  // namespace rittlab
