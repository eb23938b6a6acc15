#include "rittlab/exppoly.hpp"

#include <numeric>
#include <sstream>

#include "rittlab/error.hpp"

namespace rittlab {

namespace {

FieldElement one_in(const FieldPtr& f) { return FieldElement(f, Rational(1)); }

FieldPtr pick_field(const FieldPtr& a, const FieldPtr& b) {
  if (!a) return b;
  if (!b) return a;
  return common_field(FieldElement(a, Rational(1)), FieldElement(b, Rational(1)));
}

std::string scalar_text(const FieldElement& c) {
  if (c.is_rational()) return c.rational_value().get_str();
  return "(" + c.str() + ")";
}

// exp(...) with the exponent written as a multiple of x.
std::string exp_text(const FieldElement& beta) {
  if (beta.is_one()) return "exp(x)";
  if ((-beta).is_one()) return "exp(-x)";
  return "exp(" + scalar_text(beta) + "*x)";
}

}  // namespace

ExpPoly ExpPoly::build(FieldPtr field, const std::vector<std::pair<FieldElement, KPoly>>& terms) {
  ExpPoly r(field);
  for (const auto& [b, p] : terms) r.add_term(b, p);
  return r;
}

ExpPoly ExpPoly::constant(const FieldElement& c) {
  ExpPoly r(c.field());
  r.add_term(FieldElement(c.field()), KPoly::constant(c));
  return r;
}

ExpPoly ExpPoly::x(FieldPtr field) {
  ExpPoly r(field);
  r.add_term(FieldElement(field), KPoly::x(field));
  return r;
}

ExpPoly ExpPoly::exp(const FieldElement& beta, const FieldElement& c) {
  ExpPoly r(pick_field(beta.field(), c.field()));
  r.add_term(beta, KPoly::constant(c));
  return r;
}

ExpPoly ExpPoly::from_unit(FieldPtr field, const UnitE& u) {
  ExpPoly r(field);
  r.add_term(u.alpha, KPoly::constant(u.lambda));
  return r;
}

ExpPoly ExpPoly::from_poly_in_exp(const UnitE& u, const FieldElement& beta, const KPoly& p) {
  ExpPoly r(pick_field(pick_field(u.lambda.field(), beta.field()), p.field()));
  for (int k = 0; k <= p.degree(); ++k)
    if (!p[k].is_zero()) r.add_term(u.alpha + beta.scaled(k), KPoly::constant(u.lambda * p[k]));
  return r;
}

void ExpPoly::add_term(const FieldElement& beta_in, const KPoly& p) {
  if (p.is_zero()) return;
  field_ = pick_field(pick_field(field_, beta_in.field()), p.field());
  FieldElement beta = beta_in;
  if (!beta.field() && field_) beta = FieldElement(field_, beta.is_zero() ? Rational(0) : beta.rational_value());
  auto it = terms_.find(beta);
  if (it == terms_.end()) {
    terms_.emplace(beta, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) terms_.erase(it);
}

std::vector<FieldElement> ExpPoly::exponents() const {
  std::vector<FieldElement> out;
  for (const auto& [b, p] : terms_) out.push_back(b);
  return out;
}

KPoly ExpPoly::coeff(const FieldElement& beta) const {
  auto it = terms_.find(beta);
  return it == terms_.end() ? KPoly(field_) : it->second;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
  for (const auto& [b, p] : o.terms_) add_term(b, p);
  field_ = pick_field(field_, o.field_);
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& o) {
  for (const auto& [b, p] : o.terms_) add_term(b, -p);
  field_ = pick_field(field_, o.field_);
  return *this;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
  ExpPoly r(pick_field(a.field_, b.field_));
  for (const auto& [ba, pa] : a.terms_)
    for (const auto& [bb, pb] : b.terms_) r.add_term(ba + bb, pa * pb);
  return r;
}

ExpPoly& ExpPoly::operator*=(const ExpPoly& o) { return *this = *this * o; }

ExpPoly& ExpPoly::operator*=(const FieldElement& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [b, p] : terms_) p *= s;
  return *this;
}

ExpPoly ExpPoly::operator-() const {
  ExpPoly r = *this;
  for (auto& [b, p] : r.terms_) p = -p;
  return r;
}

ExpPoly ExpPoly::pow(int e) const {
  if (e < 0) throw Error(ErrorKind::InvalidArgument, "negative power of an exponential polynomial");
  ExpPoly r = constant(one_in(field_)), base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

bool ExpPoly::operator==(const ExpPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  for (; i != terms_.end(); ++i, ++j)
    if (i->first != j->first || i->second != j->second) return false;
  return true;
}

ExpPoly ExpPoly::derive() const {
  ExpPoly r(field_);
  for (const auto& [b, p] : terms_) r.add_term(b, derivative(p) + p * b);
  return r;
}

ExpPoly ExpPoly::times_unit(const UnitE& u) const {
  ExpPoly r(pick_field(field_, u.lambda.field()));
  for (const auto& [b, p] : terms_) r.add_term(b + u.alpha, p * u.lambda);
  return r;
}

ExpPoly ExpPoly::rescaled(const Rational& s) const {
  ExpPoly r(field_);
  for (const auto& [b, p] : terms_) {
    std::vector<FieldElement> c;
    Rational sk = 1;
    for (int k = 0; k <= p.degree(); ++k, sk *= s) c.push_back(p[k].scaled(sk));
    r.add_term(b.scaled(s), KPoly(field_, std::move(c)));
  }
  return r;
}

std::string ExpPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [b, p] = *it;
    for (int k = p.degree(); k >= 0; --k) {
      FieldElement c = p[k];
      if (c.is_zero()) continue;
      bool negative = c.is_rational() && sgn(c.rational_value()) < 0;
      if (negative) c = -c;
      if (first) os << (negative ? "-" : "");
      else os << (negative ? " - " : " + ");
      first = false;
      std::vector<std::string> parts;
      if (!c.is_one() || (k == 0 && b.is_zero())) parts.push_back(scalar_text(c));
      if (k == 1) parts.push_back("x");
      if (k >= 2) parts.push_back("x^" + std::to_string(k));
      if (!b.is_zero()) parts.push_back(exp_text(b));
      for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
    }
  }
  return os.str();
}

UnitE unit_inverse(const UnitE& u) { return {u.lambda.inv(), -u.alpha}; }

UnitE unit_mul(const UnitE& a, const UnitE& b) { return {a.lambda * b.lambda, a.alpha + b.alpha}; }

bool unit_is_one(const UnitE& u) { return u.lambda.is_one() && u.alpha.is_zero(); }

std::optional<UnitE> unit_quotient(const ExpPoly& f, const ExpPoly& g) {
  if (f.is_zero() || g.is_zero()) return std::nullopt;
  // Exponent order is translation invariant, so the largest keys correspond.
  const auto& [bf, pf] = *f.terms().rbegin();
  const auto& [bg, pg] = *g.terms().rbegin();
  if (pf.degree() != pg.degree()) return std::nullopt;
  UnitE u{pf.lc() / pg.lc(), bf - bg};
  if (g.times_unit(u) != f) return std::nullopt;
  return u;
}

std::string unit_str(const UnitE& u) {
  if (u.alpha.is_zero()) return scalar_text(u.lambda);
  if (u.lambda.is_one()) return exp_text(u.alpha);
  return scalar_text(u.lambda) + "*" + exp_text(u.alpha);
}

int ord1(const KPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroFunction, "ord_1 of the zero polynomial");
  FieldPtr f = p.field();
  KPoly lin(f, {FieldElement(f, Rational(-1)), one_in(f)});
  KPoly q = p;
  int k = 0;
  while (true) {
    auto [quo, r] = divmod(q, lin);
    if (!r.is_zero()) return k;
    q = quo;
    ++k;
  }
}

SimpleEForm make_simple(const UnitE& unit, const FieldElement& beta, const KPoly& p) {
  if (p.is_zero() || p[0].is_zero()) throw Error(ErrorKind::PreconditionViolated, "simple form needs P(0) != 0");
  if (beta.is_zero()) throw Error(ErrorKind::PreconditionViolated, "simple form needs beta != 0");
  return SimpleEForm{ord1(p), unit, beta, p};
}

ExpPoly SimpleEForm::numerator() const { return ExpPoly::from_poly_in_exp(unit, beta, P); }

std::string SimpleEForm::str() const {
  std::string body = numerator().str();
  if (omega == 0) return body;
  std::string xp = omega == 1 ? "x" : "x^" + std::to_string(omega);
  return "(" + body + ")/" + xp;
}

std::vector<FieldElement> ep_taylor(const ExpPoly& f, int n) {
  FieldPtr k = f.field();
  std::vector<FieldElement> a(n + 1, FieldElement(k));
  for (const auto& [b, p] : f.terms()) {
    // e[j] = b^j / j!
    std::vector<FieldElement> e(n + 1, FieldElement(k));
    e[0] = one_in(k);
    for (int j = 1; j <= n; ++j) e[j] = (e[j - 1] * b).scaled(Rational(1, j));
    for (int i = 0; i <= p.degree() && i <= n; ++i) {
      if (p[i].is_zero()) continue;
      for (int m = i; m <= n; ++m) a[m] += p[i] * e[m - i];
    }
  }
  return a;
}

namespace {

int order_bound(const ExpPoly& f) {
  int b = -1;
  for (const auto& [beta, p] : f.terms()) b += p.degree() + 1;
  return b;
}

}  // namespace

int order_at_zero(const ExpPoly& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroFunction, "vanishing order of the zero function");
  int bound = order_bound(f);
  auto a = ep_taylor(f, bound);
  for (int i = 0; i <= bound; ++i)
    if (!a[i].is_zero()) return i;
  throw Error(ErrorKind::CertificationFailed, "Taylor expansion vanished beyond the order bound");
}

std::pair<UnitE, ExpPoly> ep_normalize(const ExpPoly& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroFunction, "cannot normalize the zero function");
  int p = order_at_zero(f);
  auto a = ep_taylor(f, p + 1);
  FieldElement ap = a[p], aq = a[p + 1];
  UnitE u{ap.inv(), -(aq / ap)};
  return {u, f.times_unit(u)};
}

bool is_normalized(const ExpPoly& f) {
  if (f.is_zero()) return false;
  int p = order_at_zero(f);
  auto a = ep_taylor(f, p + 1);
  return a[p].is_one() && a[p + 1].is_zero();
}

std::optional<FieldElement> canonical_support(const std::vector<FieldElement>& diffs) {
  const FieldElement* ref = nullptr;
  for (const auto& d : diffs)
    if (!d.is_zero()) {
      ref = &d;
      break;
    }
  if (!ref) return std::nullopt;
  Integer num = 0, den = 1;
  for (const auto& d : diffs) {
    if (d.is_zero()) continue;
    auto r = rational_ratio(d, *ref);
    if (!r) return std::nullopt;
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), r->get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r->get_den_mpz_t());
  }
  Rational g(num, den);
  g.canonicalize();
  FieldElement beta = ref->scaled(g);
  for (const auto& c : beta.coords()) {
    if (sgn(c) == 0) continue;
    if (sgn(c) < 0) beta = -beta;
    break;
  }
  return beta;
}

Classification ep_classify(const ExpPoly& f) {
  Classification out;
  if (f.is_zero()) return out;
  for (const auto& [b, p] : f.terms())
    if (p.degree() > 0) {
      out.kind = EClass::General;
      return out;
    }
  if (f.size() == 1) {
    const auto& [b, p] = *f.terms().begin();
    out.kind = EClass::Unit;
    out.unit = UnitE{p[0], b};
    return out;
  }
  auto exps = f.exponents();
  std::vector<FieldElement> diffs;
  for (std::size_t i = 1; i < exps.size(); ++i) diffs.push_back(exps[i] - exps[0]);
  // Prefer the lattice of the exponents themselves when they share the line.
  std::vector<FieldElement> all = diffs;
  all.insert(all.end(), exps.begin(), exps.end());
  auto beta = canonical_support(all);
  if (!beta) beta = canonical_support(diffs);
  if (!beta) {
    out.kind = EClass::General;
    return out;
  }
  // Integer positions of each exponent along beta relative to exps[0].
  std::vector<long> pos{0};
  for (const auto& d : diffs) pos.push_back(rational_ratio(d, *beta)->get_num().get_si());
  long lo = *std::min_element(pos.begin(), pos.end());
  long hi = *std::max_element(pos.begin(), pos.end());
  FieldPtr k = f.field();
  std::vector<FieldElement> c(hi - lo + 1, FieldElement(k));
  for (std::size_t i = 0; i < exps.size(); ++i) c[pos[i] - lo] = f.terms().at(exps[i])[0];
  UnitE u{one_in(k), exps[0] + beta->scaled(lo)};
  out.kind = EClass::Simple;
  out.simple = make_simple(u, *beta, KPoly(k, std::move(c)));
  return out;
}

CBall ep_eval(const ExpPoly& f, const CBall& z, long precision) {
  mpfr_prec_t prec = std::max<long>(precision, 53) + 16;
  CBall acc(prec);
  for (const auto& [b, p] : f.terms()) {
    CBall px(prec);
    for (int i = p.degree(); i >= 0; --i) px = px * z + embed_numeric(p[i], prec);
    if (!b.is_zero()) px = px * exp(embed_numeric(b, prec) * z);
    acc = acc + px;
  }
  return acc;
}

int vanishing_order_algebraic(const ExpPoly& f, const FieldElement& x0) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroFunction, "vanishing order of the zero function");
  if (x0.is_zero()) return order_at_zero(f);
  int limit = 1;
  for (const auto& [b, p] : f.terms()) limit = std::max(limit, p.degree() + 1);
  ExpPoly g = f;
  for (int k = 0; k <= limit; ++k) {
    for (const auto& [b, p] : g.terms())
      if (!p(x0).is_zero()) return k;
    g = g.derive();
  }
  throw Error(ErrorKind::CertificationFailed, "vanishing order exceeded the coefficient degree bound");
}

}  // namespace rittlab
