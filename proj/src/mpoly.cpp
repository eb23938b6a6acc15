#include "rittlab/mpoly.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "rittlab/error.hpp"
#include "rittlab/factor_q.hpp"

namespace rittlab {

MPoly::MPoly(FieldPtr field, std::vector<std::string> vars) : field_(std::move(field)), vars_(std::move(vars)) {}

MPoly MPoly::constant(FieldPtr field, std::vector<std::string> vars, const FieldElement& c) {
  Exponent e(vars.size(), 0);
  return monomial(std::move(field), std::move(vars), std::move(e), c);
}

MPoly MPoly::variable(FieldPtr field, std::vector<std::string> vars, int i) {
  Exponent e(vars.size(), 0);
  e[i] = 1;
  FieldElement one(field, Rational(1));
  return monomial(std::move(field), std::move(vars), std::move(e), one);
}

MPoly MPoly::monomial(FieldPtr field, std::vector<std::string> vars, Exponent e, const FieldElement& c) {
  MPoly p(std::move(field), std::move(vars));
  p.add_term(e, c);
  return p;
}

MPoly MPoly::from_kpoly(FieldPtr field, std::vector<std::string> vars, int var, const KPoly& q) {
  MPoly p(std::move(field), std::move(vars));
  Exponent e(p.nvars(), 0);
  for (int k = 0; k <= q.degree(); ++k) {
    e[var] = k;
    p.add_term(e, q[k]);
  }
  return p;
}

bool MPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Exponent& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
}

FieldElement MPoly::constant_value() const {
  Exponent z(nvars(), 0);
  auto it = terms_.find(z);
  return it == terms_.end() ? FieldElement(field_) : it->second;
}

int MPoly::degree(int var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

int MPoly::min_degree(int var) const {
  if (terms_.empty()) return -1;
  int d = terms_.begin()->first[var];
  for (const auto& [e, c] : terms_) d = std::min(d, e[var]);
  return d;
}

int MPoly::total_degree() const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

std::vector<int> MPoly::used_vars() const {
  std::vector<int> out;
  for (int v = 0; v < nvars(); ++v)
    if (involves(v)) out.push_back(v);
  return out;
}

void MPoly::add_term(const Exponent& e, const FieldElement& c) {
  if (c.is_zero()) return;
  if (!field_) field_ = c.field();
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (vars_.empty()) vars_ = o.vars_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  if (vars_.empty()) vars_ = o.vars_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r(a.field_ ? a.field_ : b.field_, a.vars_.empty() ? b.vars_ : a.vars_);
  Exponent e(r.nvars());
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly& MPoly::operator*=(const FieldElement& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MPoly MPoly::pow(int e) const {
  MPoly r = constant(field_, vars_, FieldElement(field_, Rational(1)));
  MPoly b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

bool MPoly::operator==(const MPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [e, c] : terms_) {
    if (e != it->first || c != it->second) return false;
    ++it;
  }
  return true;
}

MPoly MPoly::shifted(const Exponent& s) const {
  MPoly r(field_, vars_);
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] += s[i];
      if (f[i] < 0) throw Error(ErrorKind::InvalidArgument, "monomial shift leaves the polynomial ring");
    }
    r.terms_.emplace(std::move(f), c);
  }
  return r;
}

MPoly MPoly::derivative(int var) const {
  MPoly r(field_, vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    --f[var];
    r.add_term(f, c.scaled(e[var]));
  }
  return r;
}

MPoly MPoly::substitute(int var, const FieldElement& v) const {
  MPoly r(field_, vars_);
  std::vector<FieldElement> pw{FieldElement(field_, Rational(1))};
  for (const auto& [e, c] : terms_) {
    while (static_cast<int>(pw.size()) <= e[var]) pw.push_back(pw.back() * v);
    Exponent f = e;
    f[var] = 0;
    r.add_term(f, c * pw[e[var]]);
  }
  return r;
}

MPoly MPoly::inflate(int var, int t) const {
  MPoly r(field_, vars_);
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    f[var] *= t;
    r.terms_.emplace(std::move(f), c);
  }
  return r;
}

std::vector<MPoly> MPoly::coeffs_in(int var) const {
  std::vector<MPoly> out(std::max(degree(var) + 1, 0), MPoly(field_, vars_));
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    f[var] = 0;
    out[e[var]].terms_.emplace(std::move(f), c);
  }
  return out;
}

MPoly MPoly::from_coeffs(const MPoly& like, int var, const std::vector<MPoly>& c) {
  MPoly r(like.field_, like.vars_);
  for (std::size_t k = 0; k < c.size(); ++k)
    for (const auto& [e, v] : c[k].terms_) {
      Exponent f = e;
      f[var] += static_cast<int>(k);
      r.add_term(f, v);
    }
  return r;
}

KPoly MPoly::to_kpoly(int var) const {
  std::vector<FieldElement> c(std::max(degree(var) + 1, 0), FieldElement(field_));
  for (const auto& [e, v] : terms_) {
    for (int i = 0; i < nvars(); ++i)
      if (i != var && e[i] != 0) throw Error(ErrorKind::InvalidArgument, "polynomial is not univariate");
    c[e[var]] = v;
  }
  return KPoly(field_, std::move(c));
}

MPoly MPoly::monic() const {
  if (is_zero()) return *this;
  return *this * lead_coeff().inv();
}

std::string MPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool has_mono = std::any_of(e.begin(), e.end(), [](int v) { return v != 0; });
    std::string cs;
    bool neg = false;
    if (c.is_rational()) {
      Rational v = c.rational_value();
      neg = sgn(v) < 0;
      cs = Rational(abs(v)).get_str();
    } else {
      cs = "(" + c.str() + ")";
    }
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    bool printed = false;
    if (!has_mono || cs != "1") {
      os << cs;
      printed = true;
    }
    for (int i = 0; i < nvars(); ++i) {
      if (e[i] == 0) continue;
      if (printed) os << "*";
      os << vars_[i];
      if (e[i] > 1) os << "^" << e[i];
      printed = true;
    }
  }
  return os.str();
}

std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  MPoly q(a.field() ? a.field() : b.field(), a.vars().empty() ? b.vars() : a.vars());
  if (a.is_zero()) return q;
  const Exponent& lb = b.lead_exponent();
  FieldElement inv = b.lead_coeff().inv();
  MPoly r = a;
  Exponent m(lb.size());
  std::size_t guard = 0;
  while (!r.is_zero()) {
    const Exponent& lr = r.lead_exponent();
    for (std::size_t i = 0; i < lb.size(); ++i) {
      m[i] = lr[i] - lb[i];
      if (m[i] < 0) return std::nullopt;
    }
    FieldElement c = r.lead_coeff() * inv;
    q.add_term(m, c);
    MPoly t = MPoly::monomial(r.field(), r.vars(), m, c);
    r -= t * b;
    if (++guard > 1000000) throw Error(ErrorKind::CertificationFailed, "division did not terminate");
  }
  return q;
}

namespace {

MPoly one_like(const MPoly& a) { return MPoly::constant(a.field(), a.vars(), FieldElement(a.field(), Rational(1))); }

MPoly exact(const MPoly& a, const MPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error(ErrorKind::CertificationFailed, "expected exact division failed");
  return *q;
}

// Pseudo-remainder of a by b in variable v.
MPoly prem(MPoly a, const MPoly& b, int v) {
  int db = b.degree(v);
  auto bc = b.coeffs_in(v);
  const MPoly& lb = bc.back();
  while (!a.is_zero() && a.degree(v) >= db) {
    int da = a.degree(v);
    MPoly la = a.coeffs_in(v).back();
    Exponent s(a.nvars(), 0);
    s[v] = da - db;
    a = a * lb - (la * b).shifted(s);
  }
  return a;
}

MPoly gcd_rec(const MPoly& a, const MPoly& b);

MPoly content_rec(const MPoly& a, int v) {
  auto cs = a.coeffs_in(v);
  MPoly g(a.field(), a.vars());
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = gcd_rec(g, c);
    if (g.is_constant()) return one_like(a);
  }
  return g;
}

MPoly gcd_rec(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return one_like(a);
  int v = -1;
  for (int i = 0; i < a.nvars() && v < 0; ++i)
    if (a.involves(i) || b.involves(i)) v = i;
  if (!a.involves(v)) return gcd_rec(a, content_rec(b, v));
  if (!b.involves(v)) return gcd_rec(content_rec(a, v), b);
  MPoly ca = content_rec(a, v), cb = content_rec(b, v);
  MPoly c = gcd_rec(ca, cb);
  MPoly r0 = exact(a, ca), r1 = exact(b, cb);
  if (r0.degree(v) < r1.degree(v)) std::swap(r0, r1);
  for (;;) {
    MPoly r = prem(r0, r1, v);
    if (r.is_zero()) break;
    if (r.degree(v) == 0) {
      r1 = one_like(a);
      break;
    }
    r0 = std::move(r1);
    r1 = exact(r, content_rec(r, v));
    r1 = r1.monic();
  }
  if (r1.involves(v)) r1 = exact(r1, content_rec(r1, v));
  return (c * r1).monic();
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero() && b.is_zero()) return a;
  return gcd_rec(a, b);
}

MPoly content_in(const MPoly& a, int var) {
  if (a.is_zero()) return a;
  return content_rec(a, var).monic();
}

namespace {

// Yun's algorithm in variable v for a primitive in v.
std::vector<std::pair<MPoly, int>> yun(const MPoly& a, int v) {
  std::vector<std::pair<MPoly, int>> out;
  if (!a.involves(v)) return out;
  MPoly d = a.derivative(v);
  MPoly g = gcd(a, d);
  MPoly b = exact(a, g);
  MPoly c = exact(d, g);
  MPoly e = c - b.derivative(v);
  for (int i = 1; b.involves(v); ++i) {
    MPoly h = gcd(b, e);
    if (h.involves(v)) out.emplace_back(h.monic(), i);
    b = exact(b, h);
    c = exact(e, h);
    e = c - b.derivative(v);
  }
  return out;
}

}  // namespace

std::vector<std::pair<MPoly, int>> squarefree_decomposition(const MPoly& a, int var) {
  if (a.is_zero()) throw Error(ErrorKind::InvalidArgument, "squarefree decomposition of zero");
  std::vector<std::pair<MPoly, int>> out;
  MPoly cont = content_in(a, var);
  if (!cont.is_constant()) {
    std::vector<int> used = cont.used_vars();
    for (auto& f : squarefree_decomposition(cont, used.front())) out.push_back(std::move(f));
  }
  for (auto& f : yun(exact(a, cont), var)) out.push_back(std::move(f));
  return out;
}

MPoly MFactorization::expand(const MPoly& like) const {
  MPoly p = MPoly::constant(like.field(), like.vars(), scalar);
  for (const auto& f : factors) p *= f.poly.pow(f.mult);
  return p;
}

bool MFactorization::complete() const {
  return std::none_of(factors.begin(), factors.end(), [](const MFactor& f) { return f.maybe_reducible; });
}

namespace {

using IntMat = std::vector<std::vector<long>>;

// Unimodular U with U * v = e_0 for a primitive integer vector v.
IntMat unimodular_to_e0(std::vector<long> w) {
  int n = static_cast<int>(w.size());
  IntMat u(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) u[i][i] = 1;
  auto sub_row = [&](int j, int i, long q) {
    w[j] -= q * w[i];
    for (int k = 0; k < n; ++k) u[j][k] -= q * u[i][k];
  };
  for (;;) {
    int piv = -1;
    for (int i = 0; i < n; ++i)
      if (w[i] != 0 && (piv < 0 || std::labs(w[i]) < std::labs(w[piv]))) piv = i;
    bool done = true;
    for (int j = 0; j < n; ++j)
      if (j != piv && w[j] != 0) {
        sub_row(j, piv, w[j] / w[piv]);
        done = false;
      }
    if (done) {
      std::swap(w[0], w[piv]);
      std::swap(u[0], u[piv]);
      if (w[0] < 0) {
        w[0] = -w[0];
        for (auto& x : u[0]) x = -x;
      }
      return u;
    }
  }
}

// Largest univariate factor G(X^v) of p, returned as a polynomial in one
// variable with G(0) != 0, for a primitive direction v.
KPoly direction_content(const MPoly& p, const std::vector<long>& v) {
  IntMat u = unimodular_to_e0(v);
  int n = p.nvars();
  std::map<std::vector<long>, std::vector<std::pair<long, FieldElement>>> fibers;
  for (const auto& [e, c] : p.terms()) {
    std::vector<long> img(n, 0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) img[i] += u[i][k] * e[k];
    long y = img[0];
    img[0] = 0;
    fibers[img].emplace_back(y, c);
  }
  KPoly g;
  for (auto& [key, terms] : fibers) {
    if (terms.size() < 2) return KPoly(p.field(), {FieldElement(p.field(), Rational(1))});
  }
  for (auto& [key, terms] : fibers) {
    long lo = terms.front().first;
    long hi = lo;
    for (const auto& [y, c] : terms) {
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
    std::vector<FieldElement> coeffs(hi - lo + 1, FieldElement(p.field()));
    for (const auto& [y, c] : terms) coeffs[y - lo] = c;
    KPoly q(p.field(), std::move(coeffs));
    g = g.is_zero() ? monic(q) : gcd(g, q);
    if (g.degree() == 0) return g;
  }
  return g;
}

// G(X^v) as a polynomial without monomial content.
MPoly embed_direction(const MPoly& like, const std::vector<long>& v, const KPoly& g) {
  int n = like.nvars();
  int d = g.degree();
  Exponent base(n, 0);
  for (int i = 0; i < n; ++i)
    if (v[i] < 0) base[i] = static_cast<int>(-v[i] * d);
  MPoly r(like.field(), like.vars());
  for (int k = 0; k <= d; ++k) {
    Exponent e(n);
    for (int i = 0; i < n; ++i) e[i] = base[i] + static_cast<int>(k * v[i]);
    r.add_term(e, g[k]);
  }
  return r;
}

std::vector<std::vector<long>> candidate_directions(const MPoly& p) {
  std::set<std::vector<long>> dirs;
  std::vector<Exponent> ex;
  for (const auto& [e, c] : p.terms()) ex.push_back(e);
  for (std::size_t i = 0; i < ex.size(); ++i)
    for (std::size_t j = i + 1; j < ex.size(); ++j) {
      std::vector<long> d(ex[i].size());
      long g = 0;
      for (std::size_t k = 0; k < d.size(); ++k) {
        d[k] = ex[j][k] - ex[i][k];
        g = std::gcd(g, std::labs(d[k]));
      }
      if (g == 0) continue;
      for (auto& x : d) x /= g;
      auto first = std::find_if(d.begin(), d.end(), [](long x) { return x != 0; });
      if (*first < 0)
        for (auto& x : d) x = -x;
      dirs.insert(d);
    }
  return {dirs.begin(), dirs.end()};
}

// Bivariate polynomial over K as a power series in w with coefficients in K[y].
using Biv = std::vector<KPoly>;

KPoly series_inverse(const KPoly& a, int n) {
  FieldPtr f = a.field();
  std::vector<FieldElement> inv(n, FieldElement(f));
  FieldElement a0inv = a[0].inv();
  inv[0] = a0inv;
  for (int k = 1; k < n; ++k) {
    FieldElement s(f);
    for (int j = 1; j <= k && j <= a.degree(); ++j) s += a[j] * inv[k - j];
    inv[k] = -s * a0inv;
  }
  return KPoly(f, std::move(inv));
}

Biv biv_mul_trunc(const Biv& a, const Biv& b, int n) {
  FieldPtr f;
  Biv r(n);
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) < n; ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

// inverse of a modulo m in K[y], for coprime a and m.
KPoly inverse_mod(const KPoly& a, const KPoly& m) {
  KPoly r0 = m, r1 = rem(a, m), s0(m.field()), s1 = KPoly::constant(FieldElement(m.field(), Rational(1)));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    KPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw Error(ErrorKind::CertificationFailed, "Hensel factors are not coprime");
  return s0 * r0.lc().inv();
}

struct BivFailure {};

// Complete factorization of p in K[y, w] (variables 0 and 1), p primitive in
// y and squarefree. Throws BivFailure when no good evaluation point exists or
// recombination would be too costly.
std::vector<MPoly> factor_bivariate(const MPoly& p) {
  const int Y = 0, W = 1;
  FieldPtr f = p.field();
  int n = p.degree(Y);
  if (n <= 1 || !p.involves(W)) return {p};
  MPoly lc_m = p.coeffs_in(Y).back();
  KPoly lc = lc_m.to_kpoly(W);
  for (int k = 0; k < 41; ++k) {
    long w0 = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
    FieldElement w0e(f, Rational(w0));
    if (lc(w0e).is_zero()) continue;
    KPoly r0 = p.substitute(W, w0e).to_kpoly(Y);
    if (gcd(r0, derivative(r0)).degree() > 0) continue;
    KFactorization fk = factor_over_k(r0);
    if (fk.factors.size() <= 1) return {p};
    if (fk.factors.size() > 14) throw BivFailure{};
    // Shift w -> w + w0.
    MPoly wp = MPoly::variable(f, p.vars(), W) + MPoly::constant(f, p.vars(), w0e);
    MPoly ps(f, p.vars());
    {
      auto cs = p.coeffs_in(W);
      for (int j = static_cast<int>(cs.size()) - 1; j >= 0; --j) ps = ps * wp + cs[j];
    }
    KPoly lcs = ps.coeffs_in(Y).back().to_kpoly(W);
    int N = ps.degree(W) + lcs.degree() + 1;
    Biv P(N);
    {
      auto cw = ps.coeffs_in(W);
      for (std::size_t j = 0; j < cw.size() && static_cast<int>(j) < N; ++j) P[j] = cw[j].to_kpoly(Y);
    }
    KPoly linv = series_inverse(lcs, N);
    Biv M(N);
    for (int j = 0; j < N; ++j)
      for (int a = 0; a <= j; ++a)
        if (!P[a].is_zero() && !linv[j - a].is_zero()) M[j] += P[a] * linv[j - a];
    std::vector<KPoly> fs;
    for (const auto& [q, m] : fk.factors) fs.push_back(q);
    int kf = static_cast<int>(fs.size());
    std::vector<KPoly> s(kf);
    for (int i = 0; i < kf; ++i) {
      KPoly others = KPoly::constant(FieldElement(f, Rational(1)));
      for (int l = 0; l < kf; ++l)
        if (l != i) others *= fs[l];
      s[i] = inverse_mod(others, fs[i]);
    }
    std::vector<Biv> F(kf, Biv(N));
    for (int i = 0; i < kf; ++i) F[i][0] = fs[i];
    for (int j = 1; j < N; ++j) {
      Biv prod(j + 1);
      prod[0] = KPoly::constant(FieldElement(f, Rational(1)));
      for (int i = 0; i < kf; ++i) prod = biv_mul_trunc(prod, F[i], j + 1);
      KPoly e = M[j] - prod[j];
      if (e.is_zero()) continue;
      for (int i = 0; i < kf; ++i) F[i][j] = rem(s[i] * e, fs[i]);
    }
    // Recombination, smallest subsets first.
    std::vector<int> left(kf);
    std::iota(left.begin(), left.end(), 0);
    MPoly cur = ps;
    std::vector<MPoly> found;
    auto to_mpoly = [&](const Biv& b) {
      MPoly r(f, p.vars());
      Exponent e(2);
      for (int j = 0; j < static_cast<int>(b.size()); ++j)
        for (int i = 0; i <= b[j].degree(); ++i) {
          e[Y] = i;
          e[W] = j;
          r.add_term(e, b[j][i]);
        }
      return r;
    };
    for (int size = 1; 2 * size <= static_cast<int>(left.size());) {
      bool hit = false;
      std::vector<int> idx(size);
      std::function<bool(int, int)> pick = [&](int start, int depth) -> bool {
        if (depth == size) {
          KPoly lcc = cur.coeffs_in(Y).back().to_kpoly(W);
          Biv g(N);
          for (int j = 0; j <= lcc.degree() && j < N; ++j) g[j] = KPoly::constant(lcc[j]);
          for (int i : idx) g = biv_mul_trunc(g, F[left[i]], N);
          MPoly cand = to_mpoly(g);
          cand = exact(cand, content_rec(cand, Y));
          auto q = divide_exact(cur, cand);
          if (!q) return false;
          found.push_back(cand);
          cur = *q;
          std::vector<int> rest;
          for (int i = 0; i < static_cast<int>(left.size()); ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(left[i]);
          left = rest;
          return true;
        }
        for (int i = start; i < static_cast<int>(left.size()); ++i) {
          idx[depth] = i;
          if (pick(i + 1, depth + 1)) return true;
        }
        return false;
      };
      hit = pick(0, 0);
      if (!hit) ++size;
    }
    found.push_back(cur);
    // Undo the shift.
    MPoly wm = MPoly::variable(f, p.vars(), W) - MPoly::constant(f, p.vars(), w0e);
    std::vector<MPoly> out;
    for (const auto& g : found) {
      MPoly back(f, p.vars());
      auto cs = g.coeffs_in(W);
      for (int j = static_cast<int>(cs.size()) - 1; j >= 0; --j) back = back * wm + cs[j];
      out.push_back(back.monic());
    }
    return out;
  }
  throw BivFailure{};
}

struct Split {
  std::vector<MPoly> factors;
  bool certain = true;
};

// Splits s (squarefree, primitive in every variable it involves, no
// univariate-direction content) into irreducible factors.
Split split_irreducible(const MPoly& s) {
  std::vector<int> used = s.used_vars();
  if (used.size() <= 1) {
    Split out;
    KFactorization fk = factor_over_k(s.to_kpoly(used.front()));
    for (const auto& [q, m] : fk.factors)
      for (int i = 0; i < m; ++i) out.factors.push_back(MPoly::from_kpoly(s.field(), s.vars(), used.front(), q));
    return out;
  }
  for (int u : used) {
    if (s.degree(u) != 1) continue;
    auto cs = s.coeffs_in(u);
    if (gcd(cs[0], cs[1]).is_constant()) return {{s.monic()}, true};
  }
  // Kronecker substitution onto the main variable y and one variable w.
  int y = used.front();
  for (int u : used)
    if (s.degree(u) < s.degree(y)) y = u;
  std::vector<int> rest;
  for (int u : used)
    if (u != y) rest.push_back(u);
  std::vector<long> radix(rest.size());
  long mult = 1;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    radix[i] = mult;
    mult *= s.degree(rest[i]) + 1;
    if (mult > 4000) return {{s.monic()}, false};
  }
  std::vector<std::string> bv{"y", "w"};
  MPoly img(s.field(), bv);
  for (const auto& [e, c] : s.terms()) {
    long we = 0;
    for (std::size_t i = 0; i < rest.size(); ++i) we += e[rest[i]] * radix[i];
    img.add_term({e[y], static_cast<int>(we)}, c);
  }
  auto decode = [&](const MPoly& g) -> std::optional<MPoly> {
    MPoly r(s.field(), s.vars());
    for (const auto& [e, c] : g.terms()) {
      Exponent f(s.nvars(), 0);
      f[y] = e[0];
      long we = e[1];
      for (int i = static_cast<int>(rest.size()) - 1; i >= 0; --i) {
        f[rest[i]] = static_cast<int>(we / radix[i]);
        we %= radix[i];
        if (f[rest[i]] > s.degree(rest[i])) return std::nullopt;
      }
      r.add_term(f, c);
    }
    return r;
  };
  MPoly cont = content_rec(img, 0);
  MPoly prim = exact(img, cont);
  std::vector<MPoly> qs;
  try {
    qs = factor_bivariate(prim);
  } catch (const BivFailure&) {
    return {{s.monic()}, false};
  }
  std::vector<MPoly> cs;
  if (!cont.is_constant()) {
    KFactorization fc = factor_over_k(cont.to_kpoly(1));
    for (const auto& [q, m] : fc.factors)
      for (int i = 0; i < m; ++i) cs.push_back(MPoly::from_kpoly(s.field(), bv, 1, q));
  }
  if (qs.size() == 1 && cs.empty()) return {{s.monic()}, true};
  if (qs.size() + cs.size() > 16) return {{s.monic()}, false};
  Split out;
  MPoly cur = s;
  std::vector<MPoly> ql = qs;
  for (int size = 1; 2 * size <= static_cast<int>(ql.size());) {
    bool hit = false;
    int nq = static_cast<int>(ql.size());
    for (long mask = 1; mask < (1L << nq) && !hit; ++mask) {
      if (__builtin_popcountl(mask) != size) continue;
      MPoly g = one_like(img);
      for (int i = 0; i < nq; ++i)
        if (mask >> i & 1) g *= ql[i];
      int nc = static_cast<int>(cs.size());
      for (long cm = 0; cm < (1L << nc) && !hit; ++cm) {
        MPoly h = g;
        for (int i = 0; i < nc; ++i)
          if (cm >> i & 1) h *= cs[i];
        auto cand = decode(h);
        if (!cand) continue;
        auto q = divide_exact(cur, *cand);
        if (!q) continue;
        out.factors.push_back(cand->monic());
        cur = *q;
        std::vector<MPoly> nl;
        for (int i = 0; i < nq; ++i)
          if (!(mask >> i & 1)) nl.push_back(ql[i]);
        ql = nl;
        std::vector<MPoly> ncs;
        for (int i = 0; i < nc; ++i)
          if (!(cm >> i & 1)) ncs.push_back(cs[i]);
        cs = ncs;
        hit = true;
      }
    }
    if (!hit) ++size;
  }
  if (!cur.is_constant()) out.factors.push_back(cur.monic());
  return out;
}

void factor_rest(const MPoly& r, std::vector<MFactor>& out, int mult) {
  if (r.is_constant()) return;
  int v = r.used_vars().front();
  MPoly cont = content_in(r, v);
  if (!cont.is_constant()) factor_rest(cont, out, mult);
  MPoly prim = exact(r, cont);
  for (const auto& [sq, m] : yun(prim, v)) {
    // Any leftover content of the squarefree part lives in other variables.
    MPoly piece = sq;
    bool clean = true;
    for (int u : piece.used_vars()) {
      MPoly c = content_in(piece, u);
      if (!c.is_constant()) {
        factor_rest(c, out, mult * m);
        piece = exact(piece, c);
        clean = false;
      }
    }
    (void)clean;
    if (piece.is_constant()) continue;
    Split sp = split_irreducible(piece);
    for (auto& f : sp.factors) out.push_back({f.monic(), mult * m, !sp.certain});
  }
}

void add_factor(std::vector<MFactor>& out, const MFactor& f) {
  for (auto& g : out)
    if (g.poly == f.poly) {
      g.mult += f.mult;
      g.maybe_reducible = g.maybe_reducible || f.maybe_reducible;
      return;
    }
  out.push_back(f);
}

}  // namespace

MFactorization factor(const MPoly& a, FactorMode mode, bool strict) {
  if (a.is_zero()) throw Error(ErrorKind::InvalidArgument, "factorization of zero");
  MFactorization res{a.lead_coeff(), {}};
  if (a.is_constant()) return res;
  std::vector<int> used = a.used_vars();
  if (mode != FactorMode::MultivariateBaseline) {
    if (used.size() != 1) throw Error(ErrorKind::InvalidArgument, "univariate factorization of a multivariate polynomial");
    int v = used.front();
    KPoly p = a.to_kpoly(v);
    if (mode == FactorMode::UnivariateQ) {
      if (!p.is_rational()) throw Error(ErrorKind::InvalidArgument, "coefficients are not rational");
      QFactorization fq = factor_over_q(p.to_q());
      for (const auto& [q, m] : fq.factors)
        res.factors.push_back({MPoly::from_kpoly(a.field(), a.vars(), v, KPoly::from_q(a.field(), q)), m, false});
    } else {
      KFactorization fk = factor_over_k(p);
      for (const auto& [q, m] : fk.factors) res.factors.push_back({MPoly::from_kpoly(a.field(), a.vars(), v, q), m, false});
    }
    return res;
  }
  std::vector<MFactor> out;
  // Monomial content.
  Exponent low(a.nvars());
  for (int i = 0; i < a.nvars(); ++i) low[i] = a.min_degree(i);
  Exponent neg(a.nvars());
  for (int i = 0; i < a.nvars(); ++i) {
    neg[i] = -low[i];
    if (low[i] > 0) out.push_back({MPoly::variable(a.field(), a.vars(), i), low[i], false});
  }
  MPoly r = a.shifted(neg).monic();
  // Univariate contents along lattice directions: pure-x factors, binomials
  // X^v - c X^w and their higher-degree relatives.
  for (bool again = true; again && !r.is_constant();) {
    again = false;
    for (const auto& d : candidate_directions(r)) {
      KPoly g = direction_content(r, d);
      if (g.degree() < 1) continue;
      KFactorization fk = factor_over_k(g);
      for (const auto& [q, m] : fk.factors) {
        MPoly fq = embed_direction(r, d, q).monic();
        add_factor(out, {fq, m, false});
        r = exact(r, fq.pow(m));
      }
      again = true;
      break;
    }
  }
  std::vector<MFactor> rest;
  factor_rest(r, rest, 1);
  for (const auto& f : rest) add_factor(out, f);
  res.factors = std::move(out);
  if (strict && !res.complete()) {
    std::string detail = "could not certify irreducibility of:";
    for (const auto& f : res.factors)
      if (f.maybe_reducible) detail += " [" + f.poly.str() + "]";
    throw Error(ErrorKind::UnsupportedShape, detail);
  }
  return res;
}

bool eisenstein_certify(const MPoly& a, int y_var, int x_var, const KPoly& p) {
  if (p.degree() < 1) throw Error(ErrorKind::NotIrreduciblePrime, "prime must be non-constant");
  KFactorization fp = factor_over_k(p);
  if (fp.factors.size() != 1 || fp.factors.front().second != 1)
    throw Error(ErrorKind::NotIrreduciblePrime, p.str());
  for (int u : a.used_vars())
    if (u != y_var && u != x_var) throw Error(ErrorKind::InvalidArgument, "polynomial involves other variables");
  int k = a.degree(y_var);
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "polynomial has degree 0 in Y");
  auto cs = a.coeffs_in(y_var);
  auto divides = [&](const KPoly& q, const KPoly& by) { return rem(q, by).is_zero(); };
  for (int j = 0; j < k; ++j)
    if (!divides(cs[j].to_kpoly(x_var), p)) return false;
  if (divides(cs[k].to_kpoly(x_var), p)) return false;
  if (divides(cs[0].to_kpoly(x_var), p * p)) return false;
  return true;
}

}  // namespace rittlab
