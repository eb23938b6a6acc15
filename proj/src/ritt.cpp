#include "rittlab/ritt.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace rittlab {

namespace {

using IVec = std::vector<Integer>;

FieldPtr field_of(const std::vector<FieldElement>& xs) {
  for (const auto& x : xs)
    if (x.field()) return x.field();
  return FieldDesc::rationals();
}

// Row-style Hermite normal form; returns the nonzero rows.
std::vector<IVec> hermite(std::vector<IVec> m, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    for (;;) {
      std::size_t piv = m.size();
      for (std::size_t i = r; i < m.size(); ++i)
        if (sgn(m[i][c]) != 0 && (piv == m.size() || abs(m[i][c]) < abs(m[piv][c]))) piv = i;
      if (piv == m.size()) break;
      std::swap(m[r], m[piv]);
      bool clean = true;
      for (std::size_t i = r + 1; i < m.size(); ++i) {
        if (sgn(m[i][c]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
        for (std::size_t k = c; k < cols; ++k) m[i][k] -= q * m[r][k];
        if (sgn(m[i][c]) != 0) clean = false;
      }
      if (clean) break;
    }
    if (sgn(m[r][c]) == 0) continue;
    if (sgn(m[r][c]) < 0)
      for (auto& v : m[r]) v = -v;
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= q * m[r][k];
    }
    ++r;
  }
  m.resize(r);
  return m;
}

// Solves sum c_j basis_j = target over Q; nullopt if inconsistent.
std::optional<std::vector<Rational>> solve_rational(const std::vector<FieldElement>& basis, const FieldElement& target,
                                                    std::size_t d) {
  std::size_t p = basis.size();
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(p + 1));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < p; ++j) a[i][j] = basis[j].coord(i);
    a[i][p] = target.coord(i);
  }
  std::vector<std::size_t> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < p && r < d; ++c) {
    std::size_t piv = r;
    while (piv < d && sgn(a[piv][c]) == 0) ++piv;
    if (piv == d) continue;
    std::swap(a[r], a[piv]);
    for (std::size_t i = 0; i < d; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t k = c; k <= p; ++k) a[i][k] -= f * a[r][k];
    }
    pivcol.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < d; ++i)
    if (sgn(a[i][p]) != 0) return std::nullopt;
  std::vector<Rational> x(p, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[pivcol[i]] = a[i][p] / a[i][pivcol[i]];
  return x;
}

}  // namespace

std::vector<long> ExponentLattice::coords_of(const FieldElement& beta) const {
  auto it = coords.find(beta);
  if (it != coords.end()) return it->second;
  if (beta.is_zero()) return std::vector<long>(basis.size(), 0);
  std::size_t d = basis.empty() ? 1 : (basis[0].field() ? basis[0].field()->degree() : 1);
  auto x = solve_rational(basis, beta, d);
  if (!x) throw Error(ErrorKind::InvalidArgument, "exponent " + beta.str() + " is outside the lattice");
  std::vector<long> out;
  for (const auto& q : *x) {
    if (q.get_den() != 1) throw Error(ErrorKind::InvalidArgument, "exponent " + beta.str() + " is outside the lattice");
    out.push_back(q.get_num().get_si());
  }
  return out;
}

FieldElement ExponentLattice::combine(const std::vector<long>& c) const {
  FieldElement r = basis.empty() ? FieldElement() : FieldElement(basis[0].field());
  for (std::size_t j = 0; j < basis.size(); ++j) r += basis[j].scaled(Rational(c[j]));
  return r;
}

ExponentLattice ExponentLattice::refined(int t) const {
  ExponentLattice r;
  for (const auto& b : basis) r.basis.push_back(b.scaled(Rational(1, t)));
  for (const auto& [beta, c] : coords) {
    std::vector<long> s = c;
    for (auto& v : s) v *= t;
    r.coords.emplace(beta, std::move(s));
  }
  return r;
}

ExponentLattice exponent_lattice(const std::vector<FieldElement>& exponents) {
  FieldPtr f = field_of(exponents);
  std::size_t d = f->degree();
  Integer den = 1;
  for (const auto& e : exponents)
    for (const auto& c : e.coords()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<IVec> rows;
  for (const auto& e : exponents) {
    if (e.is_zero()) continue;
    IVec v(d);
    for (std::size_t i = 0; i < d; ++i) {
      Rational s = e.coord(i) * den;
      v[i] = s.get_num();
    }
    rows.push_back(std::move(v));
  }
  std::vector<IVec> h = hermite(rows, d);
  ExponentLattice lat;
  for (const auto& row : h) {
    std::vector<Rational> c;
    for (const auto& v : row) c.emplace_back(v, den);
    for (auto& q : c) q.canonicalize();
    lat.basis.emplace_back(f, std::move(c));
  }
  for (const auto& e : exponents) {
    std::vector<long> c = lat.coords_of(FieldElement(f, e.coords()));
    lat.coords.emplace(FieldElement(f, e.coords()), std::move(c));
  }
  return lat;
}

std::vector<std::string> model_variables(int rank) {
  std::vector<std::string> v{"x"};
  for (int i = 1; i <= rank; ++i) v.push_back("X" + std::to_string(i));
  return v;
}

PolynomialModel polynomial_model(const std::vector<ExpPoly>& fs, int refine) {
  std::vector<FieldElement> all;
  FieldPtr k;
  for (const auto& f : fs) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroFunction, "polynomial model of the zero function");
    if (!k) k = f.field();
    for (const auto& b : f.exponents()) all.push_back(b);
  }
  PolynomialModel m;
  m.lattice = exponent_lattice(all);
  if (refine > 1) m.lattice = m.lattice.refined(refine);
  int p = m.lattice.rank();
  std::vector<long> low(p, 0);
  bool first = true;
  for (const auto& b : all) {
    auto c = m.lattice.coords_of(b);
    for (int j = 0; j < p; ++j) low[j] = first ? c[j] : std::min(low[j], c[j]);
    first = false;
  }
  std::vector<long> neg(p);
  for (int j = 0; j < p; ++j) neg[j] = -low[j];
  m.gamma = p ? m.lattice.combine(neg) : FieldElement(k);
  auto vars = model_variables(p);
  for (const auto& f : fs) {
    MPoly poly(k, vars);
    for (const auto& [b, q] : f.terms()) {
      auto c = m.lattice.coords_of(b);
      Exponent e(p + 1, 0);
      for (int j = 0; j < p; ++j) e[j + 1] = static_cast<int>(c[j] - low[j]);
      for (int i = 0; i <= q.degree(); ++i) {
        if (q[i].is_zero()) continue;
        e[0] = i;
        poly.add_term(e, q[i]);
      }
    }
    m.polys.push_back(std::move(poly));
  }
  return m;
}

ExpPoly from_model(const MPoly& p, const ExponentLattice& lattice, const FieldElement& gamma) {
  ExpPoly r(p.field());
  for (const auto& [e, c] : p.terms()) {
    std::vector<long> v(e.begin() + 1, e.end());
    FieldElement beta = lattice.combine(v) - gamma;
    r += ExpPoly::exp(beta, FieldElement(p.field(), Rational(1))) * (ExpPoly::x(p.field()).pow(e[0]) * c);
  }
  return r;
}

std::string_view to_string(CertKind kind) {
  switch (kind) {
    case CertKind::LinearInX: return "LinearInX";
    case CertKind::EisensteinBinomial: return "EisensteinBinomial";
    case CertKind::EisensteinSimpleRoot: return "EisensteinSimpleRoot";
    case CertKind::RefinementBounded: return "RefinementBounded";
    case CertKind::PolynomialOverK: return "PolynomialOverK";
  }
  return "?";
}

namespace {

std::optional<Certificate> try_binomial(const MPoly& f) {
  if (f.size() != 2 || f.degree(0) != 1) return std::nullopt;
  const auto& [e1, c1] = *f.terms().begin();
  const auto& [e2, c2] = *f.terms().rbegin();
  // Exactly one term carries x, to the first power.
  if (e1[0] + e2[0] != 1) return std::nullopt;
  Certificate c{CertKind::EisensteinBinomial, "prime x; shape x*X^v - c*X^w: " + f.str(), 1, true};
  return c;
}

std::optional<Certificate> try_simple_root(const MPoly& f) {
  std::map<Exponent, std::vector<FieldElement>> groups;
  const FieldPtr& k = f.field();
  for (const auto& [e, c] : f.terms()) {
    Exponent key(e.begin() + 1, e.end());
    auto& v = groups[key];
    if (static_cast<int>(v.size()) <= e[0]) v.resize(e[0] + 1, FieldElement(k));
    v[e[0]] = c;
  }
  if (groups.size() != 2) return std::nullopt;
  const auto& [lo, bv] = *groups.begin();
  const auto& [hi, av] = *groups.rbegin();
  KPoly a(k, av), b(k, bv);
  if (a.degree() < 1 && b.degree() < 1) return std::nullopt;
  if (gcd(a, b).degree() > 0) return std::nullopt;
  int kk = 0;
  for (std::size_t i = 0; i < lo.size(); ++i) kk = std::gcd(kk, std::abs(hi[i] - lo[i]));
  if (kk == 0) return std::nullopt;
  std::vector<std::string> vars{"x", "Y"};
  auto build = [&](const KPoly& lead, const KPoly& tail) {
    MPoly g = MPoly::from_kpoly(k, vars, 0, tail);
    g += MPoly::from_kpoly(k, vars, 0, lead) * MPoly::variable(k, vars, 1).pow(kk);
    return g;
  };
  auto attempt = [&](const KPoly& lead, const KPoly& tail, const char* form) -> std::optional<Certificate> {
    if (tail.degree() < 1) return std::nullopt;
    for (const auto& [p, m] : factor_over_k(tail).factors) {
      if (m != 1 || rem(lead, p).is_zero()) continue;
      if (eisenstein_certify(build(lead, tail), 1, 0, p))
        return Certificate{CertKind::EisensteinSimpleRoot, "prime " + p.str() + "; form " + form, kk, true};
    }
    return std::nullopt;
  };
  if (auto c = attempt(a, b, "A(x)*Y^k + B(x)")) return c;
  return attempt(b, a, "B(x)*Y^k + A(x)");
}

}  // namespace

Certificate certify_irreducible(const MPoly& f, int bound) {
  std::vector<int> used = f.used_vars();
  if (used.size() == 1 && used[0] == 0 && f.degree(0) == 1) {
    KPoly q = f.to_kpoly(0);
    FieldElement root = -(q[0] / q[1]);
    return {CertKind::LinearInX, "root " + root.str(), 1, true};
  }
  if (auto c = try_binomial(f)) return *c;
  if (auto c = try_simple_root(f)) return *c;
  int td = f.total_degree();
  int T = bound > 0 ? bound : std::max(2, td * td);
  Certificate cert{CertKind::RefinementBounded, "X_i -> X_i^t irreducible for t <= " + std::to_string(T), T, true};
  for (int t = 1; t <= T; ++t) {
    MPoly g = f;
    for (int i = 1; i < f.nvars(); ++i) g = g.inflate(i, t);
    MFactorization fac = factor(g, FactorMode::MultivariateBaseline);
    int count = 0;
    std::vector<MPoly> parts;
    for (const auto& pf : fac.factors) {
      count += pf.mult;
      for (int j = 0; j < pf.mult; ++j) parts.push_back(pf.poly);
    }
    if (count > 1)
      throw FactorSplitError(t, parts, "candidate " + f.str() + " splits at refinement " + std::to_string(t));
    if (!fac.complete()) cert.complete = false;
  }
  return cert;
}

ExpPoly RittFactorization::expand() const {
  FieldPtr k = unit.lambda.field();
  ExpPoly r = ExpPoly::from_unit(k, unit);
  for (const auto& s : simples) r *= s.numerator();
  for (const auto& h : irreducibles) r *= h.h.pow(h.mult);
  return r;
}

bool RittFactorization::complete() const {
  return std::all_of(irreducibles.begin(), irreducibles.end(), [](const IrreducibleFactor& h) { return h.cert.complete; });
}

namespace {

// Primitive direction of the X-exponent differences when they span rank 1.
std::optional<std::vector<long>> rank_one_direction(const MPoly& f) {
  std::vector<Exponent> ex;
  for (const auto& [e, c] : f.terms()) ex.emplace_back(e.begin() + 1, e.end());
  std::optional<std::vector<long>> v;
  for (std::size_t i = 1; i < ex.size(); ++i) {
    std::vector<long> d(ex[i].size());
    long g = 0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      d[j] = ex[i][j] - ex[0][j];
      g = std::gcd(g, std::labs(d[j]));
    }
    if (g == 0) continue;
    for (auto& x : d) x /= g;
    auto nz = std::find_if(d.begin(), d.end(), [](long x) { return x != 0; });
    if (*nz < 0)
      for (auto& x : d) x = -x;
    if (!v) v = d;
    else if (*v != d) return std::nullopt;
  }
  return v;
}

RittFactorization factor_at(const ExpPoly& f, int refine, int bound) {
  PolynomialModel model = polynomial_model({f}, refine);
  const MPoly& P = model.polys[0];
  FieldPtr k = f.field();
  MFactorization fac = factor(P, FactorMode::MultivariateBaseline);
  RittFactorization out;
  out.refinement = refine;
  std::map<std::vector<long>, ExpPoly> groups;
  FieldElement zero(k);
  for (const auto& mf : fac.factors) {
    const MPoly& F = mf.poly;
    bool has_x = F.involves(0);
    if (!has_x && F.size() == 1) continue;  // monomial in the exponential variables: a unit
    if (!has_x) {
      if (auto v = rank_one_direction(F)) {
        ExpPoly s = from_model(F, model.lattice, zero).pow(mf.mult);
        auto it = groups.find(*v);
        if (it == groups.end()) groups.emplace(*v, s);
        else it->second *= s;
        continue;
      }
    }
    Certificate cert;
    std::vector<int> used = F.used_vars();
    if (used.size() == 1 && used[0] == 0 && F.degree(0) > 1)
      cert = {CertKind::PolynomialOverK, "irreducible over K: " + F.str(), 0, false};
    else
      cert = certify_irreducible(F, bound);
    if (mf.maybe_reducible && cert.kind == CertKind::RefinementBounded) cert.complete = false;
    out.irreducibles.push_back({ep_normalize(from_model(F, model.lattice, zero)).second, mf.mult, cert});
  }
  for (auto& [v, s] : groups) {
    Classification c = ep_classify(s);
    if (c.kind != EClass::Simple) throw Error(ErrorKind::CertificationFailed, "rank-one factor is not simple: " + s.str());
    SimpleEForm form = *c.simple;
    form.unit = UnitE{FieldElement(k, Rational(1)), zero};
    out.simples.push_back(form);
  }
  ExpPoly q = ExpPoly::constant(FieldElement(k, Rational(1)));
  for (const auto& s : out.simples) q *= s.numerator();
  for (const auto& h : out.irreducibles) q *= h.h.pow(h.mult);
  auto u = unit_quotient(f, q);
  if (!u) throw Error(ErrorKind::CertificationFailed, "factorization does not reproduce " + f.str());
  out.unit = *u;
  return out;
}

}  // namespace

RittFactorization ritt_factor(const ExpPoly& f, int bound) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroFunction, "factorization of the zero function");
  int refine = 1;
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      return factor_at(f, refine, bound);
    } catch (const FactorSplitError& e) {
      if (e.t() == 1) throw Error(ErrorKind::CertificationFailed, "baseline factorization missed a split: " + e.detail());
      refine *= e.t();
    }
  }
  throw Error(ErrorKind::CertificationFailed, "lattice refinement did not stabilise for " + f.str());
}

}  // namespace rittlab
