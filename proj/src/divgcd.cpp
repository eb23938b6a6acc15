#include "rittlab/divgcd.hpp"

namespace rittlab {

namespace {

// Drops the monomial content in the exponential variables (units of the ring).
MPoly strip_units(const MPoly& p) {
  Exponent s(p.nvars(), 0);
  for (int i = 1; i < p.nvars(); ++i) s[i] = -p.min_degree(i);
  return p.shifted(s);
}

void require_nonzero(const ExpPoly& f1, const ExpPoly& f2) {
  if (f1.is_zero() || f2.is_zero()) throw Error(ErrorKind::ZeroFunction, "divisibility with the zero function");
  common_field(FieldElement(f1.field(), Rational(1)), FieldElement(f2.field(), Rational(1)));
}

// P(X^k) as a polynomial with nonzero constant term, for k != 0.
KPoly inflate_signed(const KPoly& p, long k) {
  FieldPtr f = p.field();
  long d = p.degree();
  long span = std::labs(k) * d;
  std::vector<FieldElement> c(span + 1, FieldElement(f));
  for (long j = 0; j <= d; ++j) {
    long e = k > 0 ? k * j : span + k * j;
    c[e] = p[j];
  }
  return KPoly(f, std::move(c));
}

}  // namespace

std::optional<ExpPoly> ep_divides(const ExpPoly& f1, const ExpPoly& f2, int refine) {
  require_nonzero(f1, f2);
  PolynomialModel m = polynomial_model({f1, f2}, refine);
  MPoly p1 = strip_units(m.polys[0]);
  auto q = divide_exact(m.polys[1], p1);
  if (!q) return std::nullopt;
  ExpPoly qe = from_model(*q, m.lattice, FieldElement(f1.field()));
  auto u = unit_quotient(f2, f1 * qe);
  if (!u) throw Error(ErrorKind::CertificationFailed, "quotient does not reproduce the dividend");
  return qe.times_unit(*u);
}

ExpPoly ep_gcd(const ExpPoly& f1, const ExpPoly& f2, int refine) {
  require_nonzero(f1, f2);
  PolynomialModel m = polynomial_model({f1, f2}, refine);
  MPoly g = strip_units(gcd(m.polys[0], m.polys[1]));
  ExpPoly ge = from_model(g, m.lattice, FieldElement(f1.field()));
  ExpPoly n = ep_normalize(ge).second;
  if (!ep_divides(n, f1, refine) || !ep_divides(n, f2, refine))
    throw Error(ErrorKind::CertificationFailed, "gcd does not divide its inputs");
  return n;
}

SimpleEForm simple_gcd(const SimpleEForm& g1, const SimpleEForm& g2) {
  if (!rational_ratio(g1.beta, g2.beta)) throw Error(ErrorKind::DistinctSupports, g1.beta.str() + " vs " + g2.beta.str());
  FieldElement beta = *canonical_support({g1.beta, g2.beta});
  long k1 = rational_ratio(g1.beta, beta)->get_num().get_si();
  long k2 = rational_ratio(g2.beta, beta)->get_num().get_si();
  KPoly p = gcd(inflate_signed(g1.P, k1), inflate_signed(g2.P, k2));
  FieldPtr f = beta.field();
  return make_simple(UnitE{FieldElement(f, Rational(1)), FieldElement(f)}, beta, p);
}

ExpPoly h_at(FieldPtr field, const FieldElement& x0) {
  if (x0.is_zero()) return ExpPoly::x(field);
  FieldElement inv = x0.inv();
  FieldElement one(field, Rational(1));
  return (ExpPoly::constant(one) - ExpPoly::x(field) * inv) * ExpPoly::exp(inv, one);
}

int DecompositionView::valuation(const ExpPoly& h) const {
  auto it = valuations.find(h.str());
  return it == valuations.end() ? 0 : it->second.v;
}

ExpPoly DecompositionView::reconstruct() const {
  FieldPtr k = unit.lambda.field();
  ExpPoly r = ExpPoly::from_unit(k, unit);
  int omegas = 0;
  for (const auto& [key, s] : simple_parts) {
    r *= s.numerator();
    omegas += s.omega;
  }
  for (const auto& [key, val] : valuations) omegas += val.omega * val.v;
  for (const auto& [key, val] : valuations) {
    int v = val.v;
    if (val.h == ExpPoly::x(k)) v -= omegas;
    r *= val.h.pow(v);
  }
  return r;
}

DecompositionView decomposition_view(const ExpPoly& f, int bound) {
  RittFactorization rf = ritt_factor(f, bound);
  FieldPtr k = f.field();
  DecompositionView view;
  view.unit = rf.unit;
  int omegas = 0;
  for (const auto& s : rf.simples) {
    view.simple_parts.emplace(s.beta.str(), s);
    omegas += s.omega;
  }
  ExpPoly x = ExpPoly::x(k);
  for (const auto& h : rf.irreducibles) {
    int omega = h.h == x ? 0 : order_at_zero(h.h);
    view.valuations[h.h.str()] = Valuation{h.h, h.mult, h.cert, omega};
    omegas += omega * h.mult;
  }
  if (omegas > 0) {
    auto it = view.valuations.find(x.str());
    if (it == view.valuations.end())
      view.valuations[x.str()] = Valuation{x, omegas, Certificate{CertKind::LinearInX, "root 0", 1, true}};
    else
      it->second.v += omegas;
  }
  return view;
}

bool view_divides(const DecompositionView& a, const DecompositionView& b) {
  for (const auto& [key, s] : a.simple_parts) {
    const SimpleEForm* match = nullptr;
    for (const auto& [kb, sb] : b.simple_parts)
      if (rational_ratio(s.beta, sb.beta)) match = &sb;
    if (!match) return false;
    SimpleEForm g = simple_gcd(s, *match);
    FieldElement beta = g.beta;
    long k = rational_ratio(s.beta, beta)->get_num().get_si();
    if (g.P != monic(inflate_signed(s.P, k))) return false;
  }
  for (const auto& [key, val] : a.valuations)
    if (b.valuation(val.h) < val.v) return false;
  return true;
}

}  // namespace rittlab
