#include <doctest.h>

#include <random>

#include "rittlab/divgcd.hpp"

using namespace rittlab;

namespace {

struct E {
  FieldPtr k;
  FieldElement t;
  explicit E(FieldPtr f) : k(f), t(FieldElement::generator(f)) {}
  FieldElement c(const Rational& v) const { return FieldElement(k, v); }
  ExpPoly cst(const Rational& v) const { return ExpPoly::constant(c(v)); }
  ExpPoly cst(const FieldElement& v) const { return ExpPoly::constant(v); }
  ExpPoly ex(const FieldElement& b) const { return ExpPoly::exp(b, c(1)); }
  ExpPoly ex(const Rational& b) const { return ex(c(b)); }
  ExpPoly x() const { return ExpPoly::x(k); }
};

FieldPtr sqrt2() {
  static FieldPtr f = FieldDesc::create(QPoly{-2, 0, 1}, QBox{1, 2, Rational(-1, 10), Rational(1, 10)});
  return f;
}

ExpPoly norm(const ExpPoly& f) { return ep_normalize(f).second; }

}  // namespace

TEST_CASE("divisibility examples") {
  E q(FieldDesc::rationals());
  auto d1 = ep_divides(q.ex(1) - q.cst(1), q.ex(2) - q.cst(1));
  REQUIRE(d1);
  CHECK(*d1 == q.ex(1) + q.cst(1));
  CHECK_FALSE(ep_divides(q.ex(1) + q.cst(1), q.ex(1) - q.cst(1)));
  ExpPoly h2 = h_at(q.k, q.c(2));
  ExpPoly f = h2 * (q.ex(1) - q.cst(3));
  auto d2 = ep_divides(h2, f);
  REQUIRE(d2);
  CHECK(*d2 == q.ex(1) - q.cst(3));
  // Units divide everything; quotients absorb them.
  auto d3 = ep_divides(q.ex(Rational(5, 2)) * q.c(7), q.ex(1) - q.cst(1));
  REQUIRE(d3);
  CHECK(*d3 * (q.ex(Rational(5, 2)) * q.c(7)) == q.ex(1) - q.cst(1));
  CHECK_THROWS_AS(ep_divides(ExpPoly(q.k), q.cst(1)), Error);
}

TEST_CASE("refinement option finds level-N quotients") {
  E q(FieldDesc::rationals());
  // e^{x/2} - 1 divides e^x - 1 only on the lattice refined by 2 relative to
  // the divisor's own exponents; the joint lattice already contains 1/2.
  CHECK(ep_divides(q.ex(Rational(1, 2)) - q.cst(1), q.ex(1) - q.cst(1)));
  // e^x + 1 and e^{2x} - 1 with refine 3 on the joint lattice.
  auto d = ep_divides(q.ex(1) + q.cst(1), q.ex(2) - q.cst(1), 3);
  REQUIRE(d);
  CHECK(*d == q.ex(1) - q.cst(1));
}

TEST_CASE("gcd examples") {
  E q(FieldDesc::rationals());
  CHECK(ep_gcd(q.ex(2) - q.cst(1), q.ex(3) - q.cst(1)) == norm(q.ex(1) - q.cst(1)));
  E s(sqrt2());
  CHECK(ep_gcd(s.ex(1) - s.cst(2), s.ex(s.t) - s.cst(3)) == s.cst(1));
  ExpPoly f = q.x() * q.ex(1) - q.cst(2);
  CHECK(ep_gcd(f, f) == norm(f));
  ExpPoly a = (q.ex(1) - q.cst(1)) * f, b = f * (q.ex(2) + q.cst(5));
  CHECK(ep_gcd(a, b) == norm(f));
}

TEST_CASE("simple gcd") {
  E q(FieldDesc::rationals());
  auto s = [&](const ExpPoly& f) { return *ep_classify(f).simple; };
  SimpleEForm g = simple_gcd(s(q.ex(2) - q.cst(1)), s(q.ex(3) - q.cst(1)));
  CHECK(g.numerator() == q.ex(1) - q.cst(1));
  CHECK(g.omega == 1);
  CHECK(simple_gcd(s(q.ex(1) - q.cst(2)), s(q.ex(1) - q.cst(3))).P.degree() == 0);
  SimpleEForm sx = s(q.ex(Rational(1, 2)) - q.ex(Rational(-1, 2)));
  SimpleEForm gs = simple_gcd(sx, sx);
  CHECK(gs.P == monic(sx.P));
  CHECK(gs.beta == sx.beta);
  E r(sqrt2());
  CHECK_THROWS_AS(simple_gcd(*ep_classify(r.ex(1) - r.cst(1)).simple, *ep_classify(r.ex(r.t) - r.cst(1)).simple), Error);
  // Opposite signs of beta.
  SimpleEForm neg = s(q.ex(-2) - q.cst(1));
  CHECK(simple_gcd(neg, s(q.ex(3) - q.cst(1))).P.degree() == 1);
}

TEST_CASE("decomposition view") {
  E g(FieldDesc::gaussian());
  ExpPoly em1 = g.ex(1) - g.cst(1);
  auto v1 = decomposition_view(g.x() * em1);
  CHECK(v1.simple_parts.size() == 1);
  // E-layer: e^x - 1 = x * (nonvanishing simple form), so h_0 carries 2.
  CHECK(v1.valuation(g.x()) == 2);
  CHECK(v1.reconstruct() == g.x() * em1);
  ExpPoly h2 = h_at(g.k, g.c(2));
  ExpPoly f = (g.cst(1) - g.x() * g.c(Rational(1, 2))).pow(2) * g.ex(1) * em1;
  auto v2 = decomposition_view(f);
  CHECK(v2.valuation(h2) == 2);
  CHECK(v2.reconstruct() == f);
  auto v3 = decomposition_view(g.ex(g.t) * g.c(3));
  CHECK(v3.simple_parts.empty());
  CHECK(v3.valuations.empty());
  CHECK(v3.unit.alpha == g.t);
}

TEST_CASE("valuation at h_x0 equals the vanishing order") {
  E g(FieldDesc::gaussian());
  std::vector<FieldElement> pts{g.c(0), g.c(2), g.t};
  std::vector<ExpPoly> corpus{g.ex(1) - g.cst(1),
                              (g.ex(1) - g.cst(1)).pow(2) * (g.x() - g.cst(2)),
                              (g.x() - g.cst(g.t)).pow(3) * (g.x() * g.ex(1) - g.cst(2)),
                              g.x().pow(2) * (g.ex(g.t) + g.cst(1)),
                              (g.x() - g.cst(2)) * (g.x() - g.cst(g.t)) * g.ex(g.t.scaled(2)),
                              // sin x - x cos x: irreducible, triple zero at the origin
                              (g.ex(g.t) * (g.cst(g.t) - g.x()) - g.ex(-g.t) * (g.cst(g.t) + g.x())) * g.c(Rational(-1, 2)) *
                                  (g.x() - g.cst(2))};
  for (const auto& f : corpus) {
    auto view = decomposition_view(f);
    CHECK(view.reconstruct() == f);
    for (const auto& x0 : pts) CHECK(view.valuation(h_at(g.k, x0)) == vanishing_order_algebraic(f, x0));
  }
}

TEST_CASE("gcd and divisibility laws on a corpus") {
  E g(FieldDesc::gaussian());
  std::vector<ExpPoly> pieces{g.ex(1) - g.cst(1),           g.ex(1) + g.cst(1),
                              g.ex(2) + g.cst(1),           g.ex(g.t) - g.cst(2),
                              g.x() * g.ex(1) - g.cst(2),   g.x() - g.cst(2),
                              g.ex(Rational(1, 2)) - g.cst(3), g.x() * g.ex(g.t) + g.cst(1)};
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(pieces.size()) - 1);
  auto prod = [&](int n) {
    ExpPoly f = g.cst(1);
    for (int i = 0; i < n; ++i) f *= pieces[pick(rng)];
    return f;
  };
  for (int n = 0; n < 10; ++n) {
    ExpPoly f1 = prod(2), f2 = prod(2), f3 = prod(1);
    ExpPoly gg = ep_gcd(f1, f2);
    bool lhs = ep_divides(f3, gg).has_value();
    bool rhs = ep_divides(f3, f1).has_value() && ep_divides(f3, f2).has_value();
    CHECK(lhs == rhs);
    CHECK(gg == ep_gcd(f2, f1));
    CHECK(ep_gcd(gg, f3) == ep_gcd(f1, ep_gcd(f2, f3)));
    // Divisibility read off the decomposition agrees with exact division.
    CHECK(view_divides(decomposition_view(f3), decomposition_view(f1)) == ep_divides(f3, f1).has_value());
  }
}
