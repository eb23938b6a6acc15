#include <doctest.h>

#include <cmath>
#include <random>

#include "rittlab/error.hpp"
#include "rittlab/exppoly.hpp"

using namespace rittlab;

namespace {

struct E {
  FieldPtr k;
  FieldElement i;
  explicit E(FieldPtr f) : k(f), i(FieldElement::generator(f)) {}
  FieldElement c(const Rational& v) const { return FieldElement(k, v); }
  ExpPoly cst(const Rational& v) const { return ExpPoly::constant(c(v)); }
  ExpPoly cst(const FieldElement& v) const { return ExpPoly::constant(v); }
  ExpPoly ex(const FieldElement& b) const { return ExpPoly::exp(b, c(1)); }
  ExpPoly ex(const Rational& b) const { return ex(c(b)); }
  ExpPoly x() const { return ExpPoly::x(k); }
};

Rational r(const FieldElement& a) { return a.rational_value(); }

}  // namespace

TEST_CASE("construction merges and cancels") {
  E q(FieldDesc::rationals());
  KPoly one = KPoly::constant(q.c(1));
  CHECK(ExpPoly::build(q.k, {{q.c(1), one}, {q.c(1), -one}}).is_zero());
  auto f = ExpPoly::build(q.k, {{q.c(0), KPoly::x(q.k)}, {q.c(1), one}});
  CHECK(f.size() == 2);
  CHECK(f == q.x() + q.ex(1));
  E g(FieldDesc::gaussian());
  ExpPoly sinx = ExpPoly::build(g.k, {{g.i, KPoly::constant(-g.i * g.c(Rational(1, 2)))},
                                      {-g.i, KPoly::constant(g.i * g.c(Rational(1, 2)))}});
  CHECK(sinx.size() == 2);
  CBall v = ep_eval(sinx, CBall(Rational(314159265358979, 200000000000000), 0, 80), 80);
  CHECK(std::abs(v.center().real() - 1.0) < 1e-12);
  CHECK(std::abs(v.center().imag()) < 1e-20);
}

TEST_CASE("ring operations") {
  E q(FieldDesc::rationals());
  CHECK((q.ex(1) - q.cst(1)) * (q.ex(1) + q.cst(1)) == q.ex(2) - q.cst(1));
  CHECK((q.x() * q.ex(1) - q.cst(2)).derive() == (q.x() + q.cst(1)) * q.ex(1));
  E g(FieldDesc::gaussian());
  ExpPoly a = g.ex(Rational(1, 2)) + g.cst(1), b = g.ex(Rational(1, 2)) - g.cst(1);
  CHECK(a * b == g.ex(1) - g.cst(1));
  CHECK((g.ex(1) - g.cst(1)).str() == "exp(x) - 1");
  CHECK((g.x() * g.ex(1) - g.cst(2)).str() == "x*exp(x) - 2");
  CHECK((g.ex(g.i) * g.i).str() == "(t)*exp((t)*x)");
}

TEST_CASE("Leibniz rule for derive") {
  E g(FieldDesc::gaussian());
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-3, 3);
  auto rnd = [&] {
    ExpPoly f(g.k);
    for (int t = 0; t < 3; ++t)
      f += g.ex(g.c(d(rng)) + g.i * g.c(d(rng) % 2)) * (g.x().pow(std::abs(d(rng)) % 3) * g.c(d(rng) == 0 ? 1 : d(rng)));
    return f;
  };
  for (int t = 0; t < 20; ++t) {
    ExpPoly a = rnd(), b = rnd();
    CHECK((a * b).derive() == a.derive() * b + a * b.derive());
  }
}

TEST_CASE("Taylor coefficients") {
  E q(FieldDesc::rationals());
  auto a = ep_taylor(q.ex(1) - q.cst(1), 3);
  CHECK(r(a[0]) == 0);
  CHECK(r(a[1]) == 1);
  CHECK(r(a[2]) == Rational(1, 2));
  CHECK(r(a[3]) == Rational(1, 6));
  auto b = ep_taylor(q.x() * q.ex(1) - q.cst(2), 3);
  CHECK(r(b[0]) == -2);
  CHECK(r(b[1]) == 1);
  CHECK(r(b[2]) == 1);
  CHECK(r(b[3]) == Rational(1, 2));
  for (const auto& z : ep_taylor(ExpPoly(q.k), 4)) CHECK(z.is_zero());
}

TEST_CASE("normalization") {
  E q(FieldDesc::rationals());
  auto [u1, g1] = ep_normalize(q.x() * q.c(2));
  CHECK(r(u1.lambda) == Rational(1, 2));
  CHECK(u1.alpha.is_zero());
  CHECK(g1 == q.x());
  auto [u2, g2] = ep_normalize(q.ex(1) - q.cst(1));
  CHECK(r(u2.alpha) == Rational(-1, 2));
  CHECK(u2.lambda.is_one());
  CHECK(g2 == q.ex(Rational(1, 2)) - q.ex(Rational(-1, 2)));
  auto t = ep_taylor(g2, 3);
  CHECK(r(t[2]) == 0);
  CHECK(r(t[3]) == Rational(1, 24));
  // h_{x0} with x0 = 3 is already normalized.
  ExpPoly h = (q.cst(1) - q.x() * q.c(Rational(1, 3))) * q.ex(Rational(1, 3));
  auto [u3, g3] = ep_normalize(h);
  CHECK(unit_is_one(u3));
  CHECK(g3 == h);
  CHECK_THROWS_AS(ep_normalize(ExpPoly(q.k)), Error);
}

TEST_CASE("normalization properties") {
  E g(FieldDesc::gaussian());
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-3, 3);
  auto rnd = [&] {
    ExpPoly f(g.k);
    for (int t = 0; t < 3; ++t) f += g.ex(g.c(d(rng)) + g.i * g.c(d(rng))) * g.c(d(rng) == 0 ? 2 : d(rng));
    if (f.is_zero()) f = g.ex(1) - g.cst(3);
    return f;
  };
  for (int t = 0; t < 15; ++t) {
    ExpPoly f = rnd(), h = rnd();
    auto [u, n] = ep_normalize(f);
    CHECK(is_normalized(n));
    CHECK(unit_is_one(ep_normalize(n).first));
    UnitE w{g.c(d(rng) == 0 ? 5 : d(rng)) + g.i, g.c(d(rng)) + g.i};
    CHECK(ep_normalize(f.times_unit(w)).second == n);
    CHECK(is_normalized(n * ep_normalize(h).second));
  }
}

TEST_CASE("classification") {
  E q(FieldDesc::rationals());
  auto c1 = ep_classify(q.ex(3) * q.c(7));
  CHECK(c1.kind == EClass::Unit);
  CHECK(r(c1.unit->lambda) == 7);
  auto c2 = ep_classify(q.ex(2) + q.ex(-1) * q.c(3));
  REQUIRE(c2.kind == EClass::Simple);
  CHECK(r(c2.simple->beta) == 1);
  CHECK(r(c2.simple->unit.alpha) == -1);
  CHECK(c2.simple->P == KPoly(q.k, {q.c(3), q.c(0), q.c(0), q.c(1)}));
  CHECK(c2.simple->omega == 0);
  CHECK(c2.simple->numerator() == q.ex(2) + q.ex(-1) * q.c(3));
  CHECK(ep_classify(q.x() * q.ex(1) - q.cst(5)).kind == EClass::General);
  CHECK(ep_classify(ExpPoly(q.k)).kind == EClass::Zero);
  auto c3 = ep_classify(q.ex(Rational(-2, 3)) - q.ex(Rational(4, 3)));
  REQUIRE(c3.kind == EClass::Simple);
  CHECK(r(c3.simple->beta) == Rational(2, 3));
  CHECK(c3.simple->omega == 1);
  auto s2 = FieldDesc::create(QPoly{-2, 0, 1}, QBox{1, 2, Rational(-1, 10), Rational(1, 10)});
  E s(s2);
  auto c5 = ep_classify(s.ex(1) + s.ex(s.i));
  REQUIRE(c5.kind == EClass::Simple);
  CHECK(c5.simple->beta == s.c(1) - s.i);
  CHECK(ep_classify(s.ex(1) + s.ex(s.i) + s.cst(1)).kind == EClass::General);
  auto c4 = ep_classify(s.ex(-s.i) - s.cst(1));
  REQUIRE(c4.kind == EClass::Simple);
  CHECK(c4.simple->beta == s.i);
}

TEST_CASE("numeric evaluation") {
  E q(FieldDesc::rationals());
  CHECK(ep_eval(q.ex(1) - q.cst(1), CBall(0, 0, 64), 64).is_exact_zero());
  CBall e = ep_eval(q.x() * q.ex(1), CBall(1, 0, 64), 64);
  CHECK(std::abs(e.center().real() - 2.718281828459045) < 1e-14);
  E g(FieldDesc::gaussian());
  ExpPoly sinx = (g.ex(g.i) - g.ex(-g.i)) * (g.i * g.c(Rational(-1, 2)));
  CBall pi(Real(3.141592653589793, 128), Real(0.0, 128), 0.0);
  CBall v = ep_eval(sinx, pi, 128);
  CHECK(v.abs_upper() < 1e-12);
  CHECK(v.rad() < 1e-12);
  // Homomorphism within the enclosures.
  ExpPoly a = g.x() * g.ex(g.i) + g.cst(2), b = g.ex(g.c(1) - g.i) - g.x();
  CBall z(Rational(3, 7), Rational(-5, 4), 100);
  CBall lhs = ep_eval(a * b, z, 100), rhs = ep_eval(a, z, 100) * ep_eval(b, z, 100);
  CHECK((lhs - rhs).abs_lower() == 0.0);
}

TEST_CASE("vanishing order at algebraic points") {
  E g(FieldDesc::gaussian());
  ExpPoly em1 = g.ex(1) - g.cst(1);
  CHECK(vanishing_order_algebraic(em1, g.c(0)) == 1);
  CHECK(vanishing_order_algebraic(em1 * em1, g.c(0)) == 2);
  for (auto x0 : {g.c(2), g.i, g.c(0)}) {
    if (!x0.is_zero()) {
      ExpPoly h = (g.cst(1) - g.x() * x0.inv()) * g.ex(x0.inv());
      CHECK(vanishing_order_algebraic(h, x0) == 1);
      CHECK(vanishing_order_algebraic(h * h * em1, x0) == 2);
    }
    CHECK(vanishing_order_algebraic(g.x() * g.ex(1) - g.cst(3), x0) == 0);
  }
  CHECK_THROWS_AS(vanishing_order_algebraic(ExpPoly(g.k), g.c(1)), Error);
}
