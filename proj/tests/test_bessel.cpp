#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rittlab/bessel.hpp"
#include "rittlab/zeros.hpp"

using namespace rittlab;

namespace {

// Independent oracle: sqrt(pi/2) x^{|a|} J_a(x) with a = n + 1/2 from the
// Gamma function in double precision.
double bessel_oracle(int n, double x) {
  double a = n + 0.5, s = 0;
  for (int m = 0; m < 60; ++m) {
    double g = std::tgamma(m + a + 1);
    double term = std::pow(-1.0, m) / (std::tgamma(m + 1.0) * g) * std::pow(x / 2, 2 * m + a);
    s += term;
  }
  return std::sqrt(std::numbers::pi / 2) * std::pow(x, std::fabs(a)) * s;
}

}  // namespace

TEST_CASE("splits for small n") {
  FieldPtr k = FieldDesc::gaussian();
  FieldElement i = FieldElement::generator(k), h(k, Rational(1, 2));
  auto s0 = bessel_split(0);
  CHECK(s0.A == KPoly::constant(-i * h));
  CHECK(s0.B == KPoly::constant(i * h));
  auto s1 = bessel_split(1);
  CHECK(s1.A == (KPoly::x(k) + KPoly::constant(i)) * -h);
  CHECK(s1.B == (KPoly::x(k) - KPoly::constant(i)) * -h);
  CHECK(s1.conjugate_pair);
  ExpPoly x = ExpPoly::x(k);
  auto sm1 = bessel_split(-1);
  CHECK(s1.T == s0.T - x * sm1.T);
  auto s2 = bessel_split(2);
  CHECK(s2.T == s1.T * FieldElement(k, Rational(3)) - x * x * s0.T);
  CHECK(s2.verified_order == 14);
}

TEST_CASE("recurrence and series for |n| <= 12") {
  FieldPtr k = FieldDesc::gaussian();
  ExpPoly x = ExpPoly::x(k);
  for (int n = -12; n <= 12; ++n) {
    auto s = bessel_split(n);
    CHECK(s.normalizer.is_one());
    CHECK(s.conjugate_pair);
    if (n >= 1) {
      auto a = bessel_split(n + 1), b = bessel_split(n - 1);
      CHECK(a.T - s.T * FieldElement(k, Rational(2 * n + 1)) + x * x * b.T == ExpPoly(k));
    }
  }
  // Series against an independent floating-point oracle at a few points.
  for (int n : {-3, -1, 0, 2, 5})
    for (double xv : {0.3, 1.7}) {
      auto c = bessel_series(n, 60);
      double v = 0;
      for (int j = 60; j >= 0; --j) v = v * xv + c[j].get_d();
      CHECK(std::fabs(v - bessel_oracle(n, xv)) < 1e-12);
    }
}

TEST_CASE("certificates") {
  FieldPtr k = FieldDesc::gaussian();
  auto c1 = bessel_certify(1);
  CHECK(c1.cert.kind == CertKind::EisensteinSimpleRoot);
  CHECK(c1.prime == KPoly::x(k) - KPoly::constant(FieldElement::generator(k)));
  for (int n : {-7, -6, -5, -4, -3, -2, 1, 2, 3, 4, 5, 6}) {
    auto c = bessel_certify(n);
    CHECK(c.gcd_one);
    CHECK(c.squarefree_away_from_zero);
    CHECK(c.cert.complete);
  }
  CHECK_THROWS_AS(bessel_certify(0), Error);
  CHECK_THROWS_AS(bessel_certify(-1), Error);
}

TEST_CASE("Ritt factorization of T_n is one irreducible") {
  for (int n : {-4, -2, 1, 2, 3, 4}) {
    auto s = bessel_split(n);
    auto r = ritt_factor(s.T);
    CHECK(r.simples.empty());
    REQUIRE(r.irreducibles.size() == 1);
    CHECK(r.irreducibles[0].mult == 1);
    CHECK(r.expand() == s.T);
  }
}

TEST_CASE("zeros of T_n are simple") {
  for (int n : {1, 2, -2}) {
    auto z = isolate_zeros(bessel_split(n).T, Rectangle(Rational(1, 3), 12, -2, 2));
    CHECK_FALSE(z.empty());
    for (const auto& r : z) CHECK(r.multiplicity == 1);
  }
}
