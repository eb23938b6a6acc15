#include <doctest.h>

#include <random>

#include "rittlab/error.hpp"
#include "rittlab/kpoly.hpp"
#include "rittlab/mpoly.hpp"

using namespace rittlab;

namespace {

const std::vector<std::string> kVars{"x", "X1", "X2"};

struct Ctx {
  FieldPtr k;
  FieldElement i;
  MPoly x, X1, X2, one;

  explicit Ctx(FieldPtr f)
      : k(f),
        i(FieldElement::generator(f)),
        x(MPoly::variable(f, kVars, 0)),
        X1(MPoly::variable(f, kVars, 1)),
        X2(MPoly::variable(f, kVars, 2)),
        one(MPoly::constant(f, kVars, FieldElement(f, Rational(1)))) {}

  MPoly c(const Rational& v) const { return one * FieldElement(k, v); }
  MPoly c(const FieldElement& v) const { return one * v; }
};

int count_factors(const MFactorization& f) {
  int n = 0;
  for (const auto& g : f.factors) n += g.mult;
  return n;
}

}  // namespace

TEST_CASE("univariate K polynomials") {
  auto k = FieldDesc::gaussian();
  auto i = FieldElement::generator(k);
  KPoly X = KPoly::x(k);
  KPoly one = KPoly::constant(FieldElement(k, Rational(1)));
  auto f = factor_over_k(X * X * X * X - one);
  CHECK(f.factors.size() == 4);
  KPoly prod = KPoly::constant(f.scalar);
  for (const auto& [q, m] : f.factors) {
    CHECK(q.degree() == 1);
    prod *= q;
  }
  CHECK(prod == X * X * X * X - one);
  // Irreducible over Q(i): x^2 - 2.
  CHECK(factor_over_k(X * X - one * FieldElement(k, Rational(2))).factors.size() == 1);
  // Norm oracle: N(x - i) = x^2 + 1.
  CHECK(norm(X - one * i) == QPoly{1, 0, 1});
  CHECK(norm(i + FieldElement(k, Rational(2))) == 5);
}

TEST_CASE("factorization over Q(zeta12) splits x^12 - 1 into linear factors") {
  auto z = FieldDesc::create(QPoly{1, 0, -1, 0, 1}, QBox{Rational(7, 10), 1, Rational(3, 10), Rational(7, 10)});
  KPoly X = KPoly::x(z);
  KPoly p = KPoly::constant(FieldElement(z, Rational(-1)));
  KPoly x12 = KPoly::monomial(FieldElement(z, Rational(1)), 12);
  auto f = factor_over_k(x12 + p);
  CHECK(f.factors.size() == 12);
}

TEST_CASE("multivariate gcd examples") {
  Ctx q(FieldDesc::rationals());
  CHECK(gcd(q.X1.pow(2) - q.one, q.X1.pow(3) - q.one) == q.X1 - q.one);
  Ctx g(FieldDesc::gaussian());
  CHECK(gcd(g.X1.pow(2) + g.one, g.X1.pow(2) - g.one).is_constant());
  MPoly a = (q.x - q.one) * (q.X1 - q.c(2)).pow(2);
  MPoly b = (q.X1 - q.c(2)) * (q.x + q.one);
  CHECK(gcd(a, b) == q.X1 - q.c(2));
}

TEST_CASE("gcd property: constructed common factors are recovered") {
  Ctx q(FieldDesc::rationals());
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> cf(-3, 3);
  auto rnd = [&] {
    MPoly p(q.k, kVars);
    for (int t = 0; t < 3; ++t) {
      Exponent e{cf(rng) & 1, std::abs(cf(rng)) % 3, std::abs(cf(rng)) % 2};
      p.add_term(e, FieldElement(q.k, Rational(cf(rng) == 0 ? 1 : cf(rng))));
    }
    if (p.is_constant()) p += q.X1;
    return p;
  };
  for (int t = 0; t < 15; ++t) {
    MPoly c = rnd(), a = rnd(), b = rnd();
    MPoly g = gcd(c * a, c * b);
    CHECK(divide_exact(c * a, g).has_value());
    CHECK(divide_exact(c * b, g).has_value());
    CHECK(divide_exact(g, c.monic()).has_value());
  }
}

TEST_CASE("squarefree decomposition") {
  Ctx q(FieldDesc::rationals());
  auto s = squarefree_decomposition((q.X1 - q.one).pow(2) * (q.X1 + q.c(3)), 1);
  REQUIRE(s.size() == 2);
  CHECK(s[0].first == q.X1 + q.c(3));
  CHECK(s[0].second == 1);
  CHECK(s[1].first == q.X1 - q.one);
  CHECK(s[1].second == 2);
  Ctx g(FieldDesc::gaussian());
  auto s2 = squarefree_decomposition(g.X1.pow(4) + g.c(2) * g.X1.pow(2) + g.one, 1);
  REQUIRE(s2.size() == 1);
  CHECK(s2[0].first == g.X1.pow(2) + g.one);
  CHECK(s2[0].second == 2);
  MPoly b1 = (g.c(g.i) - g.x) * FieldElement(g.k, Rational(1, 2));
  auto s3 = squarefree_decomposition(b1, 0);
  REQUIRE(s3.size() == 1);
  CHECK(s3[0].first == g.x - g.c(g.i));
  // Squarefree parts are coprime to their derivatives.
  MPoly m = (g.x * g.X1 - g.one).pow(3) * (g.X1 + g.x).pow(2) * (g.X2 - g.x);
  for (const auto& [f, mult] : squarefree_decomposition(m, 1))
    if (f.involves(1)) CHECK(gcd(f, f.derivative(1)).is_constant());
}

TEST_CASE("factorization examples") {
  Ctx g(FieldDesc::gaussian());
  MPoly x4 = g.X1.pow(4) - g.one;
  auto f = factor(x4, FactorMode::UnivariateK);
  CHECK(f.factors.size() == 4);
  CHECK(f.expand(x4) == x4);
  auto fq = factor(x4, FactorMode::UnivariateQ);
  CHECK(fq.factors.size() == 3);

  Ctx q(FieldDesc::rationals());
  MPoly h = q.x * q.X1 - q.c(2);
  auto fh = factor(h, FactorMode::MultivariateBaseline);
  REQUIRE(fh.factors.size() == 1);
  CHECK(fh.complete());
  MPoly m = q.X1.pow(2) * q.X2 - q.X2.pow(2);
  auto fm = factor(m, FactorMode::MultivariateBaseline);
  REQUIRE(fm.factors.size() == 2);
  CHECK(fm.expand(m) == m);
  bool saw = false;
  for (const auto& fac : fm.factors) saw = saw || fac.poly == q.X1.pow(2) - q.X2;
  CHECK(saw);
}

TEST_CASE("factorization: Hensel and Kronecker paths") {
  Ctx g(FieldDesc::gaussian());
  MPoly a1 = (g.x + g.c(g.i)) * FieldElement(g.k, Rational(-1, 2));
  MPoly b1 = (g.x - g.c(g.i)) * FieldElement(g.k, Rational(-1, 2));
  MPoly t1 = a1 * g.X1.pow(2) + b1;
  MPoly h2 = g.x * g.X2 - g.c(3);
  MPoly h3 = g.x * g.X1 - g.c(2);
  SUBCASE("two binomial-type factors sharing both variables") {
    MPoly p = (g.x * g.X1 - g.c(2)) * (g.x * g.X1 - g.c(3));
    auto f = factor(p, FactorMode::MultivariateBaseline);
    CHECK(count_factors(f) == 2);
    CHECK(f.expand(p) == p);
  }
  SUBCASE("Bessel-type factor times a binomial in another variable") {
    MPoly p = t1 * h2;
    auto f = factor(p, FactorMode::MultivariateBaseline);
    CHECK(count_factors(f) == 2);
    CHECK(f.complete());
    CHECK(f.expand(p) == p);
  }
  SUBCASE("Bessel-type factor times a factor in the same variables") {
    MPoly p = t1 * h3;
    auto f = factor(p, FactorMode::MultivariateBaseline);
    CHECK(count_factors(f) == 2);
    CHECK(f.complete());
    CHECK(f.expand(p) == p);
  }
  SUBCASE("squared factors and pure x content") {
    MPoly p = t1.pow(2) * (g.x - g.c(g.i)) * (g.X1 - g.one) * g.X2;
    auto f = factor(p, FactorMode::MultivariateBaseline);
    CHECK(f.expand(p) == p);
    CHECK(count_factors(f) == 5);
  }
}

TEST_CASE("factorization property: random corpus products remultiply") {
  Ctx g(FieldDesc::gaussian());
  std::mt19937 rng(9);
  std::vector<MPoly> pieces{g.x * g.X1 - g.c(2),     g.X1 - g.c(3),         g.X1.pow(2) + g.one,
                            g.x - g.c(g.i),           g.X2 * g.X1 - g.c(5),  g.x * g.X2.pow(2) + g.X1,
                            g.X2 - g.c(g.i) * g.X1,   g.x * g.x + g.c(2),    g.x * g.X1 + g.X2 + g.one};
  std::uniform_int_distribution<int> pick(0, static_cast<int>(pieces.size()) - 1);
  for (int t = 0; t < 12; ++t) {
    MPoly p = g.c(FieldElement(g.k, std::vector<Rational>{Rational(t + 1), 1}));
    int expect = 0;
    for (int j = 0; j < 3; ++j) {
      p *= pieces[pick(rng)];
      ++expect;
    }
    auto f = factor(p, FactorMode::MultivariateBaseline);
    CHECK(f.expand(p) == p);
    CHECK(count_factors(f) >= expect);
  }
}

TEST_CASE("Eisenstein certificate") {
  Ctx g(FieldDesc::gaussian());
  KPoly X = KPoly::x(g.k);
  for (int k = 1; k <= 4; ++k) CHECK(eisenstein_certify(g.X1.pow(k) + g.x, 1, 0, X));
  MPoly a1 = (g.x + g.c(g.i)) * FieldElement(g.k, Rational(-1, 2));
  MPoly b1 = (g.x - g.c(g.i)) * FieldElement(g.k, Rational(-1, 2));
  KPoly p = X - KPoly::constant(g.i);
  CHECK(eisenstein_certify(a1 * g.X1.pow(2) + b1, 1, 0, p));
  CHECK_FALSE(eisenstein_certify(g.X1.pow(2) - g.x.pow(2), 1, 0, X));
  try {
    eisenstein_certify(g.X1 + g.x, 1, 0, X * X);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotIrreduciblePrime);
  }
}
