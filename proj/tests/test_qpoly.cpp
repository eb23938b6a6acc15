#include <doctest.h>

#include <complex>
#include <random>

#include "rittlab/error.hpp"
#include "rittlab/factor_q.hpp"
#include "rittlab/qpoly.hpp"

using namespace rittlab;

namespace {

QPoly from_roots(std::initializer_list<long> roots) {
  QPoly p = QPoly::constant(1);
  for (long r : roots) p *= QPoly{Rational(-r), 1};
  return p;
}

// Durand-Kerner in double precision, an independent numeric root oracle.
std::vector<std::complex<double>> numeric_roots(const QPoly& p) {
  int n = p.degree();
  std::vector<std::complex<double>> z(n), c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = Rational(p[i] / p.lc()).get_d();
  for (int i = 0; i < n; ++i) z[i] = std::pow(std::complex<double>(0.4, 0.9), i);
  for (int it = 0; it < 2000; ++it) {
    for (int i = 0; i < n; ++i) {
      std::complex<double> v = 0;
      for (int k = n; k >= 0; --k) v = v * z[i] + c[k];
      std::complex<double> d = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) d *= z[i] - z[j];
      z[i] -= v / d;
    }
  }
  return z;
}

QPoly expand(const QFactorization& f) {
  QPoly p = QPoly::constant(f.scalar);
  for (const auto& [q, m] : f.factors)
    for (int i = 0; i < m; ++i) p *= q;
  return p;
}

}  // namespace

TEST_CASE("qpoly arithmetic and division") {
  QPoly a{1, 2, 3}, b{-1, 1};
  auto [q, r] = divmod(a * b + QPoly{5}, b);
  CHECK(q == a);
  CHECK(r == QPoly{5});
  CHECK(a(Rational(2)) == 17);
  CHECK(derivative(a) == QPoly{2, 6});
  CHECK(compose(QPoly{0, 0, 1}, QPoly{1, 1}) == QPoly{1, 2, 1});
  CHECK(QPoly{Rational(1, 2), 0, -1}.str() == "-x^2 + 1/2");
}

TEST_CASE("gcd and squarefree decomposition") {
  CHECK(gcd(from_roots({1, -1}), from_roots({1, 2, 3})) == from_roots({1}));
  CHECK(gcd(QPoly{1, 0, 1}, QPoly{-1, 0, 1}) == QPoly{1});
  auto sf = squarefree_q(from_roots({1, 1, -3}));
  REQUIRE(sf.size() == 2);
  CHECK(sf[0].first == from_roots({-3}));
  CHECK(sf[0].second == 1);
  CHECK(sf[1].first == from_roots({1}));
  CHECK(sf[1].second == 2);
  CHECK(squarefree_part(QPoly{1, 0, 2, 0, 1}) == QPoly{1, 0, 1});
}

TEST_CASE("interpolation reproduces the polynomial") {
  QPoly p{3, -1, 0, Rational(2, 7)};
  std::vector<Rational> xs, ys;
  for (int i = 0; i < 4; ++i) {
    xs.push_back(Rational(i * 3 - 2, 5));
    ys.push_back(p(xs.back()));
  }
  CHECK(interpolate(xs, ys) == p);
}

TEST_CASE("real root isolation") {
  QPoly p = from_roots({0, 1, 2, 5});
  auto iso = isolate_real_roots(p, 0, 3);
  CHECK(iso.root_at_lo);
  CHECK_FALSE(iso.root_at_hi);
  CHECK(iso.count() == 3);
  QPoly s{-2, 0, 1};
  auto iso2 = isolate_real_roots(s, -10, 10);
  REQUIRE(iso2.interior.size() == 2);
  CHECK(iso2.interior[1].first < Rational(1414, 1000));
  CHECK(iso2.interior[1].second > Rational(1414, 1000));
}

TEST_CASE("complex box root count agrees with a numeric root oracle") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> c(6);
    for (auto& v : c) v = coef(rng);
    c.back() = 1;
    QPoly p(c);
    QBox box{Rational(-13, 10), Rational(9, 10), Rational(-7, 10), Rational(11, 10)};
    auto n = count_roots_in_box(p, box);
    REQUIRE(n.has_value());
    int expect = 0;
    for (auto z : numeric_roots(p))
      if (z.real() > -1.3 && z.real() < 0.9 && z.imag() > -0.7 && z.imag() < 1.1) ++expect;
    CHECK(*n == expect);
  }
  CHECK_FALSE(count_roots_in_box(QPoly{1, 0, 1}, QBox{-1, 1, 0, 1}).has_value());
  CHECK(count_roots_in_box(QPoly{0, 0, 1, 0, 1}, QBox{-1, 1, Rational(-1, 2), Rational(1, 2)}) == 2);
}

TEST_CASE("factorization over Q") {
  auto f = factor_over_q(QPoly{-1, 0, 0, 0, 1});
  CHECK(f.factors.size() == 3);
  CHECK(expand(f) == QPoly{-1, 0, 0, 0, 1});
  CHECK(is_irreducible_over_q(QPoly{1, 0, -10, 0, 1}));
  CHECK(is_irreducible_over_q(QPoly{1, 0, 0, 0, 1}));
  CHECK_FALSE(is_irreducible_over_q(QPoly{4, 0, 0, 0, 1}));
  // x^8 - 1 splits into four cyclotomic factors.
  auto g = factor_over_q(QPoly::monomial(1, 8) - QPoly{1});
  CHECK(g.factors.size() == 4);
}

TEST_CASE("factorization property: random products remultiply") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-6, 6), deg(1, 3);
  for (int trial = 0; trial < 25; ++trial) {
    QPoly p = QPoly::constant(Rational(coef(rng) == 0 ? 3 : 2, 3));
    int nf = 1 + trial % 3;
    for (int k = 0; k < nf; ++k) {
      std::vector<Rational> c(deg(rng) + 1);
      for (auto& v : c) v = coef(rng);
      c.back() = 1 + (trial % 2);
      p *= QPoly(c);
    }
    auto f = factor_over_q(p);
    CHECK(expand(f) == p);
    for (const auto& [q, m] : f.factors) {
      CHECK(q.lc() == 1);
      CHECK(m >= 1);
    }
  }
}
