#include <doctest.h>

#include <thread>

#include "rittlab/efunc.hpp"
#include "rittlab/error.hpp"

using namespace rittlab;

namespace {

HolonomicSeries cos_series() { return HolonomicSeries({QPoly{1}, QPoly{}, QPoly{1}}, {1, 0}); }
HolonomicSeries cos2_series() { return HolonomicSeries({QPoly{}, QPoly{4}, QPoly{}, QPoly{1}}, {1, 0, -2}); }

// Factorial coefficients of cos^2 from (1 + cos 2x)/2.
Rational cos2_oracle(std::size_t n) {
  if (n % 2) return 0;
  Rational v = Integer(1) << n;
  if ((n / 2) % 2) v = -v;
  if (n == 0) v += 1;
  return v / 2;
}

}  // namespace

TEST_CASE("holonomic coefficients") {
  auto c = cos_series();
  CHECK(c.coeffs(5) == std::vector<Rational>{1, 0, -1, 0, 1});
  auto c2 = cos2_series();
  CHECK(hs_coeff(c2, 0) == 1);
  CHECK(hs_coeff(c2, 2) == -2);
  CHECK(hs_coeff(c2, 4) == 8);
  for (std::size_t n = 0; n < 40; ++n) CHECK(c2.coeff(n) == cos2_oracle(n));
  HolonomicSeries e({QPoly{-1}, QPoly{1}}, {1});
  for (std::size_t n = 0; n < 20; ++n) CHECK(e.coeff(n) == 1);
  CHECK(c2.verify(30));
}

TEST_CASE("holonomic errors") {
  CHECK_THROWS_AS(HolonomicSeries({QPoly{1}, QPoly{}, QPoly{1}}, {1}), Error);
  try {
    HolonomicSeries({QPoly{1}, QPoly{}, QPoly{1}}, {1});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientInitialData);
  }
  // x f' - f: the recurrence leaves c_1 free.
  HolonomicSeries s({QPoly{-1}, QPoly{0, 1}}, {0});
  try {
    s.coeff(1);
    FAIL("expected LeadingSingularity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LeadingSingularity);
  }
  HolonomicSeries s2({QPoly{-1}, QPoly{0, 1}}, {0, 3});
  CHECK(s2.coeff(5) == 0);
  try {
    HolonomicSeries({QPoly{-1}, QPoly{1}}, {1, 2});
    FAIL("expected InconsistentInitialData");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentInitialData);
  }
}

TEST_CASE("concurrent readers share one cache") {
  auto c2 = cos2_series();
  std::vector<std::thread> ts;
  std::vector<bool> ok(4, true);
  for (int i = 0; i < 4; ++i)
    ts.emplace_back([&, i] {
      for (std::size_t n = 0; n < 60; n += 1 + i) ok[i] = ok[i] && c2.coeff(n) == cos2_oracle(n);
    });
  for (auto& t : ts) t.join();
  for (bool b : ok) CHECK(b);
}

TEST_CASE("m-th roots") {
  std::vector<Rational> e2;
  for (int n = 0; n <= 30; ++n) e2.emplace_back(Integer(1) << n);
  for (const auto& b : mth_root_series(e2, 2, 30)) CHECK(b == 1);
  std::vector<Rational> sq{1, 2, 2, 0, 0, 0, 0, 0};
  auto b = mth_root_series(sq, 2, 7);
  CHECK(b == std::vector<Rational>{1, 1, 0, 0, 0, 0, 0, 0});
  auto g = mth_root_series(cos2_series(), 2, 40);
  for (std::size_t l = 0; l <= 40; ++l) {
    Rational want = l % 2 ? 0 : ((l / 2) % 2 ? -1 : 1);
    CHECK(g[l] == want);
  }
  CHECK_THROWS_AS(mth_root_series(std::vector<Rational>{2, 1}, 2, 1), Error);
}

TEST_CASE("m-th root re-expands to f") {
  // f = (1 + x + x^2/3) e^{x/2}, cubed, then rooted.
  std::vector<Rational> base(41, 0);
  for (std::size_t n = 0; n <= 40; ++n) {
    Rational ex = Rational(1, 1) / (Integer(1) << n);
    base[n] = ex;
  }
  std::vector<Rational> poly(41, 0);
  poly[0] = 1;
  poly[1] = 1;
  poly[2] = Rational(2, 3);
  auto g = egf_product(base, poly);
  for (int m : {2, 3, 5}) {
    auto f = g;
    for (int i = 1; i < m; ++i) f = egf_product(f, g);
    auto root = mth_root_series(f, m, 40);
    for (std::size_t l = 0; l <= 40; ++l) CHECK(root[l] == g[l]);
    auto back = root;
    for (int i = 1; i < m; ++i) back = egf_product(back, root);
    CHECK(back == f);
  }
}

TEST_CASE("denominator profile") {
  auto g = mth_root_series(cos2_series(), 2, 20);
  auto p = denominator_profile(g, 2, 1);
  CHECK(p.passed);
  CHECK(p.scale == 4);
  CHECK(denominator_profile({1, 1, 0}, 2, 1).passed);
  auto bad = denominator_profile({1, Rational(1, 5)}, 2, 1);
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.first_failure);
  CHECK(*bad.first_failure == 1);
  CHECK(bad.denominators[1] == 5);
  // The bound itself: square root of 1/(1 - x) in n!-form has b_l with (4)^l b_l integral.
  std::vector<Rational> geo;
  Integer f = 1;
  for (int n = 0; n <= 20; ++n) {
    if (n) f *= n;
    geo.emplace_back(f);
  }
  CHECK(denominator_profile(mth_root_series(geo, 2, 20), 2, 1).passed);
}

TEST_CASE("operator guessing") {
  auto c = cos_series();
  auto op = guess_operator(c, 2, 0, 30, 40);
  REQUIRE(op);
  CHECK(operator_str(*op) == "f'' + f");
  HolonomicSeries e({QPoly{-1}, QPoly{1}}, {1});
  auto oe = guess_operator(e, 1, 0, 20);
  REQUIRE(oe);
  CHECK(operator_str(*oe) == "f' - f");
  // cos^2 has no order-2 operator with polynomial coefficients.
  CHECK_FALSE(guess_operator(cos2_series(), 2, 2, 30));
  // Airy-type: f'' - x f, order 2 degree 1.
  HolonomicSeries ai({QPoly{0, -1}, QPoly{}, QPoly{1}}, {1, 0});
  auto oa = guess_operator(ai, 2, 1, 30);
  REQUIRE(oa);
  CHECK(oa->size() == 3);
  HolonomicSeries check(*oa, {1, 0});
  CHECK(check.coeffs(60) == ai.coeffs(60));
  // Output annihilates the series to the full cached depth.
  auto deep = ai.coeffs(80);
  HolonomicSeries from_guess(*oa, {deep[0], deep[1]});
  CHECK(from_guess.coeffs(80) == deep);
}

TEST_CASE("Leibniz constants") {
  Integer fact = 1;
  for (int m = 2; m <= 6; ++m) {
    fact *= m;
    auto lc = leibniz_constants(m);
    CHECK(lc.c_mm == fact);
    CHECK(lc.c_m1m == Integer(m) * fact * (m + 1) / 2);
    CHECK(lc.structure_ok);
  }
  auto l2 = leibniz_constants(2);
  CHECK(l2.c_mm == 2);
  CHECK(l2.c_m1m == 6);
  CHECK(leibniz_constants(3).c_mm == 6);
}

TEST_CASE("entire quotient") {
  auto lc = leibniz_constants(2);
  DiffOperator L{QPoly{}, QPoly{}, QPoly::constant(Rational(lc.c_m1m))};
  auto r = entire_quotient_test(L, cos_series(), 40);
  REQUIRE(r.polynomial);
  CHECK(r.h == QPoly::constant(-6));
  HolonomicSeries e({QPoly{-1}, QPoly{1}}, {1});
  auto re = entire_quotient_test(DiffOperator{QPoly{-1}, QPoly{1}}, e, 30);
  REQUIRE(re.polynomial);
  CHECK(re.h.is_zero());
  auto rt = entire_quotient_test(DiffOperator{QPoly{}, QPoly{1}}, cos_series(), 30);
  CHECK_FALSE(rt.polynomial);
  CHECK(rt.first_nonzero_tail);
  CHECK_FALSE(rt.tail.empty());
  // Airy: (f'' )/f = x.
  HolonomicSeries ai({QPoly{0, -1}, QPoly{}, QPoly{1}}, {1, 0});
  auto ra = entire_quotient_test(DiffOperator{QPoly{}, QPoly{}, QPoly{1}}, ai, 30);
  REQUIRE(ra.polynomial);
  CHECK(ra.h == QPoly{0, 1});
  CHECK_THROWS_AS(entire_quotient_test(L, std::vector<Rational>(20, 0), 10), Error);
}

TEST_CASE("convention converters") {
  std::vector<Rational> c{1, 2, 6, 24};
  CHECK(factorial_to_plain(c) == std::vector<Rational>{1, 2, 3, 4});
  CHECK(plain_to_factorial(factorial_to_plain(c)) == c);
}
