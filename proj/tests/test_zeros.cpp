#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rittlab/divgcd.hpp"
#include "rittlab/error.hpp"
#include "rittlab/zeros.hpp"

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

ExpPoly bessel1(const E& g) {
  ExpPoly a = (g.x() + g.cst(g.t)) * g.c(Rational(-1, 2));
  ExpPoly b = (g.x() - g.cst(g.t)) * g.c(Rational(-1, 2));
  return g.ex(-g.t) * (a * g.ex(g.t.scaled(2)) + b);
}

// Bisection oracle for tan x = x on an interval where sin x - x cos x changes sign.
double bisect_tan(double lo, double hi) {
  auto h = [](double x) { return std::sin(x) - x * std::cos(x); };
  for (int i = 0; i < 200; ++i) {
    double m = (lo + hi) / 2;
    (h(lo) * h(m) <= 0 ? hi : lo) = m;
  }
  return (lo + hi) / 2;
}

// Newton oracle for x e^x = 1.
double lambert_w1() {
  double w = 0.5;
  for (int i = 0; i < 50; ++i) w -= (w * std::exp(w) - 1) / (std::exp(w) * (w + 1));
  return w;
}

}  // namespace

TEST_CASE("oracle values") {
  CHECK(std::fabs(bisect_tan(4, 4.7) - 4.493409458) < 1e-9);
  CHECK(std::fabs(bisect_tan(7, 7.8) - 7.725251837) < 1e-9);
  CHECK(std::fabs(lambert_w1() - 0.5671432904) < 1e-10);
}

TEST_CASE("winding counts") {
  E q(FieldDesc::rationals());
  ExpPoly f = q.ex(1) - q.cst(1);
  Rectangle unit(-1, 1, -1, 1);
  CHECK(winding_count(f, unit) == 1);
  CHECK(winding_count(f * f, unit) == 2);
  CHECK(winding_count(f, Rectangle(-1, 1, -7, 7)) == 3);
  CHECK(winding_count(q.cst(3), unit) == 0);
  E g(FieldDesc::gaussian());
  CHECK(winding_count(bessel1(g), Rectangle(1, 10, -1, 1)) == 2);
  // Zero exactly on a corner.
  CHECK_THROWS_AS(winding_count(f, Rectangle(0, 1, 0, 1)), Error);
}

TEST_CASE("winding is additive over partitions") {
  E g(FieldDesc::gaussian());
  ExpPoly f = (g.x() * g.ex(1) - g.cst(2)) * (g.ex(g.t) + g.cst(1));
  Rectangle box(-3, Rational(31, 10), -9, Rational(89, 10));
  int whole = winding_count(f, box);
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(1, 98);
  for (int trial = 0; trial < 4; ++trial) {
    Rational xm = box.re_lo + box.width() * Rational(d(rng), 99) + Rational(1, 1009);
    Rational ym = box.im_lo + box.height() * Rational(d(rng), 99) + Rational(1, 1013);
    int s = winding_count(f, Rectangle(box.re_lo, xm, box.im_lo, ym)) +
            winding_count(f, Rectangle(xm, box.re_hi, box.im_lo, ym)) +
            winding_count(f, Rectangle(box.re_lo, xm, ym, box.im_hi)) +
            winding_count(f, Rectangle(xm, box.re_hi, ym, box.im_hi));
    CHECK(s == whole);
  }
}

TEST_CASE("isolation examples") {
  E q(FieldDesc::rationals());
  auto z = isolate_zeros(q.ex(1) - q.cst(1), Rectangle(-1, 8, -8, 8));
  REQUIRE(z.size() == 3);
  for (const auto& r : z) {
    CHECK(std::fabs(r.approx.real()) < 1e-9);
    CHECK(r.multiplicity == 1);
  }
  CHECK(std::fabs(z[0].approx.imag() + 2 * std::numbers::pi) < 1e-9);
  CHECK(std::fabs(z[2].approx.imag() - 2 * std::numbers::pi) < 1e-9);

  E g(FieldDesc::gaussian());
  auto zb = isolate_zeros(bessel1(g), Rectangle(1, 10, -1, 1));
  REQUIRE(zb.size() == 2);
  CHECK(std::fabs(zb[0].approx.real() - bisect_tan(4, 4.7)) < 1e-9);
  CHECK(std::fabs(zb[1].approx.real() - bisect_tan(7, 7.8)) < 1e-9);
  CHECK(std::fabs(zb[0].approx.imag()) < 1e-9);

  auto zl = isolate_zeros(q.x() * q.ex(1) - q.cst(1), Rectangle(0, 1, -1, 1));
  REQUIRE(zl.size() == 1);
  CHECK(std::fabs(zl[0].approx.real() - lambert_w1()) < 1e-9);
}

TEST_CASE("multiplicities and consistency") {
  E g(FieldDesc::gaussian());
  ExpPoly f = (g.ex(1) - g.cst(1)).pow(2) * (g.x() - g.cst(2)).pow(3) * (g.x() * g.ex(1) - g.cst(2));
  Rectangle box(-3, 4, -5, 5);
  auto z = isolate_zeros(f, box);
  int total = 0;
  for (const auto& r : z) {
    total += r.multiplicity;
    CHECK(r.winding == r.multiplicity);
  }
  CHECK(total == winding_count(f, box));
  // Algebraic zeros: winding multiplicity equals the exact vanishing order.
  for (const auto& r : z) {
    if (std::abs(r.approx) < 1e-6) CHECK(r.multiplicity == vanishing_order_algebraic(f, g.c(0)));
    if (std::abs(r.approx - 2.0) < 1e-6) CHECK(r.multiplicity == vanishing_order_algebraic(f, g.c(2)));
  }
  // Zero on the given boundary is moved off by jitter.
  auto zj = isolate_zeros(g.x() - g.cst(2), Rectangle(2, 3, -1, 1));
  REQUIRE(zj.size() == 1);
  CHECK(std::abs(zj[0].approx - 2.0) < 1e-9);
}

TEST_CASE("evidence reports") {
  E q(FieldDesc::rationals());
  auto r1 = evidence_report(EvidenceKind::CommonZerosVsGcd, {q.ex(2) - q.cst(1), q.ex(3) - q.cst(1)},
                            Rectangle(-1, 1, -7, 7));
  CHECK(r1.pass);
  CHECK(r1.items.size() == 2);
  E g(FieldDesc::gaussian());
  auto r2 = evidence_report(EvidenceKind::SimpleZeros, {g.x() * g.ex(1) - g.cst(2)}, Rectangle(-3, 3, -15, 15));
  CHECK(r2.pass);
  CHECK(r2.items.size() >= 3);
  ExpPoly f = (q.ex(1) - q.cst(2)) * (q.x() * q.ex(1) - q.cst(3));
  auto r3 = evidence_report(EvidenceKind::DivisionExplainsZero, {f, q.ex(1) - q.cst(2)}, Rectangle(0, 2, -1, 1));
  CHECK(r3.pass);
  auto r4 = evidence_report(EvidenceKind::DivisionExplainsZero, {f, q.ex(1) - q.cst(5)}, Rectangle(0, 2, -1, 1));
  CHECK_FALSE(r4.pass);
  auto r5 = evidence_report(EvidenceKind::SimpleZeros, {(q.ex(1) - q.cst(2)).pow(2)}, Rectangle(0, 1, -1, 1));
  CHECK_FALSE(r5.pass);
}
