#include "rittlab/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "rittlab/divgcd.hpp"
#include "rittlab/error.hpp"

namespace rittlab {

namespace {

constexpr long kMaxPrecision = 512;
constexpr int kMaxSegmentDepth = 60;
constexpr long kSegmentBudget = 100000;
constexpr int kMaxBoxDepth = 64;

struct QPoint {
  Rational re, im;
};

QPoint midpoint(const QPoint& a, const QPoint& b) { return {(a.re + b.re) / 2, (a.im + b.im) / 2}; }

Rational to_rational(double d) { return Rational(d); }

double upper(const Rational& q) { return up(std::fabs(q.get_d()) * (1.0 + 0x1p-50)); }

struct Vertex {
  std::complex<double> value;
  double err = 0;  // bound on the angle between value and f(vertex)
};

// f, f', ..., f^(K) embedded at one precision.
using Jet = std::vector<NumericExpPoly>;
constexpr int kJetOrder = 5;

class Walk {
 public:
  Walk(const Jet& jet, mpfr_prec_t prec) : jet_(jet), prec_(prec) {}

  std::optional<Vertex> vertex(const QPoint& p) {
    CBall v = jet_[0].eval(CBall(p.re, p.im, prec_));
    double c = std::abs(v.center());
    if (v.contains_zero() || !(v.rad() < c)) return std::nullopt;
    return Vertex{v.center(), std::asin(std::min(1.0, v.rad() / c * (1.0 + 0x1p-40)))};
  }

  // Taylor form around the midpoint: f(m) plus a disc bounding the rest.
  bool enclosure_ok(const QPoint& m, double r) {
    CBall mp(m.re, m.im, prec_);
    CBall f0 = jet_[0].eval(mp);
    double limit = 0.7 * std::abs(f0.center());
    double rad = f0.rad(), rp = 1, fact = 1;
    const int k = static_cast<int>(jet_.size()) - 1;
    for (int j = 1; j < k && rad < limit; ++j) {
      rp *= r;
      fact *= j;
      rad = up_add(rad, up_mul(jet_[j].eval(mp).abs_upper(), rp / fact * (1 + 0x1p-40)));
    }
    if (!(rad < limit)) return false;
    CBall z = mp;
    z.inflate(r);
    rad = up_add(rad, up_mul(jet_[k].eval(z).abs_upper(), std::pow(r, k) / (fact * k) * (1 + 0x1p-40)));
    return rad < limit;
  }

  bool segment(const QPoint& a, const QPoint& b, const Vertex& fa, const Vertex& fb, int depth) {
    if (++segments_ > kSegmentBudget) return false;
    QPoint m = midpoint(a, b);
    Rational half = ((b.re - a.re) + (b.im - a.im)) / 2;
    if (enclosure_ok(m, upper(half))) {
      total_ += std::arg(fb.value / fa.value);
      err_ += fa.err + fb.err;
      return true;
    }
    if (depth >= kMaxSegmentDepth) return false;
    auto fm = vertex(m);
    if (!fm) return false;
    return segment(a, m, fa, *fm, depth + 1) && segment(m, b, *fm, fb, depth + 1);
  }

  std::optional<int> run(const Rectangle& box) {
    QPoint c[4] = {{box.re_lo, box.im_lo}, {box.re_hi, box.im_lo}, {box.re_hi, box.im_hi}, {box.re_lo, box.im_hi}};
    std::optional<Vertex> v[4];
    for (int i = 0; i < 4; ++i)
      if (!(v[i] = vertex(c[i]))) return std::nullopt;
    for (int i = 0; i < 4; ++i)
      if (!segment(c[i], c[(i + 1) % 4], *v[i], *v[(i + 1) % 4], 0)) return std::nullopt;
    if (err_ >= 0.5) return std::nullopt;
    double turns = total_ / (2 * std::numbers::pi);
    long w = std::lround(turns);
    if (std::fabs(total_ - 2 * std::numbers::pi * w) > 0.5 + err_) return std::nullopt;
    return static_cast<int>(w);
  }

 private:
  const Jet& jet_;
  mpfr_prec_t prec_;
  double total_ = 0, err_ = 0;
  long segments_ = 0;
};

// Winding with a prepared ladder of embeddings.
class Counter {
 public:
  Counter(const ExpPoly& f, long precision) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroFunction, "winding count of the zero function");
    derivs_.push_back(f);
    for (int j = 1; j <= kJetOrder; ++j) derivs_.push_back(derivs_.back().derive());
    for (long p = std::max<long>(precision, 53); p <= kMaxPrecision; p *= 2) precisions_.push_back(p);
    if (precisions_.empty()) precisions_.push_back(kMaxPrecision);
    ladder_.resize(precisions_.size());
  }

  int count(const Rectangle& box) {
    for (std::size_t i = 0; i < precisions_.size(); ++i) {
      Walk w(jet(i), precisions_[i] + 16);
      if (auto r = w.run(box)) return *r;
    }
    throw Error(ErrorKind::ZeroOnBoundary, "enclosure of f meets 0 on the boundary of " + box.str());
  }

  const NumericExpPoly& base() { return jet(0)[0]; }
  const NumericExpPoly& derivative() { return jet(0)[1]; }

 private:
  const Jet& jet(std::size_t i) {
    if (ladder_[i].empty())
      for (const auto& d : derivs_) ladder_[i].emplace_back(d, precisions_[i]);
    return ladder_[i];
  }

  std::vector<ExpPoly> derivs_;
  std::vector<long> precisions_;
  std::vector<Jet> ladder_;
};

class Isolator {
 public:
  Isolator(const ExpPoly& f, double tol, long precision)
      : counter_(f, precision), tol_(tol), rng_(20241019) {}

  std::vector<ZeroReport> run(const Rectangle& box) {
    Rectangle b = box;
    std::optional<int> w;
    for (int attempt = 0; attempt < 8 && !w; ++attempt) {
      try {
        w = counter_.count(b);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ZeroOnBoundary) throw;
        Rational eps = jitter();
        b = Rectangle(b.re_lo - eps, b.re_hi + eps, b.im_lo - eps, b.im_hi + eps);
      }
    }
    if (!w) throw Error(ErrorKind::ZeroOnBoundary, "could not move the boundary of " + box.str() + " off a zero");
    subdivide(b, *w, 0);
    std::sort(out_.begin(), out_.end(), [](const ZeroReport& a, const ZeroReport& c) {
      double gap = 1e-9 * (1 + std::abs(a.approx) + std::abs(c.approx));
      if (std::fabs(a.approx.real() - c.approx.real()) > gap) return a.approx.real() < c.approx.real();
      return a.approx.imag() < c.approx.imag();
    });
    return out_;
  }

 private:
  Rational jitter() {
    std::uniform_int_distribution<long> d(1, 1L << 20);
    return to_rational(tol_ / 10) * Rational(d(rng_), (1L << 20) + 1);
  }

  std::optional<std::complex<double>> newton(std::complex<double> z, int mult) {
    const NumericExpPoly& f = counter_.base();
    for (int it = 0; it < 60; ++it) {
      std::complex<double> fz = f.eval(z), dz = counter_.derivative().eval(z);
      if (fz == 0.0) return z;
      if (dz == 0.0 || !std::isfinite(std::abs(dz))) return std::nullopt;
      std::complex<double> step = static_cast<double>(mult) * fz / dz;
      z -= step;
      if (!std::isfinite(std::abs(z))) return std::nullopt;
      if (std::abs(step) <= 1e-15 * (1 + std::abs(z))) return z;
    }
    return z;
  }

  bool inside(const Rectangle& inner, const Rectangle& outer) {
    return inner.re_lo > outer.re_lo && inner.re_hi < outer.re_hi && inner.im_lo > outer.im_lo &&
           inner.im_hi < outer.im_hi;
  }

  bool certify(const Rectangle& b, int w) {
    auto z = newton(b.center(), w);
    if (!z || !b.contains(*z)) return false;
    double rho = std::max(tol_ / 4, 1e-13 * (1 + std::abs(*z)));
    for (int shrink = 0; shrink < 4; ++shrink, rho /= 8) {
      Rectangle s = square_around(to_rational(z->real()), to_rational(z->imag()), to_rational(rho));
      if (!inside(s, b)) continue;
      int m;
      try {
        m = counter_.count(s);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ZeroOnBoundary) throw;
        continue;
      }
      if (m != w) return false;
      out_.push_back(ZeroReport{b, w, s, *z, m});
      return true;
    }
    return false;
  }

  void subdivide(const Rectangle& b, int w, int depth) {
    if (w == 0) return;
    if (w < 0) throw Error(ErrorKind::CertificationFailed, "negative winding count on " + b.str());
    if (depth > kMaxBoxDepth) throw Error(ErrorKind::MaxDepth, "subdivision depth exceeded near " + b.str());
    if (certify(b, w)) return;
    if (b.diameter() < tol_) {
      out_.push_back(ZeroReport{b, w, b, b.center(), w});
      return;
    }
    static const Rational kSplits[] = {Rational(1, 2), Rational(25, 49), Rational(23, 49), Rational(27, 53),
                                       Rational(26, 53), Rational(31, 59)};
    for (const auto& s : kSplits) {
      Rational xm = b.re_lo + s * b.width(), ym = b.im_lo + s * b.height();
      Rectangle kids[4] = {Rectangle(b.re_lo, xm, b.im_lo, ym), Rectangle(xm, b.re_hi, b.im_lo, ym),
                           Rectangle(b.re_lo, xm, ym, b.im_hi), Rectangle(xm, b.re_hi, ym, b.im_hi)};
      int ws[4];
      try {
        for (int i = 0; i < 4; ++i) ws[i] = counter_.count(kids[i]);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ZeroOnBoundary) throw;
        continue;
      }
      if (ws[0] + ws[1] + ws[2] + ws[3] != w) continue;
      for (int i = 0; i < 4; ++i) subdivide(kids[i], ws[i], depth + 1);
      return;
    }
    throw Error(ErrorKind::ZeroOnBoundary, "no split line of " + b.str() + " avoids the zeros");
  }

  Counter counter_;
  double tol_;
  std::mt19937 rng_;
  std::vector<ZeroReport> out_;
};

struct Point {
  std::complex<double> z;
  int mult;
};

std::vector<Point> points(const std::vector<ZeroReport>& r) {
  std::vector<Point> p;
  for (const auto& z : r) p.push_back({z.approx, z.multiplicity});
  return p;
}

int mult_near(const std::vector<Point>& ps, std::complex<double> z, double tol) {
  for (const auto& p : ps)
    if (std::abs(p.z - z) <= tol) return p.mult;
  return 0;
}

std::vector<std::complex<double>> merged(const std::vector<std::vector<Point>>& sets, double tol) {
  std::vector<std::complex<double>> out;
  for (const auto& s : sets)
    for (const auto& p : s) {
      bool seen = false;
      for (const auto& q : out) seen = seen || std::abs(q - p.z) <= tol;
      if (!seen) out.push_back(p.z);
    }
  return out;
}

// Zeros away from the box boundary are matched with a tolerance that also
// absorbs the sizes of cluster boxes.
double match_tol(double tol) { return std::max(tol, 1e-9); }

}  // namespace

Rectangle::Rectangle(Rational a, Rational b, Rational c, Rational d)
    : re_lo(std::move(a)), re_hi(std::move(b)), im_lo(std::move(c)), im_hi(std::move(d)) {
  if (!(re_lo < re_hi) || !(im_lo < im_hi)) throw Error(ErrorKind::InvalidArgument, "rectangle needs positive area");
}

std::complex<double> Rectangle::center() const {
  return {Rational((re_lo + re_hi) / 2).get_d(), Rational((im_lo + im_hi) / 2).get_d()};
}

double Rectangle::diameter() const { return std::hypot(width().get_d(), height().get_d()); }

bool Rectangle::contains(std::complex<double> z) const {
  return z.real() >= re_lo.get_d() && z.real() <= re_hi.get_d() && z.imag() >= im_lo.get_d() &&
         z.imag() <= im_hi.get_d();
}

std::string Rectangle::str() const {
  return "[" + re_lo.get_str() + ", " + re_hi.get_str() + "] x [" + im_lo.get_str() + ", " + im_hi.get_str() + "]";
}

Rectangle square_around(const Rational& re, const Rational& im, const Rational& r) {
  return Rectangle(re - r, re + r, im - r, im + r);
}

NumericExpPoly::NumericExpPoly(const ExpPoly& f, long precision) : precision_(precision) {
  mpfr_prec_t prec = precision + 16;
  for (const auto& [b, p] : f.terms()) {
    Term t{embed_numeric(b, prec), {}, {}, {}};
    t.beta_d = t.beta.center();
    for (int i = 0; i <= p.degree(); ++i) {
      t.coeffs.push_back(embed_numeric(p[i], prec));
      t.coeffs_d.push_back(t.coeffs.back().center());
    }
    terms_.push_back(std::move(t));
  }
}

CBall NumericExpPoly::eval(const CBall& z) const {
  mpfr_prec_t prec = precision_ + 16;
  CBall acc(prec);
  for (const auto& t : terms_) {
    CBall px(prec);
    for (auto it = t.coeffs.rbegin(); it != t.coeffs.rend(); ++it) px = px * z + *it;
    if (!t.beta.is_exact_zero()) px = px * exp(t.beta * z);
    acc = acc + px;
  }
  return acc;
}

std::complex<double> NumericExpPoly::eval(std::complex<double> z) const {
  std::complex<double> acc = 0;
  for (const auto& t : terms_) {
    std::complex<double> px = 0;
    for (auto it = t.coeffs_d.rbegin(); it != t.coeffs_d.rend(); ++it) px = px * z + *it;
    acc += px * std::exp(t.beta_d * z);
  }
  return acc;
}

int winding_count(const ExpPoly& f, const Rectangle& box, long precision) {
  Counter c(f, precision);
  return c.count(box);
}

std::vector<ZeroReport> isolate_zeros(const ExpPoly& f, const Rectangle& box, double tol, long precision) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroFunction, "zeros of the zero function");
  Isolator iso(f, tol, precision);
  return iso.run(box);
}

std::string to_string(EvidenceKind k) {
  switch (k) {
    case EvidenceKind::CommonZerosVsGcd: return "common_zeros_vs_gcd";
    case EvidenceKind::SimpleZeros: return "simple_zeros";
    case EvidenceKind::DivisionExplainsZero: return "division_explains_zero";
  }
  return "unknown";
}

EvidenceReport evidence_report(EvidenceKind kind, const std::vector<ExpPoly>& inputs, const Rectangle& box,
                               double tol) {
  EvidenceReport rep{kind, true, {}, {}};
  double mt = match_tol(tol);
  auto add = [&](EvidenceItem it) {
    rep.pass = rep.pass && it.pass;
    rep.items.push_back(std::move(it));
  };
  switch (kind) {
    case EvidenceKind::CommonZerosVsGcd: {
      if (inputs.size() != 2) throw Error(ErrorKind::InvalidArgument, "common_zeros_vs_gcd takes two functions");
      ExpPoly g = ep_gcd(inputs[0], inputs[1]);
      rep.notes.push_back("gcd = " + g.str());
      auto z1 = points(isolate_zeros(inputs[0], box, tol));
      auto z2 = points(isolate_zeros(inputs[1], box, tol));
      auto zg = points(isolate_zeros(g, box, tol));
      for (const auto& z : merged({z1, z2, zg}, mt)) {
        int m1 = mult_near(z1, z, mt), m2 = mult_near(z2, z, mt), mg = mult_near(zg, z, mt);
        if (m1 == 0 && m2 == 0 && mg == 0) continue;
        if (std::abs(z) <= mt) {
          rep.notes.push_back("origin excluded: multiplicities " + std::to_string(m1) + ", " + std::to_string(m2) +
                              ", gcd " + std::to_string(mg));
          continue;
        }
        if (m1 > 0 && m2 == 0 && mg == 0) continue;
        if (m2 > 0 && m1 == 0 && mg == 0) continue;
        int want = std::min(m1, m2);
        add({z, want > 0 ? "common" : "gcd only", want, mg, want == mg});
      }
      break;
    }
    case EvidenceKind::SimpleZeros: {
      if (inputs.size() != 1) throw Error(ErrorKind::InvalidArgument, "simple_zeros takes one function");
      for (const auto& r : isolate_zeros(inputs[0], box, tol))
        add({r.approx, "zero", 1, r.multiplicity, r.multiplicity == 1});
      break;
    }
    case EvidenceKind::DivisionExplainsZero: {
      if (inputs.size() != 2) throw Error(ErrorKind::InvalidArgument, "division_explains_zero takes f and a factor");
      auto q = ep_divides(inputs[1], inputs[0]);
      if (!q) {
        rep.pass = false;
        rep.notes.push_back("declared factor does not divide f");
        break;
      }
      rep.notes.push_back("quotient = " + q->str());
      auto zf = points(isolate_zeros(inputs[0], box, tol));
      auto zd = points(isolate_zeros(inputs[1], box, tol));
      auto zq = points(isolate_zeros(*q, box, tol));
      for (const auto& z : merged({zf, zd, zq}, mt)) {
        int want = mult_near(zf, z, mt) - mult_near(zd, z, mt), got = mult_near(zq, z, mt);
        add({z, mult_near(zd, z, mt) ? "explained by factor" : "quotient", want, got, want == got});
      }
      break;
    }
  }
  return rep;
}

}  // namespace rittlab
