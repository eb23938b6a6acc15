#include "rittlab/qpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "rittlab/error.hpp"

namespace rittlab {

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& v : c_) v.canonicalize();
  trim();
}

QPoly::QPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) {
  for (auto& v : c_) v.canonicalize();
  trim();
}

QPoly QPoly::constant(const Rational& c) { return QPoly(std::vector<Rational>{c}); }

QPoly QPoly::monomial(const Rational& c, std::size_t k) {
  std::vector<Rational> v(k + 1);
  v[k] = c;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational QPoly::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const QPoly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

std::string QPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[i];
    if (sgn(c) == 0) continue;
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    Rational a = abs(c);
    if (i == 0 || a != 1) {
      os << a.get_str();
      if (i > 0) os << "*";
    }
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {QPoly(), a};
  std::vector<Rational> q(a.degree() - db + 1);
  Rational inv = 1 / b.lc();
  for (int i = a.degree(); i >= db; --i) {
    if (sgn(r[i]) == 0) continue;
    Rational f = r[i] * inv;
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b[j];
  }
  r.resize(db);
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly rem(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

QPoly monic(const QPoly& a) {
  if (a.is_zero()) return a;
  return a * Rational(1 / a.lc());
}

QPoly derivative(const QPoly& a) {
  if (a.degree() < 1) return QPoly();
  std::vector<Rational> d(a.degree());
  for (int i = 1; i <= a.degree(); ++i) d[i - 1] = a[i] * i;
  return QPoly(std::move(d));
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = rem(x, y);
    x = std::move(y);
    y = monic(r);
  }
  return monic(x);
}

QPoly compose(const QPoly& a, const QPoly& b) {
  QPoly acc;
  for (int i = a.degree(); i >= 0; --i) acc = acc * b + QPoly::constant(a[i]);
  return acc;
}

std::vector<std::pair<QPoly, int>> squarefree_q(const QPoly& a) {
  std::vector<std::pair<QPoly, int>> out;
  if (a.degree() < 1) return out;
  QPoly f = monic(a);
  QPoly d = derivative(f);
  QPoly g = gcd(f, d);
  QPoly w = divmod(f, g).first;
  QPoly y = divmod(d, g).first;
  QPoly z = y - derivative(w);
  int i = 1;
  while (w.degree() >= 1) {
    QPoly h = gcd(w, z);
    if (h.degree() >= 1) out.emplace_back(h, i);
    w = divmod(w, h).first;
    y = divmod(z, h).first;
    z = y - derivative(w);
    ++i;
  }
  return out;
}

QPoly squarefree_part(const QPoly& a) {
  if (a.degree() < 1) return a.is_zero() ? a : QPoly::constant(1);
  return monic(divmod(a, gcd(a, derivative(a))).first);
}

QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  // Newton divided differences.
  std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  QPoly acc;
  for (std::size_t k = n; k-- > 0;) {
    acc = acc * QPoly{-xs[k], 1} + QPoly::constant(dd[k]);
  }
  return acc;
}

namespace {

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  std::vector<QPoly> seq{p, derivative(p)};
  while (!seq.back().is_zero()) {
    QPoly r = rem(seq[seq.size() - 2], seq.back());
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

int sign_changes(const std::vector<QPoly>& seq, const Rational& t) {
  int changes = 0, last = 0;
  for (const auto& q : seq) {
    int s = sgn(q(t));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Roots in (a, b) for a, b non-roots.
int sturm_count(const std::vector<QPoly>& seq, const Rational& a, const Rational& b) {
  return sign_changes(seq, a) - sign_changes(seq, b);
}

// A point strictly inside (a, b) that is not a root of p.
Rational split_point(const QPoly& p, const Rational& a, const Rational& b) {
  static const int fractions[][2] = {{1, 2}, {1, 3}, {2, 3}, {2, 5}, {3, 5}, {3, 7}, {4, 7}, {5, 11}};
  for (const auto& f : fractions) {
    Rational m = a + (b - a) * Rational(f[0], f[1]);
    if (sgn(p(m)) != 0) return m;
  }
  for (int k = 13;; k += 2) {
    Rational m = a + (b - a) * Rational(k / 2, k);
    if (sgn(p(m)) != 0) return m;
  }
}

}  // namespace

RealRootIsolation isolate_real_roots(const QPoly& p_in, const Rational& lo, const Rational& hi) {
  RealRootIsolation out;
  if (p_in.is_zero()) throw Error(ErrorKind::InvalidArgument, "root isolation of the zero polynomial");
  QPoly p = squarefree_part(p_in);
  if (p.degree() < 1) return out;
  if (sgn(p(lo)) == 0) {
    out.root_at_lo = true;
    p = divmod(p, QPoly{-lo, 1}).first;
  }
  if (lo != hi && sgn(p(hi)) == 0) {
    out.root_at_hi = true;
    p = divmod(p, QPoly{-hi, 1}).first;
  }
  if (p.degree() < 1 || lo >= hi) return out;
  auto seq = sturm_sequence(p);
  struct Work {
    Rational a, b;
    int n;
  };
  std::vector<Work> stack{{lo, hi, sturm_count(seq, lo, hi)}};
  std::vector<std::pair<Rational, Rational>> found;
  while (!stack.empty()) {
    Work w = stack.back();
    stack.pop_back();
    if (w.n == 0) continue;
    if (w.n == 1) {
      found.emplace_back(w.a, w.b);
      continue;
    }
    Rational m = split_point(p, w.a, w.b);
    int left = sturm_count(seq, w.a, m);
    stack.push_back({m, w.b, w.n - left});
    stack.push_back({w.a, m, left});
  }
  std::sort(found.begin(), found.end());
  // Keep the outermost intervals away from lo and hi so that a_1 and b_last
  // can serve as sample points strictly inside the gaps.
  if (!found.empty()) {
    auto& first = found.front();
    while (first.first == lo) {
      Rational m = split_point(p, first.first, first.second);
      if (sturm_count(seq, first.first, m) == 1) first.second = m;
      else first.first = m;
    }
    auto& last = found.back();
    while (last.second == hi) {
      Rational m = split_point(p, last.first, last.second);
      if (sturm_count(seq, m, last.second) == 1) last.first = m;
      else last.second = m;
    }
  }
  out.interior = std::move(found);
  return out;
}

namespace {

struct ComplexQPoly {
  QPoly re, im;
};

// p(z0 + t*(z1 - z0)) split into real and imaginary parts in t.
ComplexQPoly restrict_to_edge(const QPoly& p, const Rational& x0, const Rational& y0, const Rational& x1,
                              const Rational& y1, const Rational& rot_re, const Rational& rot_im) {
  QPoly zr{x0, x1 - x0};
  QPoly zi{y0, y1 - y0};
  QPoly ar, ai;
  for (int k = p.degree(); k >= 0; --k) {
    QPoly nr = ar * zr - ai * zi + QPoly::constant(p[k]);
    QPoly ni = ar * zi + ai * zr;
    ar = std::move(nr);
    ai = std::move(ni);
  }
  return {ar * rot_re - ai * rot_im, ar * rot_im + ai * rot_re};
}

int quadrant(const Rational& re, const Rational& im) {
  if (sgn(re) > 0 && sgn(im) > 0) return 0;
  if (sgn(re) < 0 && sgn(im) > 0) return 1;
  if (sgn(re) < 0 && sgn(im) < 0) return 2;
  return 3;
}

}  // namespace

std::optional<int> count_roots_in_box(const QPoly& p, const QBox& box) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "root count of the zero polynomial");
  if (p.degree() == 0) return 0;
  const Rational xs[4] = {box.re_lo, box.re_hi, box.re_hi, box.re_lo};
  const Rational ys[4] = {box.im_lo, box.im_lo, box.im_hi, box.im_hi};

  for (int e = 0; e < 4; ++e) {
    auto edge = restrict_to_edge(p, xs[e], ys[e], xs[(e + 1) % 4], ys[(e + 1) % 4], 1, 0);
    QPoly g = gcd(edge.re, edge.im);
    if (g.degree() >= 1 && isolate_real_roots(g, 0, 1).count() > 0) return std::nullopt;
  }

  for (int k = 0; k < 8; ++k) {
    std::vector<ComplexQPoly> edges;
    bool degenerate = false;
    for (int e = 0; e < 4; ++e) {
      edges.push_back(restrict_to_edge(p, xs[e], ys[e], xs[(e + 1) % 4], ys[(e + 1) % 4], 1, k));
      if (edges.back().re.is_zero() || edges.back().im.is_zero()) degenerate = true;
    }
    if (degenerate) continue;
    std::vector<int> quads;
    for (const auto& edge : edges) {
      auto iso = isolate_real_roots(edge.re * edge.im, 0, 1);
      std::vector<Rational> samples;
      if (iso.interior.empty()) {
        samples.push_back(Rational(1, 2));
      } else {
        samples.push_back(iso.interior.front().first);
        for (const auto& iv : iso.interior) samples.push_back(iv.second);
      }
      for (const auto& s : samples) quads.push_back(quadrant(edge.re(s), edge.im(s)));
    }
    int quarter_turns = 0;
    for (std::size_t i = 0; i < quads.size(); ++i) {
      int d = ((quads[(i + 1) % quads.size()] - quads[i]) % 4 + 4) % 4;
      if (d == 1) ++quarter_turns;
      else if (d == 3) --quarter_turns;
      else if (d == 2) throw std::logic_error("count_roots_in_box: opposite quadrant jump");
    }
    return quarter_turns / 4;
  }
  throw std::logic_error("count_roots_in_box: no admissible rotation");
}

Integer content(const std::vector<Integer>& c) {
  Integer g = 0;
  for (const auto& v : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  return g;
}

std::vector<Integer> primitive_integer(const QPoly& a) {
  Integer den = 1;
  for (const auto& c : a.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  for (const auto& c : a.coeffs()) out.emplace_back(Integer(c * den));
  Integer g = content(out);
  if (sgn(g) != 0) {
    if (sgn(out.back()) < 0) g = -g;
    for (auto& v : out) v /= g;
  }
  return out;
}

QPoly from_integer(const std::vector<Integer>& c) {
  std::vector<Rational> v;
  v.reserve(c.size());
  for (const auto& x : c) v.emplace_back(x);
  return QPoly(std::move(v));
}

}  // namespace rittlab
