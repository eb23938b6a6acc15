#include "rittlab/factor_q.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>

#include "rittlab/error.hpp"

namespace rittlab {
namespace {

using u64 = std::uint64_t;
using ZpPoly = std::vector<u64>;

struct Zp {
  u64 p;

  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return (a * b) % p; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }

  u64 from(const Integer& z) const {
    Integer r = z % Integer(static_cast<unsigned long>(p));
    if (sgn(r) < 0) r += static_cast<unsigned long>(p);
    return r.get_ui();
  }

  static void trim(ZpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  ZpPoly reduce(const std::vector<Integer>& c) const {
    ZpPoly r;
    for (const auto& v : c) r.push_back(from(v));
    trim(r);
    return r;
  }

  ZpPoly sub(const ZpPoly& a, const ZpPoly& b) const {
    ZpPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
    trim(r);
    return r;
  }

  ZpPoly mul(const ZpPoly& a, const ZpPoly& b) const {
    if (a.empty() || b.empty()) return {};
    ZpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
  }

  // Returns remainder, stores quotient in q when given.
  ZpPoly divmod(ZpPoly a, const ZpPoly& b, ZpPoly* q = nullptr) const {
    if (b.empty()) throw std::logic_error("Zp division by zero");
    u64 li = inv(b.back());
    std::size_t db = b.size() - 1;
    if (q) q->assign(a.size() >= b.size() ? a.size() - db : 0, 0);
    for (std::size_t i = a.size(); i-- > db;) {
      if (!a[i]) continue;
      u64 f = mul(a[i], li);
      if (q) (*q)[i - db] = f;
      for (std::size_t j = 0; j <= db; ++j) a[i - db + j] = sub(a[i - db + j], mul(f, b[j]));
    }
    a.resize(std::min(a.size(), db));
    trim(a);
    if (q) trim(*q);
    return a;
  }

  ZpPoly monic(ZpPoly a) const {
    if (a.empty()) return a;
    u64 li = inv(a.back());
    for (auto& c : a) c = mul(c, li);
    return a;
  }

  ZpPoly gcd(ZpPoly a, ZpPoly b) const {
    while (!b.empty()) {
      ZpPoly r = divmod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  // Inverse of a modulo m (assumes coprime).
  ZpPoly invmod(const ZpPoly& a, const ZpPoly& m) const {
    ZpPoly r0 = m, r1 = divmod(a, m);
    ZpPoly s0, s1{1};
    while (!r1.empty()) {
      ZpPoly q;
      ZpPoly r2 = divmod(r0, r1, &q);
      ZpPoly s2 = sub(s0, mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r2);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r0.size() != 1) throw std::logic_error("Zp invmod: not coprime");
    u64 c = inv(r0[0]);
    for (auto& v : s0) v = mul(v, c);
    return divmod(s0, m);
  }

  ZpPoly derivative(const ZpPoly& a) const {
    ZpPoly d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mul(a[i], i % p));
    trim(d);
    return d;
  }

  ZpPoly powmod(ZpPoly base, const Integer& e, const ZpPoly& m) const {
    ZpPoly r{1};
    base = divmod(base, m);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      r = divmod(mul(r, r), m);
      if (mpz_tstbit(e.get_mpz_t(), i)) r = divmod(mul(r, base), m);
    }
    return r;
  }
};

// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<ZpPoly, int>> distinct_degree(const Zp& F, ZpPoly f) {
  std::vector<std::pair<ZpPoly, int>> out;
  ZpPoly x{0, 1};
  ZpPoly h = x;
  for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
    h = F.powmod(h, Integer(static_cast<unsigned long>(F.p)), f);
    ZpPoly g = F.gcd(f, F.sub(h, x));
    if (g.size() > 1) {
      out.emplace_back(g, d);
      ZpPoly q;
      F.divmod(f, g, &q);
      f = q;
      h = F.divmod(h, f);
    }
  }
  if (f.size() > 1) out.emplace_back(f, static_cast<int>(f.size()) - 1);
  return out;
}

void equal_degree(const Zp& F, const ZpPoly& g, int d, std::mt19937_64& rng, std::vector<ZpPoly>& out) {
  int n = static_cast<int>(g.size()) - 1;
  if (n == d) {
    out.push_back(g);
    return;
  }
  Integer pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), F.p, d);
  Integer e = (pd - 1) / 2;
  std::uniform_int_distribution<u64> dist(0, F.p - 1);
  while (true) {
    ZpPoly a(n);
    for (auto& c : a) c = dist(rng);
    Zp::trim(a);
    if (a.size() < 2) continue;
    ZpPoly b = F.sub(F.powmod(a, e, g), ZpPoly{1});
    ZpPoly c = F.gcd(g, b);
    if (c.size() > 1 && c.size() < g.size()) {
      ZpPoly q;
      F.divmod(g, c, &q);
      equal_degree(F, c, d, rng, out);
      equal_degree(F, F.monic(q), d, rng, out);
      return;
    }
  }
}

std::vector<ZpPoly> factor_mod_p(const Zp& F, const ZpPoly& f) {
  std::mt19937_64 rng(0x5eed + F.p);
  std::vector<ZpPoly> out;
  for (const auto& [g, d] : distinct_degree(F, f)) equal_degree(F, g, d, rng, out);
  return out;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using ZPoly = std::vector<Integer>;

void ztrim(ZPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ztrim(r);
  return r;
}

void zmod(ZPoly& a, const Integer& m) {
  for (auto& c : a) {
    c %= m;
    if (sgn(c) < 0) c += m;
  }
  ztrim(a);
}

void zsymmetric(ZPoly& a, const Integer& m) {
  Integer half = m / 2;
  for (auto& c : a) {
    c %= m;
    if (sgn(c) < 0) c += m;
    if (c > half) c -= m;
  }
  ztrim(a);
}

// Multifactor linear Hensel lifting: on return F == lc * prod(f) mod p^k.
std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<ZpPoly>& local, const Zp& F, int k) {
  std::size_t r = local.size();
  std::vector<ZpPoly> cof(r);
  for (std::size_t i = 0; i < r; ++i) {
    ZpPoly others{1};
    for (std::size_t j = 0; j < r; ++j)
      if (j != i) others = F.mul(others, local[j]);
    cof[i] = F.invmod(others, local[i]);
  }
  std::vector<ZPoly> lifted(r);
  for (std::size_t i = 0; i < r; ++i)
    for (u64 c : local[i]) lifted[i].emplace_back(static_cast<unsigned long>(c));
  Integer lc = f.back();
  u64 lc_inv = F.inv(F.from(lc));
  Integer pj = static_cast<unsigned long>(F.p);
  for (int j = 1; j < k; ++j) {
    Integer pj1 = pj * static_cast<unsigned long>(F.p);
    ZPoly prod{lc};
    for (const auto& g : lifted) {
      prod = zmul(prod, g);
      zmod(prod, pj1);
    }
    ZPoly e = f;
    e.resize(std::max(e.size(), prod.size()), Integer(0));
    for (std::size_t i = 0; i < prod.size(); ++i) e[i] -= prod[i];
    zmod(e, pj1);
    ZpPoly ep;
    for (auto& c : e) {
      Integer q = c / pj;
      ep.push_back(F.mul(F.from(q), lc_inv));
    }
    Zp::trim(ep);
    if (!ep.empty()) {
      for (std::size_t i = 0; i < r; ++i) {
        ZpPoly delta = F.divmod(F.mul(cof[i], ep), local[i]);
        lifted[i].resize(std::max(lifted[i].size(), delta.size()), Integer(0));
        for (std::size_t t = 0; t < delta.size(); ++t) lifted[i][t] += pj * static_cast<unsigned long>(delta[t]);
      }
    }
    pj = pj1;
  }
  return lifted;
}

bool zdivides(const ZPoly& g, const ZPoly& f, ZPoly* quotient) {
  auto [q, r] = divmod(from_integer(f), from_integer(g));
  if (!r.is_zero()) return false;
  for (const auto& c : q.coeffs())
    if (c.get_den() != 1) return false;
  if (quotient) {
    quotient->clear();
    for (const auto& c : q.coeffs()) quotient->push_back(c.get_num());
  }
  return true;
}

void combinations(std::size_t n, std::size_t k, std::vector<std::size_t>& cur, std::size_t start,
                  const std::function<bool(const std::vector<std::size_t>&)>& visit, bool& stop) {
  if (stop) return;
  if (cur.size() == k) {
    stop = visit(cur);
    return;
  }
  for (std::size_t i = start; i < n && !stop; ++i) {
    cur.push_back(i);
    combinations(n, k, cur, i + 1, visit, stop);
    cur.pop_back();
  }
}

// Irreducible factors over Z of a primitive squarefree polynomial with
// positive leading coefficient and nonzero constant term.
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
  int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {f};

  // Prime selection: fewest modular factors among a handful of good primes.
  Zp best{0};
  std::vector<ZpPoly> best_local;
  int good = 0;
  for (u64 p = 3; good < 6 && p < 100000; p += 2) {
    if (!is_prime(p)) continue;
    Zp F{p};
    if (F.from(f.back()) == 0) continue;
    ZpPoly fp = F.reduce(f);
    if (F.gcd(fp, F.derivative(fp)).size() != 1) continue;
    ++good;
    auto local = factor_mod_p(F, F.monic(fp));
    if (best.p == 0 || local.size() < best_local.size()) {
      best = F;
      best_local = std::move(local);
    }
    if (best_local.size() == 1) break;
  }
  if (best.p == 0) throw std::logic_error("zassenhaus: no suitable prime");
  if (best_local.size() == 1) return {f};

  // Coefficient bound for factors, times the leading coefficient.
  Integer maxc = 0;
  for (const auto& c : f) maxc = std::max(maxc, Integer(abs(c)));
  Integer bound = abs(f.back()) * maxc * (n + 1);
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n);
  bound = 2 * bound + 1;
  int k = 1;
  Integer mod = static_cast<unsigned long>(best.p);
  while (mod <= bound) {
    mod *= static_cast<unsigned long>(best.p);
    ++k;
  }
  auto lifted = hensel_lift(f, best_local, best, k);

  std::vector<ZPoly> found;
  std::vector<std::size_t> remaining(lifted.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  ZPoly cur = f;
  std::size_t s = 1;
  while (2 * s <= remaining.size()) {
    bool hit = false;
    std::vector<std::size_t> pick;
    std::vector<std::size_t> chosen;
    combinations(remaining.size(), s, pick, 0,
                 [&](const std::vector<std::size_t>& sub) {
                   ZPoly g{cur.back()};
                   for (auto idx : sub) {
                     g = zmul(g, lifted[remaining[idx]]);
                     zmod(g, mod);
                   }
                   zsymmetric(g, mod);
                   Integer c = content(g);
                   if (sgn(c) == 0) return false;
                   for (auto& v : g) v /= c;
                   if (sgn(g.back()) < 0)
                     for (auto& v : g) v = -v;
                   ZPoly q;
                   if (!zdivides(g, cur, &q)) return false;
                   found.push_back(g);
                   cur = q;
                   chosen = sub;
                   return true;
                 },
                 hit);
    if (hit) {
      std::vector<std::size_t> next;
      for (std::size_t i = 0; i < remaining.size(); ++i)
        if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) next.push_back(remaining[i]);
      remaining = std::move(next);
    } else {
      ++s;
    }
  }
  if (cur.size() > 1) {
    if (sgn(cur.back()) < 0)
      for (auto& v : cur) v = -v;
    found.push_back(cur);
  }
  return found;
}

}  // namespace

QFactorization factor_over_q(const QPoly& a) {
  if (a.is_zero()) throw Error(ErrorKind::InvalidArgument, "factorization of the zero polynomial");
  QFactorization out;
  out.scalar = a.lc();
  for (const auto& [part, mult] : squarefree_q(a)) {
    QPoly rest = part;
    if (sgn(rest[0]) == 0) {
      out.factors.emplace_back(QPoly::x(), mult);
      rest = divmod(rest, QPoly::x()).first;
    }
    if (rest.degree() < 1) continue;
    for (const auto& g : zassenhaus(primitive_integer(rest))) out.factors.emplace_back(monic(from_integer(g)), mult);
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& l, const auto& r) {
    if (l.first.degree() != r.first.degree()) return l.first.degree() < r.first.degree();
    return l.first.coeffs() < r.first.coeffs();
  });
  return out;
}

bool is_irreducible_over_q(const QPoly& a) {
  if (a.degree() < 1) return false;
  auto f = factor_over_q(a);
  return f.factors.size() == 1 && f.factors[0].second == 1;
}

}  // namespace rittlab
