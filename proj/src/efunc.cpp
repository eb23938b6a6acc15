#include "rittlab/efunc.hpp"

#include <mutex>
#include <shared_mutex>

#include "rittlab/error.hpp"

namespace rittlab {

namespace {

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// m (m-1) ... (m-j+1); zero when m < j.
Integer falling(std::size_t m, int j) {
  if (static_cast<long>(m) < j) return 0;
  Integer r = 1;
  for (int i = 0; i < j; ++i) r *= static_cast<unsigned long>(m - i);
  return r;
}

std::string derivative_name(const std::string& fn, int k) {
  if (k <= 3) return fn + std::string(k, '\'');
  return fn + "^(" + std::to_string(k) + ")";
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t p = row;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rational inv = 1 / a[row][col];
    for (auto& v : a[row]) v *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> a, std::size_t cols) {
  auto pivots = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Row of the guessing system at equation index m.
std::vector<Rational> guess_row(const std::vector<Rational>& c, std::size_t m, int r, int d) {
  std::vector<Rational> row(static_cast<std::size_t>((r + 1) * (d + 1)), 0);
  for (int k = 0; k <= r; ++k)
    for (int j = 0; j <= d; ++j) {
      if (static_cast<long>(m) < j) continue;
      row[k * (d + 1) + j] = falling(m, j) * c[m + k - j];
    }
  return row;
}

DiffOperator normalize_operator(const std::vector<Rational>& v, int r, int d) {
  Integer den = 1, num = 0;
  for (const auto& q : v) {
    if (q == 0) continue;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  }
  std::vector<Integer> ints;
  for (const auto& q : v) {
    Rational s = q * den;
    ints.push_back(s.get_num());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), s.get_num_mpz_t());
  }
  DiffOperator op;
  for (int k = 0; k <= r; ++k) {
    std::vector<Rational> co;
    for (int j = 0; j <= d; ++j) co.emplace_back(ints[k * (d + 1) + j] / num);
    op.emplace_back(std::move(co));
  }
  while (!op.empty() && op.back().is_zero()) op.pop_back();
  if (op.back().lc() < 0)
    for (auto& p : op) p = -p;
  return op;
}

}  // namespace

std::string operator_str(const DiffOperator& op, const std::string& fn) {
  std::string out;
  for (int k = static_cast<int>(op.size()) - 1; k >= 0; --k) {
    QPoly a = op[k];
    if (a.is_zero()) continue;
    bool neg = false;
    if (a.is_constant() && a.lc() < 0) {
      neg = true;
      a = -a;
    }
    std::string term;
    if (a == QPoly::constant(1))
      term = derivative_name(fn, k);
    else if (a.is_constant())
      term = a.str() + "*" + derivative_name(fn, k);
    else
      term = "(" + a.str() + ")*" + derivative_name(fn, k);
    if (out.empty())
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

std::vector<Rational> factorial_to_plain(const std::vector<Rational>& c) {
  std::vector<Rational> p;
  Integer f = 1;
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (n > 0) f *= static_cast<unsigned long>(n);
    p.emplace_back(c[n] / f);
  }
  return p;
}

std::vector<Rational> plain_to_factorial(const std::vector<Rational>& p) {
  std::vector<Rational> c;
  Integer f = 1;
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (n > 0) f *= static_cast<unsigned long>(n);
    c.emplace_back(p[n] * f);
  }
  return c;
}

struct HolonomicSeries::Cache {
  std::shared_mutex mutex;
  std::vector<Rational> c;
};

HolonomicSeries::HolonomicSeries(DiffOperator op, std::vector<Rational> initial)
    : op_(std::move(op)), initial_(std::move(initial)), cache_(std::make_shared<Cache>()) {
  if (op_.empty() || op_.back().is_zero())
    throw Error(ErrorKind::InvalidArgument, "operator needs a nonzero leading coefficient");
  bool any = false;
  for (int k = 0; k <= order(); ++k)
    for (int j = 0; j <= op_[k].degree(); ++j) {
      if (op_[k][j] == 0) continue;
      terms_.push_back(Term{k, j, op_[k][j]});
      if (!any || k - j > shift_) shift_ = k - j;
      any = true;
    }
  if (shift_ < 0) throw Error(ErrorKind::PreconditionViolated, "operator only admits the zero series");
  if (initial_.size() < static_cast<std::size_t>(shift_))
    throw Error(ErrorKind::InsufficientInitialData,
                "need " + std::to_string(shift_) + " initial coefficients, got " + std::to_string(initial_.size()));
  for (std::size_t m = 0; m + shift_ < initial_.size(); ++m)
    if (equation(m, initial_, false) != 0)
      throw Error(ErrorKind::InconsistentInitialData, "recurrence fails at index " + std::to_string(m + shift_));
  cache_->c = initial_;
}

Rational HolonomicSeries::equation(std::size_t m, const std::vector<Rational>& c, bool skip_leading) const {
  Rational s = 0;
  for (const auto& t : terms_) {
    if (skip_leading && t.k - t.j == shift_) continue;
    if (static_cast<long>(m) < t.j) continue;
    s += t.a * falling(m, t.j) * c[m + t.k - t.j];
  }
  return s;
}

Rational HolonomicSeries::leading(std::size_t m) const {
  Rational s = 0;
  for (const auto& t : terms_)
    if (t.k - t.j == shift_) s += t.a * falling(m, t.j);
  return s;
}

void HolonomicSeries::extend(std::vector<Rational>& c, std::size_t n) const {
  while (c.size() < n) {
    std::size_t m = c.size() - shift_;
    Rational lead = leading(m);
    Rational rest = equation(m, c, true);
    if (lead == 0) {
      if (rest != 0)
        throw Error(ErrorKind::InconsistentInitialData, "no series solution past index " + std::to_string(c.size()));
      throw Error(ErrorKind::LeadingSingularity,
                  "coefficient " + std::to_string(c.size()) + " is not determined by the recurrence");
    }
    c.push_back(-rest / lead);
  }
}

Rational HolonomicSeries::coeff(std::size_t n) const {
  {
    std::shared_lock lock(cache_->mutex);
    if (n < cache_->c.size()) return cache_->c[n];
  }
  std::unique_lock lock(cache_->mutex);
  extend(cache_->c, n + 1);
  return cache_->c[n];
}

std::vector<Rational> HolonomicSeries::coeffs(std::size_t n) const {
  if (n == 0) return {};
  coeff(n - 1);
  std::shared_lock lock(cache_->mutex);
  return std::vector<Rational>(cache_->c.begin(), cache_->c.begin() + n);
}

bool HolonomicSeries::verify(std::size_t n) const {
  auto c = coeffs(n + shift_);
  for (std::size_t m = 0; m < n; ++m)
    if (equation(m, c, false) != 0) return false;
  for (std::size_t i = 0; i < initial_.size() && i < c.size(); ++i)
    if (c[i] != initial_[i]) return false;
  return true;
}

Rational hs_coeff(const HolonomicSeries& s, std::size_t n) { return s.coeff(n); }

std::vector<Rational> egf_product(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::size_t n = std::min(a.size(), b.size());
  std::vector<Rational> r(n, 0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i <= k; ++i)
      if (a[i] != 0 && b[k - i] != 0) r[k] += binomial(k, i) * a[i] * b[k - i];
  return r;
}

std::vector<Rational> mth_root_series(const std::vector<Rational>& a, int m, std::size_t L) {
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "m must be at least 2");
  if (a.size() < L + 1) throw Error(ErrorKind::InvalidArgument, "need " + std::to_string(L + 1) + " coefficients");
  if (a[0] != 1) throw Error(ErrorKind::NonUnitConstantTerm, "f(0) = " + a[0].get_str());

  std::vector<Rational> u(a.begin(), a.begin() + L + 1);
  u[0] = 0;
  std::vector<Rational> pw(L + 1, 0), b1(L + 1, 0);
  pw[0] = 1;
  b1[0] = 1;
  Rational binom = 1, e(1, m);
  for (std::size_t k = 1; k <= L; ++k) {
    pw = egf_product(pw, u);
    binom *= (e - static_cast<long>(k - 1)) / Rational(static_cast<long>(k));
    for (std::size_t l = k; l <= L; ++l) b1[l] += binom * pw[l];
  }

  std::vector<Rational> b2(L + 1, 0);
  b2[0] = 1;
  for (std::size_t n = 0; n + 1 <= L; ++n) {
    Rational s = 0;
    for (std::size_t i = 0; i <= n; ++i) s += binomial(n, i) * a[i + 1] * b2[n - i];
    for (std::size_t i = 1; i <= n; ++i) s -= m * binomial(n, i) * a[i] * b2[n + 1 - i];
    b2[n + 1] = s / m;
  }

  for (std::size_t l = 0; l <= L; ++l)
    if (b1[l] != b2[l])
      throw Error(ErrorKind::CrossCheckMismatch,
                  "b_" + std::to_string(l) + ": " + b1[l].get_str() + " vs " + b2[l].get_str());
  return b1;
}

std::vector<Rational> mth_root_series(const HolonomicSeries& f, int m, std::size_t L) {
  return mth_root_series(f.coeffs(L + 1), m, L);
}

DenominatorProfile denominator_profile(const std::vector<Rational>& b, int m, const Integer& D) {
  DenominatorProfile r;
  r.scale = Integer(m) * m * D;
  Integer p = 1;
  for (std::size_t l = 0; l < b.size(); ++l) {
    if (l > 0) p *= r.scale;
    r.denominators.push_back(b[l].get_den());
    Rational v = b[l] * p;
    if (v.get_den() != 1 && r.passed) {
      r.passed = false;
      r.first_failure = l;
    }
  }
  return r;
}

std::size_t guess_length(int r, std::size_t window, std::size_t margin) { return window + margin + r; }

std::optional<DiffOperator> guess_operator(const std::vector<Rational>& c, int r, int d, std::size_t window,
                                           std::size_t margin) {
  if (r < 0 || d < 0) throw Error(ErrorKind::InvalidArgument, "negative order or degree");
  if (window < static_cast<std::size_t>((r + 1) * (d + 1)))
    throw Error(ErrorKind::InvalidArgument, "window smaller than the number of unknowns");
  if (c.size() < guess_length(r, window, margin))
    throw Error(ErrorKind::InvalidArgument, "need " + std::to_string(guess_length(r, window, margin)) + " coefficients");
  for (int rr = 0; rr <= r; ++rr)
    for (int dd = 0; dd <= d; ++dd) {
      std::size_t cols = static_cast<std::size_t>((rr + 1) * (dd + 1));
      std::vector<std::vector<Rational>> rows;
      for (std::size_t m = 0; m < window; ++m) rows.push_back(guess_row(c, m, rr, dd));
      for (const auto& v : nullspace(rows, cols)) {
        bool top = false;
        for (int j = 0; j <= dd; ++j) top = top || v[rr * (dd + 1) + j] != 0;
        if (!top) continue;
        bool ok = true;
        for (std::size_t m = window; ok && m < window + margin; ++m) {
          auto row = guess_row(c, m, rr, dd);
          Rational s = 0;
          for (std::size_t i = 0; i < cols; ++i) s += row[i] * v[i];
          ok = s == 0;
        }
        if (ok) return normalize_operator(v, rr, dd);
      }
    }
  return std::nullopt;
}

std::optional<DiffOperator> guess_operator(const HolonomicSeries& s, int r, int d, std::size_t window,
                                           std::size_t margin) {
  return guess_operator(s.coeffs(guess_length(r, window, margin)), r, d, window, margin);
}

LeibnizConstants leibniz_constants(int m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "m must be positive");
  LeibnizConstants out;
  out.m = m;
  for (int k : {m, m + 1}) {
    Integer kf = factorial(k);
    std::vector<int> t(m, 0);
    // Enumerate compositions of k into m nonnegative parts.
    auto rec = [&](auto&& self, int pos, int left) -> void {
      if (pos == m - 1) {
        t[pos] = left;
        Integer denom = 1;
        bool zero = false;
        int twos = 0, others = 0;
        for (int l : t) {
          denom *= factorial(l);
          if (l == 0) zero = true;
          if (l == 2) ++twos;
          if (l > 2) ++others;
        }
        Integer mult = kf / denom;
        (k == m ? out.tuples_m : out.tuples_m1)++;
        if (zero) return;
        if (k == m && twos == 0 && others == 0)
          out.c_mm += mult;
        else if (k == m + 1 && twos == 1 && others == 0)
          out.c_m1m += mult;
        else
          out.structure_ok = false;
        return;
      }
      for (int l = 0; l <= left; ++l) {
        t[pos] = l;
        self(self, pos + 1, left - l);
      }
    };
    rec(rec, 0, k);
  }
  return out;
}

std::vector<Rational> apply_operator_plain(const DiffOperator& L, const std::vector<Rational>& p, std::size_t N) {
  std::size_t r = L.empty() ? 0 : L.size() - 1;
  if (p.size() < N + r) throw Error(ErrorKind::InvalidArgument, "series too short for the operator");
  std::vector<Rational> out(N, 0);
  for (std::size_t k = 0; k < L.size(); ++k) {
    if (L[k].is_zero()) continue;
    std::vector<Rational> dk(N, 0);
    for (std::size_t n = 0; n < N; ++n) {
      Integer rise = 1;
      for (std::size_t i = 1; i <= k; ++i) rise *= static_cast<unsigned long>(n + i);
      dk[n] = rise * p[n + k];
    }
    for (int j = 0; j <= L[k].degree(); ++j) {
      if (L[k][j] == 0) continue;
      for (std::size_t n = j; n < N; ++n) out[n] += L[k][j] * dk[n - j];
    }
  }
  return out;
}

EntireQuotient entire_quotient_test(const DiffOperator& L, const std::vector<Rational>& g, std::size_t N,
                                    std::optional<std::size_t> cutoff) {
  EntireQuotient res;
  res.truncation = N;
  std::vector<Rational> p = factorial_to_plain(g);
  std::size_t v = 0;
  while (v < N && v < p.size() && p[v] == 0) ++v;
  if (v >= N) throw Error(ErrorKind::DivisionByZeroSeries, "g vanishes to the truncation order");
  std::vector<Rational> lg = apply_operator_plain(L, p, N);
  for (std::size_t n = 0; n < v; ++n)
    if (lg[n] != 0) {
      res.first_nonzero_tail = n;
      return res;
    }
  std::size_t len = N - v;
  res.cutoff = cutoff.value_or(N / 2);
  std::vector<Rational> q(len, 0);
  for (std::size_t n = 0; n < len; ++n) {
    Rational s = lg[n + v];
    for (std::size_t i = 1; i <= n; ++i) s -= p[v + i] * q[n - i];
    q[n] = s / p[v];
  }
  for (std::size_t n = res.cutoff + 1; n < len; ++n) {
    if (q[n] == 0) continue;
    if (!res.first_nonzero_tail) res.first_nonzero_tail = n;
    if (res.tail.size() < 8) res.tail.push_back(q[n]);
  }
  if (res.first_nonzero_tail) return res;
  std::vector<Rational> hc(q.begin(), q.begin() + std::min(len, res.cutoff + 1));
  res.h = QPoly(hc);
  for (std::size_t n = 0; n < N; ++n) {
    Rational s = 0;
    for (int j = 0; j <= res.h.degree() && static_cast<std::size_t>(j) <= n; ++j) s += res.h[j] * p[n - j];
    if (s != lg[n]) throw Error(ErrorKind::CertificationFailed, "L(g) != h g at order " + std::to_string(n));
  }
  res.polynomial = true;
  return res;
}

EntireQuotient entire_quotient_test(const DiffOperator& L, const HolonomicSeries& g, std::size_t N,
                                    std::optional<std::size_t> cutoff) {
  std::size_t r = L.empty() ? 0 : L.size() - 1;
  return entire_quotient_test(L, g.coeffs(N + r), N, cutoff);
}

}  // namespace rittlab
