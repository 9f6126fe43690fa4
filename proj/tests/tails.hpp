#pragma once

// Empirical remainders of the truncated series, summed directly in MPFR
// far past the truncation point, for comparison with the stated bounds.

#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <optional>

#include "zetaburst/afe.hpp"
#include "zetaburst/incgamma.hpp"

namespace tails {

constexpr mpfr_prec_t kPrec = 768;

struct Check {
  double empirical = 0.0;  // log2 of the summed tail
  double bound = 0.0;      // log2 of the bound
  bool applicable = true;
  bool ok() const { return !applicable || empirical <= bound; }
};

struct F {
  F() {
    mpfr_init2(v, kPrec);
    mpfr_set_ui(v, 0, MPFR_RNDN);
  }
  ~F() { mpfr_clear(v); }
  F(const F&) = delete;
  F& operator=(const F&) = delete;
  mpfr_t v;
};

inline double log2_of(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return -1e300;
  long e = 0;
  double m = mpfr_get_d_2exp(&e, x, MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

inline double log2_of(const zetaburst::Mag& m) {
  if (!m.is_finite()) return 1e300;
  if (m.is_zero()) return -1e300;
  return log2_of(m.get());
}

inline void set_q(mpfr_ptr x, const zetaburst::Rational& q) {
  mpfr_set_q(x, q.value().get_mpq_t(), MPFR_RNDN);
}

/// x must be exactly representable in binary.
inline zetaburst::BigFloat exact(const zetaburst::Rational& x) {
  zetaburst::BigFloat b(256);
  set_q(b.get(), x);
  return b;
}

// Adds terms until they fall far below the running sum.
inline bool negligible(mpfr_srcptr term, mpfr_srcptr sum) {
  return !mpfr_zero_p(sum) && log2_of(term) < log2_of(sum) - 120.0;
}

/// sum_{n>=N} x^n / (a+1)_n against hyp_tail_bound.
inline Check hyp(const zetaburst::Rational& a, const zetaburst::Rational& x, std::int64_t N) {
  Check c;
  c.bound = log2_of(zetaburst::hyp_tail_bound(a, exact(x), N));
  if (c.bound > 1e299) {
    c.applicable = false;
    return c;
  }
  F t, s, xf, af, d;
  set_q(xf.v, x);
  set_q(af.v, a);
  mpfr_set_ui(t.v, 1, MPFR_RNDN);
  for (std::int64_t n = 0; n < N + 100000; ++n) {
    if (n >= N) {
      mpfr_add(s.v, s.v, t.v, MPFR_RNDN);
      if (n > N + 4 && negligible(t.v, s.v)) break;
    }
    mpfr_add_si(d.v, af.v, static_cast<long>(n + 1), MPFR_RNDN);
    mpfr_mul(t.v, t.v, xf.v, MPFR_RNDN);
    mpfr_div(t.v, t.v, d.v, MPFR_RNDN);
  }
  c.empirical = log2_of(s.v);
  return c;
}

/// Relative remainder of the asymptotic series
///   Gamma(a, x) x^(1-a) e^x - sum_{k<N} (1-a)_k / (-x)^k
/// against asymp_tail_bound, with Gamma(a, x) from mpfr_gamma_inc.
inline Check asymp(const zetaburst::Rational& a, const zetaburst::Rational& x, std::int64_t N) {
  Check c;
  zetaburst::Mag b = zetaburst::asymp_tail_bound(a, exact(x), N);
  c.bound = log2_of(b);
  if (c.bound > 1e299) {
    c.applicable = false;
    return c;
  }
  // (1-a)_N = 0: the series terminates, so only rounding noise remains.
  if (b.is_zero()) c.bound = 64.0 - static_cast<double>(kPrec);
  F g, xf, af, t, s, f;
  set_q(xf.v, x);
  set_q(af.v, a);
  mpfr_gamma_inc(g.v, af.v, xf.v, MPFR_RNDN);
  // g * x^(1-a) * e^x
  mpfr_ui_sub(f.v, 1, af.v, MPFR_RNDN);
  mpfr_pow(f.v, xf.v, f.v, MPFR_RNDN);
  mpfr_mul(g.v, g.v, f.v, MPFR_RNDN);
  mpfr_exp(f.v, xf.v, MPFR_RNDN);
  mpfr_mul(g.v, g.v, f.v, MPFR_RNDN);
  mpfr_set_ui(t.v, 1, MPFR_RNDN);
  for (std::int64_t k = 0; k < N; ++k) {
    mpfr_add(s.v, s.v, t.v, MPFR_RNDN);
    // t *= (1 - a + k) / (-x)
    mpfr_ui_sub(f.v, 1, af.v, MPFR_RNDN);
    mpfr_add_si(f.v, f.v, static_cast<long>(k), MPFR_RNDN);
    mpfr_mul(t.v, t.v, f.v, MPFR_RNDN);
    mpfr_div(t.v, t.v, xf.v, MPFR_RNDN);
    mpfr_neg(t.v, t.v, MPFR_RNDN);
  }
  mpfr_sub(g.v, g.v, s.v, MPFR_RNDN);
  c.empirical = log2_of(g.v);
  return c;
}

/// sum_{j>=J} t_j / t_0 with t_j = (-x)^(n+1+j) / ((n+1+j)! (j+1)).
inline Check singular(long n, const zetaburst::Rational& x, std::int64_t J) {
  Check c;
  c.bound = log2_of(zetaburst::singular_tail_bound(n, exact(x), J));
  if (c.bound > 1e299) {
    c.applicable = false;
    return c;
  }
  F r, s, xf;
  set_q(xf.v, x);
  mpfr_set_ui(r.v, 1, MPFR_RNDN);
  for (std::int64_t j = 0; j < J + 100000; ++j) {
    if (j >= J) {
      mpfr_add(s.v, s.v, r.v, MPFR_RNDN);
      if (j > J + 4 && negligible(r.v, s.v)) break;
    }
    mpfr_mul(r.v, r.v, xf.v, MPFR_RNDN);
    mpfr_mul_si(r.v, r.v, -static_cast<long>(j + 1), MPFR_RNDN);
    mpfr_div_si(r.v, r.v, static_cast<long>((n + 2 + j) * (j + 2)), MPFR_RNDN);
  }
  c.empirical = log2_of(s.v);
  return c;
}

/// sum_{k>=N} |c_k| |x|^k for the Taylor expansion of Gamma(a, u + t),
/// where z y'' + (z - a + 1) y' = 0 gives
///   u (k+2)(k+1) c_{k+2} = -(k+1)(k + u - a + 1) c_{k+1} - k c_k.
inline Check taylor(const zetaburst::Rational& a, const zetaburst::Rational& u,
                    const zetaburst::Rational& x, const zetaburst::Rational& R, std::int64_t N) {
  Check c;
  c.bound = log2_of(zetaburst::taylor_tail_bound(a, exact(u), exact(x), exact(R), N));
  if (c.bound > 1e299) {
    c.applicable = false;
    return c;
  }
  F uf, xf, af, c0, c1, c2, p, s, term, f, g;
  set_q(uf.v, u);
  set_q(af.v, a);
  set_q(xf.v, x);
  mpfr_abs(xf.v, xf.v, MPFR_RNDN);
  mpfr_set_ui(c0.v, 0, MPFR_RNDN);  // only k >= 1 matters here
  // c_1 = -u^(a-1) e^-u
  mpfr_sub_ui(f.v, af.v, 1, MPFR_RNDN);
  mpfr_pow(c1.v, uf.v, f.v, MPFR_RNDN);
  mpfr_neg(f.v, uf.v, MPFR_RNDN);
  mpfr_exp(f.v, f.v, MPFR_RNDN);
  mpfr_mul(c1.v, c1.v, f.v, MPFR_RNDN);
  mpfr_neg(c1.v, c1.v, MPFR_RNDN);
  mpfr_set(p.v, xf.v, MPFR_RNDN);  // |x|^k
  for (std::int64_t k = 1; k < N + 200000; ++k) {
    if (k >= N) {
      mpfr_mul(term.v, c1.v, p.v, MPFR_RNDN);
      mpfr_abs(term.v, term.v, MPFR_RNDN);
      mpfr_add(s.v, s.v, term.v, MPFR_RNDN);
      if (k > N + 8 && negligible(term.v, s.v)) break;
    }
    // c_{k+1} from c_k and c_{k-1}
    const long km = static_cast<long>(k - 1);
    mpfr_add_si(f.v, uf.v, km + 1, MPFR_RNDN);
    mpfr_sub(f.v, f.v, af.v, MPFR_RNDN);
    mpfr_mul_si(f.v, f.v, km + 1, MPFR_RNDN);
    mpfr_mul(f.v, f.v, c1.v, MPFR_RNDN);
    mpfr_mul_si(g.v, c0.v, km, MPFR_RNDN);
    mpfr_add(f.v, f.v, g.v, MPFR_RNDN);
    mpfr_mul_si(g.v, uf.v, (km + 2) * (km + 1), MPFR_RNDN);
    mpfr_div(c2.v, f.v, g.v, MPFR_RNDN);
    mpfr_neg(c2.v, c2.v, MPFR_RNDN);
    mpfr_swap(c0.v, c1.v);
    mpfr_swap(c1.v, c2.v);
    mpfr_mul(p.v, p.v, xf.v, MPFR_RNDN);
  }
  c.empirical = log2_of(s.v);
  return c;
}

/// sum_{n>=N} n^e Gamma(a, D n^2) for one AFE series, D = pi alpha / q
/// (series 1, e = -s, a = (s+delta)/2) or pi / (alpha q) (series 2,
/// e = s - 1, a = (1-s+delta)/2), against tail_bound.
inline Check afe(int series, const zetaburst::Rational& s, int delta, std::uint64_t q,
                 const zetaburst::Rational& alpha, std::int64_t N) {
  using zetaburst::Rational;
  Check c;
  std::optional<zetaburst::Mag> b = zetaburst::tail_bound(series, s, delta, q, alpha, N);
  if (!b) {
    c.applicable = false;
    return c;
  }
  c.bound = log2_of(*b);
  const Rational a = series == 1 ? (s + Rational(delta)) / Rational(2)
                                 : (Rational(1) - s + Rational(delta)) / Rational(2);
  const Rational e = series == 1 ? -s : s - Rational(1);
  F af, ef, D, sum, x, g, nf, f;
  set_q(af.v, a);
  set_q(ef.v, e);
  mpfr_const_pi(D.v, MPFR_RNDN);
  const Rational scale = series == 1 ? alpha / Rational(static_cast<long>(q))
                                     : Rational(1) / (alpha * Rational(static_cast<long>(q)));
  set_q(f.v, scale);
  mpfr_mul(D.v, D.v, f.v, MPFR_RNDN);
  for (std::int64_t n = N; n < N + 100000; ++n) {
    mpfr_set_si(nf.v, static_cast<long>(n), MPFR_RNDN);
    mpfr_sqr(x.v, nf.v, MPFR_RNDN);
    mpfr_mul(x.v, x.v, D.v, MPFR_RNDN);
    mpfr_gamma_inc(g.v, af.v, x.v, MPFR_RNDN);
    mpfr_pow(f.v, nf.v, ef.v, MPFR_RNDN);
    mpfr_mul(g.v, g.v, f.v, MPFR_RNDN);
    mpfr_add(sum.v, sum.v, g.v, MPFR_RNDN);
    if (negligible(g.v, sum.v)) break;
  }
  c.empirical = log2_of(sum.v);
  return c;
}

}  // namespace tails
