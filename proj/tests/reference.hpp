#pragma once

// Reference values for the tests. Nothing here calls into the series code
// of the library; exact numbers come from classical recurrences and real
// values from MPFR at a much higher precision.

#include <gmpxx.h>
#include <mpfr.h>

#include <functional>
#include <random>
#include <vector>

#include "zetaburst/ball.hpp"
#include "zetaburst/rational.hpp"

namespace ref {

/// B_0..B_n by the Akiyama-Tanigawa algorithm, with B_1 = -1/2.
inline std::vector<mpq_class> bernoulli_akiyama_tanigawa(long n) {
  std::vector<mpq_class> out;
  std::vector<mpq_class> a(static_cast<std::size_t>(n) + 1);
  for (long m = 0; m <= n; ++m) {
    a[static_cast<std::size_t>(m)] = mpq_class(1, static_cast<unsigned long>(m + 1));
    for (long j = m; j >= 1; --j) {
      auto& aj = a[static_cast<std::size_t>(j - 1)];
      aj = mpq_class(j) * (aj - a[static_cast<std::size_t>(j)]);
      aj.canonicalize();
    }
    out.push_back(a[0]);
  }
  if (n >= 1) out[1] = mpq_class(-1, 2);
  return out;
}

/// E_0..E_n from sum_k C(n, 2k) E_2k = 0 (the sech expansion).
inline std::vector<mpz_class> euler_sech(long n) {
  std::vector<mpz_class> e(static_cast<std::size_t>(n) + 1, 0);
  e[0] = 1;
  for (long m = 2; m <= n; m += 2) {
    mpz_class acc = 0;
    mpz_class binom = 1;  // C(m, k)
    for (long k = 0; k < m; ++k) {
      if (k % 2 == 0) acc += binom * e[static_cast<std::size_t>(k)];
      binom = binom * (m - k) / (k + 1);
    }
    e[static_cast<std::size_t>(m)] = -acc;
  }
  return e;
}

/// A ball around an MPFR value computed at `prec` bits with directed
/// rounding error at most one ulp.
inline zetaburst::Ball mpfr_ball(mpfr_prec_t prec, const std::function<void(mpfr_ptr)>& fill) {
  zetaburst::BigFloat v(prec);
  fill(v.get());
  zetaburst::Mag r = zetaburst::Mag::ulp(v);
  return zetaburst::Ball(v, r);
}

inline zetaburst::Ball pi(mpfr_prec_t prec) {
  return mpfr_ball(prec, [](mpfr_ptr x) { mpfr_const_pi(x, MPFR_RNDN); });
}

inline zetaburst::Ball zeta(long num, long den, mpfr_prec_t prec) {
  return mpfr_ball(prec, [=](mpfr_ptr x) {
    mpfr_t s;
    mpfr_init2(s, prec + 64);
    mpfr_set_si(s, num, MPFR_RNDN);
    mpfr_div_si(s, s, den, MPFR_RNDN);
    mpfr_zeta(x, s, MPFR_RNDN);
    mpfr_clear(s);
  });
}

/// Gamma(a, z) from mpfr_gamma_inc; `a` and `z` must be exact in binary
/// at prec + 64 bits or the caller accepts the input rounding.
inline zetaburst::Ball gamma_inc(const zetaburst::Rational& a, const zetaburst::Rational& z,
                                 mpfr_prec_t prec) {
  return mpfr_ball(prec, [&](mpfr_ptr out) {
    mpfr_t av, zv;
    mpfr_init2(av, prec + 256);
    mpfr_init2(zv, prec + 256);
    mpfr_set_q(av, a.value().get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(zv, z.value().get_mpq_t(), MPFR_RNDN);
    mpfr_gamma_inc(out, av, zv, MPFR_RNDN);
    mpfr_clear(av);
    mpfr_clear(zv);
  });
}

/// |x - y| <= 2^e, evaluated on midpoints.
inline bool close_mid(const zetaburst::Ball& x, const zetaburst::Ball& y, long e) {
  zetaburst::BigFloat d(std::max(x.mid().prec(), y.mid().prec()) + 8);
  mpfr_sub(d.get(), x.mid().get(), y.mid().get(), MPFR_RNDN);
  if (d.is_zero()) return true;
  return mpfr_cmpabs(d.get(), zetaburst::Mag::pow2(e).get()) <= 0;
}

/// Random rational with denominator in [1, max_den] inside (lo, hi).
inline zetaburst::Rational random_rational(std::mt19937_64& rng, long lo, long hi, long max_den) {
  std::uniform_int_distribution<long> den_d(1, max_den);
  long d = den_d(rng);
  std::uniform_int_distribution<long> num_d(lo * d + 1, hi * d - 1);
  return zetaburst::Rational(num_d(rng), d);
}

}  // namespace ref
