#include "zetaburst/gamma.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "series_detail.hpp"
#include "zetaburst/errors.hpp"
#include "zetaburst/incgamma.hpp"

namespace zetaburst {

using detail::kLn2;
using detail::kLog2e;

namespace {

struct CacheEntry {
  mpfr_prec_t prec;
  Ball value;
};

std::mutex g_gamma_mutex;
std::map<Rational, CacheEntry> g_gamma_cache;

std::mutex g_euler_mutex;
CacheEntry g_euler{0, Ball()};

// Gamma(b) for b in [1, 2) with absolute (= relative) error about 2^-wp.
Ball gamma_reduced(const Rational& b, mpfr_prec_t wp) {
  const double bd = b.to_double();
  // Gamma(b, N) <= N^(b-1) e^-N / (1 - (b-1)/N) <= 2 N e^-N.
  double n = std::ceil((static_cast<double>(wp) + 8.0) * kLn2) + 2.0;
  while (std::log2(2.0 * n) - n * kLog2e > -static_cast<double>(wp) - 6.0) n += 1.0;
  const long N = static_cast<long>(n);
  BigFloat xn = BigFloat::from_si(N);

  const double lpre = bd * std::log2(n) - n * kLog2e - std::log2(bd);
  std::int64_t M = detail::choose_hyp_terms(b, xn, -static_cast<double>(wp) - 6.0 - lpre);
  Mag tail = hyp_tail_bound(b, xn, M);
  ScaledMatrix P = detail::hyp_product(b, detail::dyadic(xn), M);

  mpfr_prec_t p = wp + 16;
  Ball s = detail::ratio_ball(P.at(1, 0), P.den, p);
  s.add_error(tail);
  Ball xb(xn);
  Ball pref = mul(pow_rational(xb, b, p), exp(neg(xb), p), p);
  pref = div(pref, b, p);
  Ball lower = mul(pref, s, p);

  // Upper incomplete part: 0 <= Gamma(b, N) <= N^(b-1) e^-N / (1 - (b-1)/N).
  Ball up = mul(pow_rational(xb, b - Rational(1), 64), exp(neg(xb), 64), 64);
  Mag ub = up.upper_abs().div_lower(detail::lower_abs(mpq_class(1) - (b.value() - 1) / N));
  Mag half = ub.mul_2exp(-1);
  lower = add(lower, Ball(half.value()), p);
  lower.add_error(half);
  return lower;
}

Ball compute_gamma(const Rational& a, mpfr_prec_t prec) {
  if (a.is_integer()) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), a.num().get_ui() - 1);
    return Ball::from_z(f, prec + 2);
  }
  mpz_class fl = a.floor();
  Rational b = a - Rational(fl, mpz_class(1)) + Rational(1);
  long shift = fl.get_si() - 1;  // a = b + shift
  long steps = std::labs(shift);
  mpfr_prec_t wp = prec + 16 + static_cast<mpfr_prec_t>(std::log2(static_cast<double>(steps) + 1.0));

  Rational factor(1);
  if (shift > 0) {
    for (long k = 0; k < shift; ++k) factor *= b + Rational(k);
  } else {
    for (long k = shift; k < 0; ++k) factor *= b + Rational(k);
  }
  Ball g = gamma_reduced(b, wp);
  Ball out = shift >= 0 ? mul(g, factor, wp) : div(g, factor, wp);
  return round(out, prec + 2);
}

}  // namespace

Ball gamma_rational(const Rational& a, mpfr_prec_t prec) {
  if (a.is_nonpositive_integer()) throw DomainError("Gamma has a pole at a nonpositive integer");
  {
    std::lock_guard<std::mutex> lock(g_gamma_mutex);
    auto it = g_gamma_cache.find(a);
    if (it != g_gamma_cache.end() && it->second.prec >= prec) {
      return round(it->second.value, prec + 2);
    }
  }
  Ball g = compute_gamma(a, prec);
  std::lock_guard<std::mutex> lock(g_gamma_mutex);
  auto& slot = g_gamma_cache[a];
  if (slot.prec < prec) slot = CacheEntry{prec, g};
  return g;
}

Ball euler_gamma(mpfr_prec_t prec) {
  {
    std::lock_guard<std::mutex> lock(g_euler_mutex);
    if (g_euler.prec >= prec) return round(g_euler.value, prec + 2);
  }
  // gamma = U/V - log n - d with 0 < d < pi e^(-4n), where
  // V = sum (n^k/k!)^2 and U = sum (n^k/k!)^2 H_k.
  const mpfr_prec_t wp = prec + 24;
  const long n = static_cast<long>(std::ceil((static_cast<double>(wp) + 4.0) * kLn2 / 4.0)) + 1;
  const mpz_class n2 = mpz_class(n) * n;
  long K = static_cast<long>(std::ceil(4.9706 * static_cast<double>(n))) + 4;

  ScaledFactory fu = [&](std::int64_t k) {
    ScaledMatrix m;
    m.dim = 3;
    mpz_class k1(static_cast<long>(k + 1));
    m.at(0, 0) = n2 * k1;
    m.at(1, 0) = n2;
    m.at(1, 1) = n2 * k1;
    m.at(2, 1) = k1 * k1 * k1;
    m.at(2, 2) = m.at(2, 1);
    m.den = m.at(2, 1);
    return m;
  };
  ScaledFactory fv = [&](std::int64_t k) {
    ScaledMatrix m;
    m.dim = 2;
    mpz_class k1(static_cast<long>(k + 1));
    m.at(0, 0) = n2;
    m.at(1, 0) = k1 * k1;
    m.at(1, 1) = k1 * k1;
    m.den = k1 * k1;
    return m;
  };

  for (int attempt = 0; attempt < 8; ++attempt, K += n / 2) {
    ScaledMatrix pu = bsplit_scaled(fu, 0, K, detail::workers_for(K));
    ScaledMatrix pv = bsplit_scaled(fv, 0, K, detail::workers_for(K));
    // Tails from the K-th terms and the decay of the ratios.
    mpq_class rho = mpq_class(n2, mpz_class(K + 1) * (K + 1));
    mpq_class rho_u = rho * mpq_class(K + 2, K + 1);
    if (rho_u >= 1) continue;
    mpq_class bk(pv.at(0, 0), pv.den);
    mpq_class ak(pu.at(1, 0), pu.den);
    Mag tv = detail::mag_upper(bk / (1 - rho));
    Mag tu = detail::mag_upper(ak / (1 - rho_u));

    Ball U = detail::ratio_ball(pu.at(2, 0), pu.den, wp);
    U.add_error(tu);
    Ball V = detail::ratio_ball(pv.at(1, 0), pv.den, wp);
    V.add_error(tv);
    Ball g = sub(div(U, V, wp), log(Ball::from_si(n), wp), wp);
    // pi e^(-4n) < 4 e^(-4n)
    g.add_error(Mag::pow2(2 - static_cast<long>(std::floor(4.0 * static_cast<double>(n) * kLog2e))));
    if (g.rad().log2_ceil() > -static_cast<long>(prec) - 2) continue;
    std::lock_guard<std::mutex> lock(g_euler_mutex);
    if (g_euler.prec < prec) g_euler = CacheEntry{prec, g};
    return round(g, prec + 2);
  }
  throw ResourceError("euler_gamma: tolerance not reached");
}

}  // namespace zetaburst
