#include "series_detail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "zetaburst/errors.hpp"
#include "zetaburst/incgamma.hpp"

namespace zetaburst::detail {

double log2_abs(const BigFloat& x) {
  if (x.is_zero()) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

double log2_abs(const mpz_class& x) {
  if (sgn(x) == 0) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

double log2_abs(const Rational& x) { return log2_abs(x.num()) - log2_abs(x.den()); }

double log2_ratio(const mpz_class& num, const mpz_class& den) {
  return log2_abs(num) - log2_abs(den);
}

Dyadic dyadic(const BigFloat& x) {
  Dyadic d;
  x.to_z_2exp(d.man, d.exp);
  return d;
}

mpq_class exact_q(const BigFloat& x) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x.get());
  return q;
}

Mag mag_upper(const mpq_class& q) {
  BigFloat b(Mag::kPrec);
  mpq_class a = abs(q);
  mpfr_set_q(b.get(), a.get_mpq_t(), MPFR_RNDU);
  return MagAccess::from_upper(std::move(b));
}

BigFloat lower_abs(const mpq_class& q) {
  BigFloat b(64);
  mpq_class a = abs(q);
  mpfr_set_q(b.get(), a.get_mpq_t(), MPFR_RNDD);
  return b;
}

Mag mag_pow(const Mag& m, std::int64_t n) {
  if (n == 0) return Mag::from_double(1.0);
  BigFloat b(Mag::kPrec);
  mpfr_pow_ui(b.get(), m.get(), static_cast<unsigned long>(n), MPFR_RNDU);
  return MagAccess::from_upper(std::move(b));
}

Ball ratio_ball(const mpz_class& num, const mpz_class& den, mpfr_prec_t prec) {
  return div(Ball::from_z(num, prec + 8), Ball::from_z(den, prec + 8), prec);
}

unsigned workers_for(std::int64_t terms) {
  if (terms < 4096) return 1;
  unsigned hw = std::thread::hardware_concurrency();
  return std::clamp(hw, 1U, 8U);
}

ScaledMatrix hyp_product(const Rational& a, const Dyadic& x, std::int64_t N) {
  const mpz_class r = a.num();
  const mpz_class s = a.den();
  mpz_class xnum = x.man * s;
  mpz_class scale = 1;
  if (x.exp >= 0) {
    mpz_mul_2exp(xnum.get_mpz_t(), xnum.get_mpz_t(), static_cast<mp_bitcnt_t>(x.exp));
  } else {
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), static_cast<mp_bitcnt_t>(-x.exp));
  }
  ScaledFactory f = [&](std::int64_t n) {
    ScaledMatrix m;
    m.dim = 2;
    mpz_class d = r + s * mpz_class(static_cast<long>(n + 1));
    m.at(0, 0) = xnum;
    m.at(1, 0) = d * scale;
    m.at(1, 1) = m.at(1, 0);
    m.den = m.at(1, 0);
    return m;
  };
  return bsplit_scaled(f, 0, N, workers_for(N));
}

std::int64_t choose_hyp_terms(const Rational& a, const BigFloat& x, double target) {
  constexpr std::int64_t kCap = 50'000'000;
  const double ad = a.to_double();
  const double xd = x.to_double();
  const double lx = log2_abs(x);
  double lt = 0.0;
  for (std::int64_t N = 0; N < kCap; ++N) {
    double d = ad + static_cast<double>(N) + 1.0;
    if (d > 0.0 && d > xd) {
      double est = lt - std::log2(1.0 - xd / d);
      if (est <= target) {
        Mag b = hyp_tail_bound(a, x, N);
        if (b.log2_ceil() <= std::ceil(target) + 1) return N;
        // The double estimate was a little optimistic.
        target -= 2.0;
      }
    }
    lt += lx - std::log2(std::fabs(d));
  }
  throw ResourceError("hypergeometric series: term cap exceeded");
}

}  // namespace zetaburst::detail
