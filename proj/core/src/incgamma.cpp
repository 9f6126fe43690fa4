#include "zetaburst/incgamma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "series_detail.hpp"
#include "zetaburst/errors.hpp"
#include "zetaburst/gamma.hpp"

namespace zetaburst {

using detail::kLn2;
using detail::kLog2e;
using detail::log2_abs;

namespace {

constexpr long kGuard = 24;
constexpr mpfr_prec_t kBoundPrec = 64;
constexpr std::int64_t kTermCap = 50'000'000;

mpfr_prec_t work_prec(double top, long tol_exp) {
  double p = std::ceil(top - static_cast<double>(tol_exp)) + kGuard;
  if (!(p > 32.0)) return 32;
  if (p > 1e9) throw ResourceError("precision out of range");
  return static_cast<mpfr_prec_t>(p);
}

void record(KernelInfo* info, SeriesKind kind, std::int64_t terms, const Mag& tail,
            mpfr_prec_t prec) {
  if (info == nullptr) return;
  info->kind = kind;
  info->terms = terms;
  info->tail = tail;
  info->prec = prec;
}

// sup |t^(a-1) e^-t| for t in [lo, hi], lo > 0.
Mag integrand_sup(const Rational& a, const Ball& t) {
  Rational am1 = a - Rational(1);
  Ball lo(t.lower());
  Ball hi(t.upper());
  if (!lo.is_positive()) throw DomainError("incomplete gamma: argument ball reaches 0");
  Mag p = max(pow_rational(lo, am1, kBoundPrec).upper_abs(),
              pow_rational(hi, am1, kBoundPrec).upper_abs());
  return p * exp(neg(lo), kBoundPrec).upper_abs();
}

BigFloat truncate_bits(const BigFloat& z, long bits) {
  BigFloat t(bits);
  mpfr_set(t.get(), z.get(), MPFR_RNDZ);
  return t;
}

BigFloat exact_sub(const BigFloat& a, const BigFloat& b) {
  mpfr_prec_t p = std::max(a.prec(), b.prec()) + 2;
  long span = std::max(a.exponent(), b.exponent()) -
              std::min(a.exponent() - static_cast<long>(a.prec()),
                       b.exponent() - static_cast<long>(b.prec()));
  p = std::max<mpfr_prec_t>(p, span + 2);
  BigFloat d(p);
  if (mpfr_sub(d.get(), a.get(), b.get(), MPFR_RNDN) != 0) {
    throw PreconditionError("inexact subtraction of dyadic points");
  }
  return d;
}

}  // namespace

long estimate_log_incgamma(const Rational& a, const BigFloat& z) {
  double ad = a.to_double();
  double ln_z = log2_abs(z) * kLn2;
  double zd = z.to_double();
  double est = ad < zd ? (ad - 1.0) * ln_z - zd : ad * (std::log(std::fabs(ad) + 1e-300) - 1.0);
  return static_cast<long>(std::ceil(est * kLog2e));
}

// ------------------------------------------------------------ tail bounds

Mag hyp_tail_bound(const Rational& a, const BigFloat& x, std::int64_t N) {
  mpq_class xq = detail::exact_q(x);
  mpq_class d = a.value() + mpq_class(static_cast<long>(N) + 1);
  if (!(d > 0) || !(d > abs(xq))) return Mag::infinity();
  Mag t = Mag::from_double(1.0);
  Mag mx = detail::mag_upper(xq);
  for (std::int64_t k = 0; k < N; ++k) {
    mpq_class f = a.value() + mpq_class(static_cast<long>(k) + 1);
    t = (t * mx).div_lower(detail::lower_abs(f));
  }
  mpq_class one_minus_c = (d - abs(xq)) / d;
  return t.div_lower(detail::lower_abs(one_minus_c));
}

Mag asymp_tail_bound(const Rational& a, const BigFloat& x, std::int64_t N) {
  if (Rational(static_cast<long>(N)) < a - Rational(1)) return Mag::infinity();
  BigFloat xl = detail::lower_abs(detail::exact_q(x));
  Mag t = Mag::from_double(1.0);
  for (std::int64_t k = 0; k < N; ++k) {
    mpq_class f = mpq_class(1 + static_cast<long>(k)) - a.value();
    if (sgn(f) == 0) return Mag();
    t = (t * detail::mag_upper(f)).div_lower(xl);
  }
  return t;
}

Mag singular_tail_bound(long n, const BigFloat& x, std::int64_t J) {
  mpq_class xq = abs(detail::exact_q(x));
  mpq_class d(n + 2 + static_cast<long>(J));
  if (!(d > xq)) return Mag::infinity();
  Mag mx = detail::mag_upper(xq);
  Mag t = Mag::from_double(1.0);
  for (std::int64_t j = 0; j < J; ++j) {
    t = (t * mx).div_lower(detail::lower_abs(mpq_class(n + 2 + static_cast<long>(j))));
  }
  t = t.div_lower(BigFloat::from_si(static_cast<long>(J) + 1));
  return t.div_lower(detail::lower_abs((d - xq) / d));
}

Mag taylor_tail_bound(const Rational& a, const BigFloat& u, const BigFloat& x,
                      const BigFloat& R, std::int64_t N) {
  if (N < 1 || mpfr_cmpabs(x.get(), R.get()) >= 0 || cmp(R, u) >= 0) return Mag::infinity();
  Ball ub(u);
  Ball rb(R);
  Ball disk = Ball(u, Mag::abs_upper(R));
  Mag m = integrand_sup(a, disk);
  // |1 - C| from below, C = |x| / R.
  BigFloat gap(kBoundPrec);
  BigFloat ax(kBoundPrec);
  mpfr_abs(ax.get(), x.get(), MPFR_RNDU);
  mpfr_sub(gap.get(), R.get(), ax.get(), MPFR_RNDD);
  mpfr_div(gap.get(), gap.get(), R.get(), MPFR_RNDD);
  if (gap.sign() <= 0) return Mag::infinity();
  Mag c = Mag::abs_upper(x).div_lower(R);
  Mag b = Mag::abs_upper(R) * m * detail::mag_pow(c, N);
  b = b.div_lower(BigFloat::from_si(static_cast<long>(N)));
  return b.div_lower(gap);
}

// ---------------------------------------------------------------- kernels

Ball hyp_series_origin(const Rational& a, const BigFloat& x, long tol_exp, KernelInfo* info) {
  if (a.is_nonpositive_integer()) throw DomainError("hyp_series_origin: a is a pole of Gamma");
  if (x.sign() <= 0) throw PreconditionError("hyp_series_origin: x must be positive");
  const double ad = a.to_double();
  const double lx = log2_abs(x);
  const double lpre = ad * lx - x.to_double() * kLog2e - log2_abs(a);
  const double target = static_cast<double>(tol_exp) - 3.0 - lpre;

  std::int64_t N = detail::choose_hyp_terms(a, x, target);
  Mag tail = hyp_tail_bound(a, x, N);
  ScaledMatrix P = detail::hyp_product(a, detail::dyadic(x), N);
  double ls = N == 0 ? 0.0 : std::max(0.0, detail::log2_ratio(P.at(1, 0), P.den));
  double lg = std::lgamma(ad) * kLog2e;
  mpfr_prec_t wp = work_prec(std::max(lg, lpre + ls), tol_exp);

  Ball g = gamma_rational(a, work_prec(lg, tol_exp));
  Ball s = N == 0 ? Ball() : detail::ratio_ball(P.at(1, 0), P.den, wp);
  s.add_error(tail);
  Ball xb(x);
  Ball pref = mul(pow_rational(xb, a, wp), exp(neg(xb), wp), wp);
  pref = div(pref, a, wp);
  record(info, SeriesKind::hyp_at_origin, N, tail, wp);
  return sub(g, mul(pref, s, wp), wp);
}

std::optional<Ball> asymp_series(const Rational& a, const BigFloat& x, long tol_exp,
                                 KernelInfo* info) {
  if (x.sign() <= 0) throw PreconditionError("asymp_series: x must be positive");
  const double ad = a.to_double();
  const double xd = x.to_double();
  const double lx = log2_abs(x);
  const double lpre = (ad - 1.0) * lx - xd * kLog2e;
  double target = static_cast<double>(tol_exp) - 3.0 - lpre;
  const double nmin = std::max(1.0, std::ceil(ad - 1.0));

  std::int64_t N = -1;
  double lt = 0.0;
  for (std::int64_t n = 1; n < kTermCap; ++n) {
    Rational f = Rational(static_cast<long>(n)) - a;  // (1-a)_n / (1-a)_(n-1)
    if (f.is_zero()) {
      if (static_cast<double>(n) >= nmin) {
        N = n;
        break;
      }
      // Terminating series: every later bound vanishes.
      N = static_cast<std::int64_t>(nmin);
      break;
    }
    lt += log2_abs(f) - lx;
    if (static_cast<double>(n) >= nmin) {
      if (lt <= target) {
        Mag b = asymp_tail_bound(a, x, n);
        if (b.log2_ceil() <= std::ceil(target) + 1) {
          N = n;
          break;
        }
        target -= 2.0;
      }
      // From here on the terms grow.
      if (std::fabs(static_cast<double>(n) + 1.0 - ad) >= xd) return std::nullopt;
    }
  }
  if (N < 0) return std::nullopt;

  Mag tail = asymp_tail_bound(a, x, N);
  if (!tail.is_finite()) return std::nullopt;

  detail::Dyadic xd2 = detail::dyadic(x);
  const mpz_class r = a.num();
  const mpz_class s = a.den();
  mpz_class xden = s * xd2.man;
  mpz_class scale = 1;
  if (xd2.exp >= 0) {
    mpz_mul_2exp(xden.get_mpz_t(), xden.get_mpz_t(), static_cast<mp_bitcnt_t>(xd2.exp));
  } else {
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), static_cast<mp_bitcnt_t>(-xd2.exp));
  }
  ScaledFactory f = [&](std::int64_t n) {
    ScaledMatrix m;
    m.dim = 2;
    m.at(0, 0) = (r - s * mpz_class(static_cast<long>(n + 1))) * scale;
    m.at(1, 0) = xden;
    m.at(1, 1) = xden;
    m.den = xden;
    return m;
  };
  ScaledMatrix P = bsplit_scaled(f, 0, N, detail::workers_for(N));
  double ls = std::max(0.0, detail::log2_ratio(P.at(1, 0), P.den));
  mpfr_prec_t wp = work_prec(lpre + ls, tol_exp);
  Ball sum = detail::ratio_ball(P.at(1, 0), P.den, wp);
  sum.add_error(tail);
  Ball xb(x);
  Ball pref = mul(pow_rational(xb, a - Rational(1), wp), exp(neg(xb), wp), wp);
  record(info, SeriesKind::asymp_at_infinity, N, tail, wp);
  return mul(pref, sum, wp);
}

Ball singular_at_nonpositive_int(long n, const BigFloat& x, long tol_exp, KernelInfo* info) {
  if (n < 0) throw PreconditionError("singular_at_nonpositive_int: n must be >= 0");
  if (x.sign() <= 0) throw PreconditionError("singular_at_nonpositive_int: x must be positive");
  const double xd = x.to_double();
  const double lx = log2_abs(x);
  const double lfact1 = std::lgamma(static_cast<double>(n) + 2.0) * kLog2e;  // log2 (n+1)!
  double target = static_cast<double>(tol_exp) - 3.0 - (lx - lfact1);

  std::int64_t J = -1;
  double lt = 0.0;
  for (std::int64_t j = 0; j < kTermCap; ++j) {
    double d = static_cast<double>(n) + 2.0 + static_cast<double>(j);
    if (d > xd) {
      double est = lt - std::log2(static_cast<double>(j) + 1.0) - std::log2(1.0 - xd / d);
      if (est <= target) {
        Mag b = singular_tail_bound(n, x, j);
        if (b.log2_ceil() <= std::ceil(target) + 1) {
          J = j;
          break;
        }
        target -= 2.0;
      }
    }
    lt += lx - std::log2(d);
  }
  if (J < 0) throw ResourceError("singular series: term cap exceeded");
  Mag tail = singular_tail_bound(n, x, J);

  detail::Dyadic xdy = detail::dyadic(x);
  mpz_class xnum = -xdy.man;
  mpz_class scale = 1;
  if (xdy.exp >= 0) {
    mpz_mul_2exp(xnum.get_mpz_t(), xnum.get_mpz_t(), static_cast<mp_bitcnt_t>(xdy.exp));
  } else {
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), static_cast<mp_bitcnt_t>(-xdy.exp));
  }
  ScaledFactory f = [&](std::int64_t j) {
    ScaledMatrix m;
    m.dim = 2;
    long jl = static_cast<long>(j);
    mpz_class d = mpz_class(n + 2 + jl) * mpz_class(jl + 2) * scale;
    m.at(0, 0) = xnum * mpz_class(jl + 1);
    m.at(1, 0) = d;
    m.at(1, 1) = d;
    m.den = d;
    return m;
  };
  ScaledMatrix P = bsplit_scaled(f, 0, J, detail::workers_for(J));

  // F = sum_{k<n} (-x)^k / (k! (k-n)), exact.
  mpq_class xq = detail::exact_q(x);
  mpq_class F = 0;
  mpq_class pw = 1;  // (-x)^k / k!
  for (long k = 0; k < n; ++k) {
    F += pw / mpq_class(k - n);
    pw *= -xq / mpq_class(k + 1);
  }
  // pw is now (-x)^n / n!.
  mpq_class xn = 1;
  for (long k = 0; k < n; ++k) xn *= xq;
  mpq_class Fs = F / xn;
  mpq_class t0s = xq / mpq_class(n + 1);  // t_0 / x^n
  if (n % 2 == 0) t0s = -t0s;
  mpz_class nf;
  mpz_fac_ui(nf.get_mpz_t(), static_cast<unsigned long>(n));
  t0s /= mpq_class(nf);
  mpq_class H = 0;
  for (long k = 1; k <= n; ++k) H += mpq_class(1, k);

  double lsum = J == 0 ? 0.0 : std::max(0.0, detail::log2_ratio(P.at(1, 0), P.den));
  double lfact = std::lgamma(static_cast<double>(n) + 1.0) * kLog2e;
  double la = std::log2(std::fabs(lx * kLn2) + H.get_d() + 1.0) - lfact;
  double lf = sgn(Fs) == 0 ? -1e300 : log2_abs(Rational(Fs));
  double lt0 = log2_abs(Rational(t0s)) + lsum;
  mpfr_prec_t wp = work_prec(std::max({la, lf, lt0}), tol_exp);

  Ball psi = sub(Ball::from_rational(Rational(H), wp), euler_gamma(wp), wp);
  Ball A = sub(psi, log(Ball(x), wp), wp);
  A = div(A, Rational(nf, mpz_class(1)), wp);
  if (n % 2 == 1) A = neg(A);
  Ball S = J == 0 ? Ball() : detail::ratio_ball(P.at(1, 0), P.den, wp);
  S.add_error(tail);
  Ball rest = add(Ball::from_rational(Rational(Fs), wp), mul(S, Rational(t0s), wp), wp);
  record(info, SeriesKind::singular_at_origin, J, tail, wp);
  return sub(A, rest, wp);
}

Ball taylor_step(const Rational& a, const BigFloat& u, const Ball& y_u, const BigFloat& x,
                 long tol_exp, KernelInfo* info) {
  if (u.sign() <= 0) throw PreconditionError("taylor_step: u must be positive");
  if (x.is_zero()) return y_u;
  if (mpfr_cmpabs(x.get(), u.get()) >= 0) throw PreconditionError("taylor_step: |x| >= u");

  const double ad = a.to_double();
  const double ud = u.to_double();
  const double lax = log2_abs(x);
  const double target = static_cast<double>(tol_exp) - 3.0;

  // Pick the radius R from (u+|x|)/2, 1/2 of that, ... minimizing N.
  BigFloat R(kBoundPrec);
  {
    BigFloat ax(kBoundPrec);
    mpfr_abs(ax.get(), x.get(), MPFR_RNDN);
    mpfr_add(R.get(), u.get(), ax.get(), MPFR_RNDD);
    mpfr_div_2ui(R.get(), R.get(), 1, MPFR_RNDD);
    mpfr_prec_round(R.get(), 32, MPFR_RNDD);
  }
  std::int64_t best_n = std::numeric_limits<std::int64_t>::max();
  BigFloat best_r;
  for (int k = 0; k < 200 && mpfr_cmpabs(R.get(), x.get()) > 0; ++k) {
    double lr = log2_abs(R);
    double rd = R.to_double();
    double lm = std::max((ad - 1.0) * std::log2(ud - rd), (ad - 1.0) * std::log2(ud + rd)) -
                (ud - rd) * kLog2e;
    double lc = lax - lr;
    double a0 = lr + lm - std::log2(1.0 - std::exp2(lc));
    double n = std::max(1.0, std::ceil((target - a0) / lc));
    if (!std::isfinite(n) || n > 1e15) n = 1e15;
    auto ni = static_cast<std::int64_t>(n);
    if (ni < best_n) {
      best_n = ni;
      best_r = R;
    } else {
      break;
    }
    mpfr_div_2ui(R.get(), R.get(), 1, MPFR_RNDN);
  }
  if (best_n >= kTermCap) throw ResourceError("taylor step: term cap exceeded");
  std::int64_t N = best_n;
  Mag tail = taylor_tail_bound(a, u, x, best_r, N);
  double tb = static_cast<double>(tail.log2_ceil());
  while (tb > target + 1.0) {
    N += std::max<std::int64_t>(1, N / 16);
    if (N >= kTermCap) throw ResourceError("taylor step: term cap exceeded");
    tail = taylor_tail_bound(a, u, x, best_r, N);
    tb = static_cast<double>(tail.log2_ceil());
  }

  detail::Dyadic ud2 = detail::dyadic(u);
  detail::Dyadic xd2 = detail::dyadic(x);
  long k = std::max({0L, -ud2.exp, -xd2.exp});
  mpz_class U = ud2.man;
  mpz_class X = xd2.man;
  mpz_mul_2exp(U.get_mpz_t(), U.get_mpz_t(), static_cast<mp_bitcnt_t>(ud2.exp + k));
  mpz_mul_2exp(X.get_mpz_t(), X.get_mpz_t(), static_cast<mp_bitcnt_t>(xd2.exp + k));
  mpz_class two_k = 1;
  mpz_mul_2exp(two_k.get_mpz_t(), two_k.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  const mpz_class r = a.num();
  const mpz_class s = a.den();
  const mpz_class s2k = s * two_k;
  const mpz_class su_r2k = s * U - r * two_k;
  const mpz_class xu_s = X * U * s;
  const mpz_class us2k = U * s2k;
  ScaledFactory f = [&](std::int64_t n) {
    ScaledMatrix m;
    m.dim = 3;
    mpz_class n1(static_cast<long>(n + 1));
    mpz_class n2(static_cast<long>(n + 2));
    mpz_class d = us2k * n1 * n2;
    m.at(0, 1) = xu_s * n1 * n2;
    m.at(1, 0) = -X * mpz_class(static_cast<long>(n)) * s2k;
    m.at(1, 1) = -X * n1 * (s2k * n1 + su_r2k);
    m.at(2, 0) = d;
    m.at(2, 2) = d;
    m.den = d;
    return m;
  };
  ScaledMatrix P = bsplit_scaled(f, 0, N, detail::workers_for(N));

  Ball ub(u);
  double ly = y_u.mid().is_zero() ? -1e300 : log2_abs(y_u.mid());
  double lc1 = (ad - 1.0) * log2_abs(u) - ud * kLog2e;
  double lp0 = detail::log2_ratio(P.at(2, 0), P.den);
  double lp1 = detail::log2_ratio(P.at(2, 1), P.den);
  mpfr_prec_t wp = work_prec(std::max({ly + std::max(lp0, 0.0), lc1 + lp1, ly, lc1}), tol_exp);

  Ball c1 = neg(mul(pow_rational(ub, a - Rational(1), wp), exp(neg(ub), wp), wp));
  Ball y = mul(detail::ratio_ball(P.at(2, 0), P.den, wp), y_u, wp);
  y = add(y, mul(detail::ratio_ball(P.at(2, 1), P.den, wp), c1, wp), wp);
  y.add_error(tail);
  record(info, SeriesKind::taylor_at_point, N, tail, wp);
  return y;
}

// -------------------------------------------------------------- bit-burst

namespace {

Ball bitburst_once(const Rational& a, const Ball& z, long tol_exp, long extra,
                   BitBurstPath* path, Mag& propagated) {
  const double ad = a.to_double();
  BigFloat zm = z.mid();
  Mag rz = z.rad();

  // Round the midpoint to what the tolerance can resolve.
  double ld = (ad - 1.0) * log2_abs(zm) - zm.to_double() * kLog2e;
  long keep = zm.exponent() - (tol_exp - 6 - static_cast<long>(std::ceil(ld)));
  keep = std::max(keep, 32L);
  if (zm.significant_bits() > keep) {
    BigFloat t(keep);
    int tern = mpfr_set(t.get(), zm.get(), MPFR_RNDN);
    if (tern != 0) rz += Mag::ulp(t);
    zm = t;
  }
  propagated = rz.is_zero() ? Mag() : rz * integrand_sup(a, Ball(zm, rz));

  const long sb = zm.significant_bits();
  long steps = 1;
  for (long b = 32; b < sb; b *= 2) ++steps;
  const long ktol = tol_exp - extra - static_cast<long>(std::ceil(std::log2(static_cast<double>(steps) + 1.0)));

  if (path != nullptr) {
    path->target = zm;
    path->steps.clear();
  }

  long bits = std::min<long>(32, sb);
  BigFloat zk = truncate_bits(zm, std::max(bits, 2L));
  KernelInfo info;
  std::optional<Ball> y;
  {
    long p_rel = std::max(16L, estimate_log_incgamma(a, zk) - tol_exp);
    double xd = zk.to_double();
    double thr = std::max(8.0, static_cast<double>(p_rel) * kLn2 / std::max(1.0, std::log(xd)));
    if (xd > thr) y = asymp_series(a, zk, ktol, &info);
    if (!y) {
      if (a.is_nonpositive_integer()) {
        y = singular_at_nonpositive_int(-a.num().get_si(), zk, ktol, &info);
      } else {
        y = hyp_series_origin(a, zk, ktol, &info);
      }
    }
  }
  if (path != nullptr) path->steps.push_back({zk, bits, info});

  while (bits < sb) {
    bits = std::min(bits * 2, sb);
    BigFloat next = bits >= sb ? zm : truncate_bits(zm, bits);
    BigFloat step = exact_sub(next, zk);
    if (!step.is_zero()) {
      y = taylor_step(a, zk, *y, step, ktol, &info);
      if (path != nullptr) path->steps.push_back({next, bits, info});
    }
    zk = next;
  }
  Ball out = std::move(*y);
  out.add_error(propagated);
  return out;
}

}  // namespace

Ball incgamma_abs(const Rational& a, const Ball& z, long tol_exp, BitBurstPath* path) {
  if (!z.is_positive()) throw DomainError("incomplete gamma: z must be positive");
  const Mag tol = Mag::pow2(tol_exp);
  for (int attempt = 0; attempt < 4; ++attempt) {
    Mag propagated;
    Ball y = bitburst_once(a, z, tol_exp, 6 + 24L * attempt, path, propagated);
    if (y.rad() <= tol + propagated) return y;
  }
  throw ResourceError("incomplete gamma: tolerance not reached");
}

Ball incgamma_bitburst(const Rational& a, const Ball& z, long p, BitBurstPath* path) {
  return incgamma_abs(a, z, -p, path);
}

}  // namespace zetaburst
