#include "zetaburst/afe.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "series_detail.hpp"
#include "zetaburst/errors.hpp"
#include "zetaburst/incgamma.hpp"

namespace zetaburst {

using detail::kLog2e;

namespace {

constexpr mpfr_prec_t kBoundPrec = 64;
constexpr std::int64_t kMaxTerms = 10'000'000;

Rational gamma_param(int series, const Rational& s, int delta) {
  return series == 1 ? (s + Rational(delta)) / Rational(2)
                     : (Rational(1) - s + Rational(delta)) / Rational(2);
}

// pi alpha / q or pi / (alpha q).
Ball series_d(int series, std::uint64_t q, const Rational& alpha, mpfr_prec_t prec) {
  Rational f = series == 1 ? alpha / Rational(static_cast<long>(q))
                           : Rational(1) / (alpha * Rational(static_cast<long>(q)));
  return mul(const_pi(prec + 4), f, prec);
}

double log2_gamma(const Rational& a) { return std::lgamma(a.to_double()) * kLog2e; }

template <class Fn>
void parallel_for(std::size_t count, Fn fn) {
  unsigned workers = std::min<unsigned>(std::max(1U, std::thread::hardware_concurrency()),
                                        static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

ComplexBall zero_value() { return ComplexBall::real(Ball::from_si(0)); }

bool radius_ok(const ComplexBall& v, long prec) {
  BigFloat m(kBoundPrec);
  mpfr_hypot(m.get(), v.re.mid().get(), v.im.mid().get(), MPFR_RNDD);
  if (mpfr_cmp_ui(m.get(), 1) < 0) mpfr_set_ui(m.get(), 1, MPFR_RNDN);
  Mag allowed = Mag::pow2(-prec) * Mag::abs_upper(m);
  // abs_upper of a lower bound is only approximately an upper bound; a
  // quarter-ulp margin of a 64-bit value is irrelevant here.
  return v.re.rad() <= allowed && v.im.rad() <= allowed;
}

}  // namespace

const Ball& LValue::real() const {
  if (!is_real) throw PreconditionError("L-value is complex");
  return value.re;
}

std::optional<Mag> tail_bound(int series, const Rational& s, int delta, std::uint64_t q,
                              const Rational& alpha, std::int64_t N) {
  if (N < 1 || q < 1 || alpha.sign() <= 0) return std::nullopt;
  Rational C = gamma_param(series, s, delta);
  Ball D = series_d(series, q, alpha, kBoundPrec);
  Rational n2(static_cast<long>(N));
  n2 *= n2;
  Ball z = mul(D, n2, kBoundPrec);
  Ball one = Ball::from_si(1);
  Ball den = sub(one, exp(neg(D), kBoundPrec), kBoundPrec);
  Rational cm1 = C - Rational(1);
  if (cm1.sign() > 0) {
    Ball b0 = div(Ball::from_rational(cm1, kBoundPrec), z, kBoundPrec);
    Ball gap = sub(one, b0, kBoundPrec);
    if (!gap.is_positive()) return std::nullopt;
    den = mul(den, gap, kBoundPrec);
  }
  den = mul(den, pow_si(Ball::from_si(static_cast<long>(N)), 2 - delta, kBoundPrec), kBoundPrec);
  Ball num = mul(pow_rational(D, cm1, kBoundPrec), exp(neg(z), kBoundPrec), kBoundPrec);
  if (!den.is_positive()) return std::nullopt;
  return div(num, den, kBoundPrec).upper_abs();
}

AFEPlan choose_truncation(const LValueRequest& req) {
  const DirichletChar& chi = req.chi;
  if (!chi.is_primitive()) throw PreconditionError("choose_truncation: character must be primitive");
  const std::uint64_t q = chi.modulus();
  const int delta = chi.parity();
  const double sigma = req.s.to_double();
  AFEPlan plan;
  Rational a1 = gamma_param(1, req.s, delta);
  plan.sum_tol_exp = -req.prec - 4 + static_cast<long>(std::floor(log2_gamma(a1)));
  plan.symmetric = chi.is_real() && req.s == Rational(1, 2) && req.alpha == Rational(1);

  double max_mag = log2_gamma(a1);
  for (int i = 0; i < 2; ++i) {
    const int series = i + 1;
    SeriesPlan& sp = plan.series[i];
    sp.a = gamma_param(series, req.s, delta);
    sp.C = sp.a;
    sp.D = series_d(series, q, req.alpha, kBoundPrec);
    double pref = series == 1 ? 0.0
                              : (sigma - 0.5) * std::log2(M_PI / static_cast<double>(q));
    long target = plan.sum_tol_exp - 2 - static_cast<long>(std::ceil(pref));
    std::int64_t N = 1;
    for (;; ++N) {
      if (N > kMaxTerms) throw ResourceError("AFE truncation: term cap exceeded");
      auto b = tail_bound(series, req.s, delta, q, req.alpha, N);
      if (b && b->log2_ceil() <= target) {
        sp.tail = *b;
        break;
      }
    }
    sp.terms = N;
    long lnn = N > 1 ? static_cast<long>(std::ceil(std::log2(static_cast<double>(N)))) : 0;
    sp.tol_exp = plan.sum_tol_exp - 3 - lnn - static_cast<long>(std::ceil(pref));
    double e = series == 1 ? -sigma : sigma - 1.0;
    double dd = sp.D.mid().to_double();
    for (std::int64_t n = 1; n < N; ++n) {
      double nd = static_cast<double>(n);
      BigFloat z = BigFloat::from_double(dd * nd * nd);
      double lt = e * std::log2(nd) + static_cast<double>(estimate_log_incgamma(sp.a, z));
      max_mag = std::max(max_mag, lt + pref);
      sp.prec.push_back(std::max(16L, static_cast<long>(std::ceil(lt)) - sp.tol_exp));
    }
  }
  if (q == 1) {
    double s = sigma;
    double la = std::log2(req.alpha.to_double());
    double ld = s / 2.0 * std::log2(M_PI) +
                std::max((s - 1.0) / 2.0 * la - std::log2(std::fabs(s - 1.0)),
                         s / 2.0 * la - std::log2(std::fabs(s)));
    max_mag = std::max(max_mag, ld);
  }
  long ln = static_cast<long>(std::ceil(std::log2(static_cast<double>(plan.series[0].terms + plan.series[1].terms) + 1.0)));
  plan.prec = static_cast<mpfr_prec_t>(std::max(64L, static_cast<long>(std::ceil(max_mag)) - plan.sum_tol_exp + 32 + ln));
  return plan;
}

namespace {

// chi(n) n^e Gamma(a, D n^2) as a complex ball with absolute error about
// 2^tol (plus the incomplete gamma radius).
ComplexBall afe_term(const DirichletChar& chi, bool conj, std::int64_t n, const Rational& e,
                     const Rational& a, const Rational& d_over_pi, long tol, long term_prec) {
  auto cv = chi(static_cast<std::uint64_t>(n));
  if (!cv) return zero_value();
  RootOfUnity c = *cv;
  if (conj && c.k != 0) c.k = c.ord - c.k;

  const double nd = static_cast<double>(n);
  const double lpow = e.to_double() * std::log2(nd);
  const long tol_g = tol - static_cast<long>(std::ceil(lpow)) - 1;
  Rational zr = d_over_pi * Rational(static_cast<long>(n) * static_cast<long>(n));
  double zd = zr.to_double() * M_PI;
  double lderiv = (a.to_double() - 1.0) * std::log2(zd) - zd * kLog2e;
  long wz = std::max(64L, static_cast<long>(std::ceil(std::log2(zd) + lderiv)) - tol_g + 16);
  Ball z = mul(const_pi(wz + 8), zr, wz);

  Ball g = incgamma_abs(a, z, tol_g);
  mpfr_prec_t wp = std::max<long>(32, term_prec + 16);
  Ball t = mul(pow_rational(Ball::from_si(static_cast<long>(n)), e, wp), g, wp);
  if (c.ord <= 2 || c.k == 0 || 2 * c.k == c.ord) {
    if (c.k != 0) t = neg(t);
    return ComplexBall::real(std::move(t));
  }
  return mul(to_complex(c, wp), t, wp);
}

ComplexBall sum_series(const DirichletChar& chi, bool conj, const SeriesPlan& sp,
                       const Rational& e, const Rational& d_over_pi, mpfr_prec_t wp) {
  std::size_t count = sp.terms > 1 ? static_cast<std::size_t>(sp.terms - 1) : 0;
  std::vector<ComplexBall> terms(count);
  parallel_for(count, [&](std::size_t i) {
    terms[i] = afe_term(chi, conj, static_cast<std::int64_t>(i) + 1, e, sp.a, d_over_pi,
                        sp.tol_exp, sp.prec[i]);
  });
  ComplexBall acc = zero_value();
  for (const auto& t : terms) acc = add(acc, t, wp);
  acc.re.add_error(sp.tail);
  if (!chi.is_real()) acc.im.add_error(sp.tail);
  return acc;
}

LValue afe_once(const LValueRequest& req) {
  const DirichletChar& chi = req.chi;
  const std::uint64_t q = chi.modulus();
  const int delta = chi.parity();
  const Rational& s = req.s;
  LValue out;
  out.is_real = chi.is_real();
  out.plan = choose_truncation(req);
  const AFEPlan& plan = out.plan;
  const mpfr_prec_t wp = plan.prec;
  const Rational qr(static_cast<long>(q));

  ComplexBall s1 = sum_series(chi, false, plan.series[0], -s, req.alpha / qr, wp);
  ComplexBall total = s1;
  Ball pi = const_pi(wp + 8);
  if (q == 1) {
    Ball d1 = div(pow_rational(Ball::from_rational(req.alpha, wp + 8), (s - Rational(1)) / Rational(2), wp), s - Rational(1), wp);
    Ball d2 = div(pow_rational(Ball::from_rational(req.alpha, wp + 8), s / Rational(2), wp), s, wp);
    Ball dl = mul(pow_rational(pi, s / Rational(2), wp), sub(d1, d2, wp), wp);
    total.re = add(total.re, dl, wp);
  }
  ComplexBall omega = root_number(chi, wp);
  if (chi.is_real()) omega = ComplexBall::real(omega.re);
  Ball pref = pow_rational(div(pi, qr, wp), s - Rational(1, 2), wp);
  if (plan.symmetric) {
    total = add(total, mul(mul(omega, pref, wp), s1, wp), wp);
  } else {
    ComplexBall s2 = sum_series(chi, true, plan.series[1], s - Rational(1),
                                Rational(1) / (req.alpha * qr), wp);
    total = add(total, mul(mul(omega, pref, wp), s2, wp), wp);
  }
  Ball g = gamma_rational(gamma_param(1, s, delta), wp);
  out.value = div(total, g, wp);
  if (out.is_real) {
    if (!out.value.im.contains_zero()) {
      throw ResourceError("real character produced a value off the real axis");
    }
    out.value.im = Ball::from_si(0);
  }
  return out;
}

}  // namespace

LValue afe_eval(const LValueRequest& req) {
  const DirichletChar& chi = req.chi;
  if (!chi.is_primitive()) throw PreconditionError("afe_eval: character must be primitive");
  if (req.prec < 16) throw PreconditionError("afe_eval: precision must be at least 16 bits");
  if (req.alpha.sign() <= 0) throw PreconditionError("afe_eval: alpha must be positive");
  const int delta = chi.parity();
  LValue out;
  out.is_real = chi.is_real();
  if (chi.modulus() == 1) {
    if (req.s == Rational(1)) throw DomainError("zeta(s) has a pole at s = 1");
    if (req.s.is_zero()) {
      out.value = ComplexBall::real(Ball::from_rational(Rational(-1, 2), 64));
      return out;
    }
  }
  if (gamma_param(1, req.s, delta).is_nonpositive_integer()) {
    out.value = zero_value();
    return out;
  }
  LValueRequest r = req;
  for (int attempt = 0; attempt < 4; ++attempt, r.prec += 32 + r.prec / 8) {
    LValue v = afe_once(r);
    if (radius_ok(v.value, req.prec)) return v;
  }
  throw ResourceError("afe_eval: tolerance not reached");
}

LValue lfunc_eval(const LValueRequest& req) {
  PrimitivePart pp = conductor_and_primitive_part(req.chi);
  if (pp.conductor == req.chi.modulus()) return afe_eval(req);
  if (pp.conductor == 1 && req.s == Rational(1)) {
    throw DomainError("L(s, chi) has a pole at s = 1 for principal chi");
  }
  const auto primes = factor_u64(req.chi.modulus());
  LValueRequest r = req;
  r.chi = pp.primitive;
  for (int attempt = 0; attempt < 4; ++attempt) {
    r.prec = req.prec + 16 + 32 * attempt;
    LValue v = afe_eval(r);
    mpfr_prec_t wp = static_cast<mpfr_prec_t>(r.prec + 32);
    ComplexBall acc = v.value;
    for (auto [p, e] : primes) {
      if (pp.conductor % p == 0) continue;
      auto cv = pp.primitive(p);
      Ball ps = pow_rational(Ball::from_si(static_cast<long>(p)), -req.s, wp);
      ComplexBall f = mul(to_complex(*cv, wp), ps, wp);
      f = sub(ComplexBall::real(Ball::from_si(1)), f, wp);
      if (v.is_real) f.im = Ball::from_si(0);
      acc = mul(acc, f, wp);
    }
    v.value = acc;
    if (radius_ok(v.value, req.prec)) return v;
  }
  throw ResourceError("lfunc_eval: tolerance not reached");
}

}  // namespace zetaburst
