#include "zetaburst/exactvals.hpp"

#include <chrono>
#include <cmath>

#include "series_detail.hpp"
#include "zetaburst/afe.hpp"
#include "zetaburst/errors.hpp"
#include "zetaburst/oracles.hpp"

namespace zetaburst {

using detail::kLog2e;

namespace {

using Clock = std::chrono::steady_clock;

ExactAlgorithm effective(ExactAlgorithm alg, long s, long prec) {
  if (alg == ExactAlgorithm::ep && euler_product_cutoff(Rational(s), prec) == 0) {
    return ExactAlgorithm::afe;
  }
  return alg;
}

Ball l_value(const DirichletChar& chi, long s, long prec, ExactAlgorithm alg) {
  if (alg == ExactAlgorithm::ep) return zeta_euler_product(Rational(s), chi, prec).value.re;
  LValueRequest r;
  r.chi = chi;
  r.s = Rational(s);
  r.prec = prec;
  return afe_eval(r).real();
}

// The unique integer in x, if there is exactly one.
std::optional<mpz_class> unique_integer(const Ball& x) {
  if (!(x.rad() < Mag::pow2(-1))) return std::nullopt;
  BigFloat r(x.mid().prec() + 2);
  mpfr_round(r.get(), x.mid().get());
  mpz_class k;
  mpfr_get_z(k.get_mpz_t(), r.get(), MPFR_RNDN);
  if (!x.contains(Rational(k, mpz_class(1)))) return std::nullopt;
  return k;
}

std::size_t digits(const mpz_class& v) {
  return mpz_class(abs(v)).get_str().size();
}

ExactNumberResult finish(long n, mpq_class v, long prec, Clock::time_point t0,
                         ExactAlgorithm alg = ExactAlgorithm::afe) {
  ExactNumberResult r;
  r.algorithm = alg;
  r.n = n;
  r.value = std::move(v);
  r.value.canonicalize();
  r.numerator_digits = sgn(r.value) == 0 ? 1 : digits(r.value.get_num());
  r.prec = prec;
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

}  // namespace

mpz_class von_staudt_denominator(long n) {
  mpz_class d = 1;
  for (long k = 1; k * k <= n; ++k) {
    if (n % k != 0) continue;
    for (long div : {k, n / k}) {
      if (mpz_probab_prime_p(mpz_class(div + 1).get_mpz_t(), 30) != 0) d *= div + 1;
      if (div == n / k && div == k) break;
    }
  }
  return d;
}

ExactNumberResult bernoulli_exact(long n, ExactAlgorithm alg) {
  auto t0 = Clock::now();
  if (n < 0) throw PreconditionError("bernoulli_exact: n must be nonnegative");
  if (n == 0) return finish(n, 1, 0, t0);
  if (n == 1) return finish(n, mpq_class(-1, 2), 0, t0);
  if (n % 2 == 1) return finish(n, 0, 0, t0);

  // B_n = (-1)^(n/2+1) 2 n! zeta(n) / (2 pi)^n
  mpz_class d = von_staudt_denominator(n);
  const double nd = static_cast<double>(n);
  double lb = std::lgamma(nd + 1.0) * kLog2e + 2.0 - nd * std::log2(2.0 * M_PI);
  long prec = static_cast<long>(std::ceil(lb + detail::log2_abs(d))) + 32;
  prec = std::max(prec, 64L);
  for (int attempt = 0; attempt < 2; ++attempt, prec += 64) {
    mpfr_prec_t wp = prec + 16;
    ExactAlgorithm used = effective(alg, n, prec);
    Ball z = l_value(DirichletChar::trivial(), n, prec, used);
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    Ball x = mul(z, Rational(mpz_class(2 * f * d), mpz_class(1)), wp);
    x = div(x, pow_si(mul_2exp(const_pi(wp + 16), 1), n, wp), wp);
    if ((n / 2) % 2 == 0) x = neg(x);
    if (auto k = unique_integer(x)) return finish(n, mpq_class(*k, d), prec, t0, used);
  }
  throw ResourceError("bernoulli_exact: rounding to an integer failed");
}

ExactNumberResult euler_exact(long n, ExactAlgorithm alg) {
  auto t0 = Clock::now();
  if (n < 0) throw PreconditionError("euler_exact: n must be nonnegative");
  if (n % 2 == 1) return finish(n, 0, 0, t0);
  if (n == 0) return finish(n, 1, 0, t0);

  // E_n = (-1)^(n/2) 2^(n+2) n! beta(n+1) / pi^(n+1)
  const double nd = static_cast<double>(n);
  double le = std::lgamma(nd + 1.0) * kLog2e + nd + 3.0 - (nd + 1.0) * std::log2(M_PI);
  long prec = std::max(64L, static_cast<long>(std::ceil(le)) + 32);
  for (int attempt = 0; attempt < 2; ++attempt, prec += 64) {
    mpfr_prec_t wp = prec + 16;
    ExactAlgorithm used = effective(alg, n + 1, prec);
    Ball b = l_value(DirichletChar::conrey(4, 3), n + 1, prec, used);
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    Ball x = mul_2exp(mul(b, Rational(f, mpz_class(1)), wp), n + 2);
    x = div(x, pow_si(const_pi(wp + 16), n + 1, wp), wp);
    if ((n / 2) % 2 == 1) x = neg(x);
    if (auto k = unique_integer(x)) return finish(n, mpq_class(*k), prec, t0, used);
  }
  throw ResourceError("euler_exact: rounding to an integer failed");
}

namespace {

// log2 of the bound 3.5 * 3^(-2^(K+1)) / 2^(K+2) on the log of the
// omitted factors.
double lr_tail_log2(int depth) {
  return std::log2(3.5) - std::ldexp(1.0, depth + 1) * std::log2(3.0) - (depth + 2.0);
}

}  // namespace

int landau_ramanujan_depth(long p) {
  int k = 1;
  while (lr_tail_log2(k) >= -static_cast<double>(p) - 4.0) ++k;
  return k;
}

Ball landau_ramanujan_at_depth(long p, int depth) {
  if (p < 16) throw PreconditionError("landau_ramanujan: precision must be at least 16 bits");
  if (depth < 1 || depth > 40) throw PreconditionError("landau_ramanujan: depth out of range");
  const mpfr_prec_t wp = p + 24 + depth;
  const DirichletChar beta = DirichletChar::conrey(4, 3);
  // lambda = 2^(-1/2) prod_n [(1 - 2^-s) zeta(s) / beta(s)]^(1/2^(n+1)), s = 2^n
  Ball acc = sqrt(Ball::from_rational(Rational(1, 2), wp + 8), wp);
  for (int n = 1; n <= depth; ++n) {
    long s = 1L << n;
    LValueRequest r;
    r.s = Rational(s);
    r.prec = wp;
    Ball z = afe_eval(r).real();
    r.chi = beta;
    Ball b = afe_eval(r).real();
    Ball odd = sub(Ball::from_si(1), mul_2exp(Ball::from_si(1), -s), wp);
    Ball f = div(mul(odd, z, wp), b, wp);
    mpz_class e = 1;
    mpz_mul_2exp(e.get_mpz_t(), e.get_mpz_t(), static_cast<mp_bitcnt_t>(n + 1));
    acc = mul(acc, pow_rational(f, Rational(mpz_class(1), e), wp), wp);
  }
  // The omitted factors multiply lambda_K by e^t with 0 <= t <= tau.
  double lt = lr_tail_log2(depth);
  Mag tau = Mag::pow2(static_cast<long>(std::ceil(lt)));
  Mag grow = tau * exp(Ball(tau.value()), 64).upper_abs();  // e^tau - 1 <= tau e^tau
  Mag half = (acc.upper_abs() * grow).mul_2exp(-1);
  Ball out = add(acc, Ball(half.value()), wp);
  out.add_error(half);
  return round(out, p + 8);
}

Ball landau_ramanujan(long p) { return landau_ramanujan_at_depth(p, landau_ramanujan_depth(p)); }

}  // namespace zetaburst
