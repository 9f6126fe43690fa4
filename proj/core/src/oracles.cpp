#include "zetaburst/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

#include "zetaburst/errors.hpp"

namespace zetaburst {

namespace {

using Clock = std::chrono::steady_clock;
constexpr mpfr_prec_t kBoundPrec = 64;
constexpr double kLog2e = 1.4426950408889634;
constexpr double kLn2 = 0.6931471805599453;
constexpr std::uint64_t kEulerProductCap = 1ULL << 22;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// B_0 .. B_m from sum_{k<=m} C(m+1, k) B_k = 0.
std::mutex g_bern_mutex;
std::vector<mpq_class> g_bern{mpq_class(1)};

std::vector<mpq_class> bernoulli_table(std::size_t m) {
  std::lock_guard<std::mutex> lock(g_bern_mutex);
  while (g_bern.size() <= m) {
    std::size_t n = g_bern.size();
    mpq_class acc = 0;
    mpz_class binom = 1;  // C(n+1, k)
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(g_bern[k]) != 0) acc += mpq_class(binom) * g_bern[k];
      binom = binom * static_cast<unsigned long>(n + 1 - k) / static_cast<unsigned long>(k + 1);
    }
    mpq_class b = -acc / mpq_class(static_cast<unsigned long>(n + 1));
    b.canonicalize();
    g_bern.push_back(b);
  }
  return {g_bern.begin(), g_bern.begin() + static_cast<long>(m) + 1};
}

mpz_class factorial(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

// Smallest N (with its best M) whose remainder estimate is below 2^(-p-4),
// using |B_2j|/(2j)! <= 4 (2 pi)^(-2j). M <= N/2 keeps the Bernoulli table small.
std::pair<long, long> em_parameters(double sigma, long p) {
  const double target = -static_cast<double>(p) - 4.0;
  for (long N = std::max(2L, static_cast<long>(std::ceil(std::fabs(sigma))) + 1);; N += 1 + N / 8) {
    double lpoch = 0.0;
    double best = 0.0;
    long bestM = 0;
    const double lN = std::log2(static_cast<double>(N));
    for (long M = 1; M <= std::max(1L, N / 2); ++M) {
      lpoch += std::log2(std::max(1e-300, std::fabs(sigma + 2.0 * M - 2.0))) +
               std::log2(std::max(1e-300, std::fabs(sigma + 2.0 * M - 1.0)));
      const double d = sigma + 2.0 * M - 1.0;
      if (d <= 0.0) continue;
      const double lb = 2.0 - 2.0 * M * std::log2(2.0 * M_PI) + lpoch + (1.0 - sigma - 2.0 * M) * lN -
                        std::log2(d);
      if (bestM == 0 || lb < best) {
        best = lb;
        bestM = M;
      } else if (lb > best + 8.0) {
        break;
      }
    }
    if (bestM > 0 && best < target) return {N, bestM};
  }
}

struct EmPlan {
  long N = 0;
  long M = 0;
  mpfr_prec_t wp = 0;
  std::vector<Ball> coef;  // B_2j/(2j)! (s)_{2j-1}, j = 1..M
  Ball rem;                // |B_2M|/(2M)! |(s)_2M| / (s+2M-1) = |coef[M-1]|
};

EmPlan make_em_plan(const Rational& s, long p) {
  EmPlan plan;
  const double sigma = s.to_double();
  std::tie(plan.N, plan.M) = em_parameters(sigma, p);
  const long N = plan.N;
  const long M = plan.M;
  plan.wp = p + 32 + static_cast<long>(std::ceil((std::fabs(sigma) + 1.0) * std::log2(N + 2.0))) +
            static_cast<long>(std::ceil(std::log2(M + 1.0)));
  auto B = bernoulli_table(static_cast<std::size_t>(2 * M));
  mpq_class poch = s.value();  // (s)_{2j-1}
  mpz_class fac = 1;
  for (long j = 1; j <= M; ++j) {
    fac *= static_cast<unsigned long>(2 * j - 1);
    fac *= static_cast<unsigned long>(2 * j);
    mpq_class c = B[static_cast<std::size_t>(2 * j)] * poch / mpq_class(fac);
    plan.coef.push_back(Ball::from_rational(Rational(c), plan.wp));
    if (j == M) plan.rem = Ball::from_rational(Rational(mpq_class(abs(c))), kBoundPrec);
    poch *= (s.value() + static_cast<long>(2 * j - 1)) * (s.value() + static_cast<long>(2 * j));
  }
  return plan;
}

// Euler-Maclaurin for sum_{k>=0} (k+a)^-s. With log_part the
// (N+a)^(1-s)/(s-1) term is replaced by -log(N+a), which gives the s = 1
// finite part up to a constant independent of a.
Ball em_sum(const EmPlan& plan, const Rational& s, const Rational& a, bool log_part) {
  const long N = plan.N;
  const mpfr_prec_t wp = plan.wp;
  Ball acc = Ball::from_si(0);
  for (long k = 0; k < N; ++k) {
    Ball base = Ball::from_rational(a + Rational(k), wp + 8);
    acc = add(acc, pow_rational(base, -s, wp), wp);
  }
  Ball na = Ball::from_rational(a + Rational(N), wp + 8);
  if (log_part) {
    acc = sub(acc, log(na, wp), wp);
  } else {
    acc = add(acc, div(pow_rational(na, Rational(1) - s, wp), s - Rational(1), wp), wp);
  }
  acc = add(acc, mul_2exp(pow_rational(na, -s, wp), -1), wp);

  Ball pw = pow_rational(na, -s - Rational(1), wp);
  Ball inv2 = div(Ball::from_si(1), mul(na, na, wp), wp);
  for (const Ball& c : plan.coef) {
    acc = add(acc, mul(pw, c, wp), wp);
    pw = mul(pw, inv2, wp);
  }
  // |R| <= |B_2M|/(2M)! |(s)_2M| (N+a)^(1-sigma-2M) / (sigma+2M-1)
  Ball rb = mul(pow_rational(Ball::from_rational(a + Rational(N), kBoundPrec),
                             Rational(1) - s - Rational(2 * plan.M), kBoundPrec),
                plan.rem, kBoundPrec);
  acc.add_error(rb.upper_abs());
  return acc;
}

std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
  std::vector<bool> comp(n + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
  }
  return out;
}

}  // namespace

OracleResult hurwitz_em(const Rational& s, const Rational& a, long p) {
  auto t0 = Clock::now();
  if (s == Rational(1)) throw DomainError("Hurwitz zeta has a pole at s = 1");
  if (a.sign() <= 0 || a > Rational(1)) throw PreconditionError("hurwitz_em: a must lie in (0, 1]");
  OracleResult r;
  r.method = "euler-maclaurin";
  EmPlan plan = make_em_plan(s, p);
  r.terms = plan.N + plan.M;
  r.value = ComplexBall::real(em_sum(plan, s, a, false));
  r.seconds = seconds_since(t0);
  return r;
}

OracleResult l_em(const DirichletChar& chi, const Rational& s, long p) {
  auto t0 = Clock::now();
  const std::uint64_t q = chi.modulus();
  const bool principal = chi.is_principal();
  if (principal && s == Rational(1)) throw DomainError("L(s, chi) has a pole at s = 1");
  const bool log_part = s == Rational(1);
  const double sigma = s.to_double();
  const double lq = std::log2(static_cast<double>(q));
  const long pa = p + static_cast<long>(std::ceil(std::max(0.0, -sigma) * lq + lq)) + 8;
  const mpfr_prec_t wp = pa + 16;

  OracleResult r;
  r.method = "euler-maclaurin";
  EmPlan plan = make_em_plan(s, pa);
  ComplexBall acc = ComplexBall::real(Ball::from_si(0));
  for (std::uint64_t a = 1; a <= q; ++a) {
    auto c = chi(a);
    if (!c) continue;
    Ball z = em_sum(plan, s, Rational(static_cast<long>(a), static_cast<long>(q)), log_part);
    r.terms += plan.N + plan.M;
    acc = add(acc, mul(to_complex(*c, wp), z, wp), wp);
  }
  Ball qs = pow_rational(Ball::from_si(static_cast<long>(q)), -s, wp);
  r.value = mul(acc, qs, wp);
  if (chi.is_real()) r.value.im = Ball::from_si(0);
  r.seconds = seconds_since(t0);
  return r;
}

std::uint64_t euler_product_cutoff(const Rational& s, long p) {
  if (!(s > Rational(1))) return 0;
  const double sm1 = s.to_double() - 1.0;
  double lp = (static_cast<double>(p) + 8.0 - std::log2(sm1)) / sm1;
  if (lp > 22.0) return 0;
  return std::max<std::uint64_t>(3, static_cast<std::uint64_t>(std::ceil(std::exp2(lp))));
}

OracleResult zeta_euler_product(const Rational& s, const DirichletChar& chi, long p) {
  auto t0 = Clock::now();
  if (!(s > Rational(1))) throw DomainError("Euler product requires s > 1");
  std::uint64_t P = euler_product_cutoff(s, p);
  if (P == 0) P = kEulerProductCap;
  auto primes = primes_upto(P);
  const mpfr_prec_t wp = p + 32 + static_cast<long>(std::ceil(std::log2(primes.size() + 1.0)));

  ComplexBall acc = ComplexBall::real(Ball::from_si(1));
  for (std::uint64_t pr : primes) {
    auto c = chi(pr);
    if (!c) continue;
    Ball ps = pow_rational(Ball::from_si(static_cast<long>(pr)), -s, wp);
    ComplexBall f = mul(to_complex(*c, wp), ps, wp);
    acc = mul(acc, sub(ComplexBall::real(Ball::from_si(1)), f, wp), wp);
  }
  OracleResult r;
  r.method = "euler-product";
  r.terms = static_cast<std::int64_t>(primes.size());
  r.value = div(ComplexBall::real(Ball::from_si(1)), acc, wp);
  if (chi.is_real()) r.value.im = Ball::from_si(0);
  // The omitted primes change log L by at most eta = 2 P^(1-s) / (s-1).
  Ball eta = div(mul_2exp(pow_rational(Ball::from_si(static_cast<long>(P)),
                                       Rational(1) - s, kBoundPrec), 1),
                 s - Rational(1), kBoundPrec);
  // e^eta - 1 <= eta e^eta
  Mag grow = eta.upper_abs() * exp(Ball(eta.upper()), kBoundPrec).upper_abs();
  Mag err = r.value.upper_abs() * grow;
  r.value.re.add_error(err);
  if (!chi.is_real()) r.value.im.add_error(err);
  r.seconds = seconds_since(t0);
  return r;
}

OracleResult ramanujan_zeta_half(long p) {
  auto t0 = Clock::now();
  if (p < 16) throw PreconditionError("ramanujan_zeta_half: precision must be at least 16 bits");
  const mpfr_prec_t wp = p + 40 + 2 * static_cast<long>(std::ceil(std::log2(static_cast<double>(p))));
  // alpha = c / p with c ~ 35.9 balances the two series.
  const Rational alpha(359, 10 * p);
  Ball pi = const_pi(wp);
  Ball beta = div(mul_2exp(pow_si(pi, 3, wp), 2), alpha, wp);
  Ball sqb = sqrt(beta, wp);
  const double ad = alpha.to_double();
  const double bd = beta.mid().to_double();
  const double target = -static_cast<double>(p) - 8.0;

  // Left series: 1/(e^(n^2 alpha) - 1) <= 2 e^(-n^2 alpha), tail ratio
  // e^(-(2N+1) alpha).
  long nl = 1;
  while ((std::log2(2.0) - nl * nl * ad * kLog2e -
          std::log2(1.0 - std::exp(-(2.0 * nl + 1.0) * ad))) > target - 4.0) {
    ++nl;
  }
  Ball lt = div(mul_2exp(exp(Ball::from_rational(-alpha * Rational(nl * nl), kBoundPrec), kBoundPrec), 1),
                sub(Ball::from_si(1), exp(Ball::from_rational(-alpha * Rational(2 * nl + 1), kBoundPrec), kBoundPrec), kBoundPrec),
                kBoundPrec);
  Ball left = Ball::from_si(0);
  for (long n = 1; n < nl; ++n) {
    Ball e = exp(Ball::from_rational(alpha * Rational(n * n), wp + 8), wp);
    left = add(left, div(Ball::from_si(1), sub(e, Ball::from_si(1), wp), wp), wp);
  }
  left.add_error(lt.upper_abs());

  // Right series: |term| <= 10 e^(-sqrt(n beta)); tail from n = N bounded
  // by 20 (y0+1) e^(-y0) / beta with y0 = sqrt((N-1) beta).
  long nr = 2;
  while (true) {
    double y0 = std::sqrt((nr - 1.0) * bd);
    double lb = std::log2(20.0 * (y0 + 1.0) / bd) - y0 * kLog2e;
    if (y0 > 2.0 && lb <= target) break;
    ++nr;
  }
  Ball y0 = sqrt(mul(beta, Rational(nr - 1), kBoundPrec), kBoundPrec);
  Ball rt = div(mul(mul(Ball::from_si(20), add(y0, Ball::from_si(1), kBoundPrec), kBoundPrec),
                    exp(neg(y0), kBoundPrec), kBoundPrec),
                beta, kBoundPrec);
  Ball right = Ball::from_si(0);
  for (long n = 1; n < nr; ++n) {
    Ball sn = sqrt(Ball::from_si(n), wp + 8);
    Ball y = mul(sn, sqb, wp);
    Ball c = cos(y, wp);
    Ball num = sub(sub(c, sin(y, wp), wp), exp(neg(y), wp), wp);
    Ball den = mul(sn, sub(cosh(y, wp), c, wp), wp);
    right = add(right, div(num, den, wp), wp);
  }
  right.add_error(rt.upper_abs());

  // zeta(1/2) = 4 pi / sqrt(beta) (left - pi^2/(6 alpha) - 1/4) - right
  Ball main = sub(left, div(mul(pi, pi, wp), alpha * Rational(6), wp), wp);
  main = sub(main, Ball::from_rational(Rational(1, 4), wp), wp);
  Ball z = sub(div(mul(mul_2exp(pi, 2), main, wp), sqb, wp), right, wp);

  OracleResult r;
  r.method = "ramanujan";
  r.terms = nl + nr;
  r.value = ComplexBall::real(round(z, p + 8));
  r.seconds = seconds_since(t0);
  return r;
}

namespace {

// Gamma(a) for non-pole a from MPFR with the input rounding error added.
Ball mpfr_gamma_ball(const Rational& a, mpfr_prec_t wp) {
  BigFloat ar(wp + 64);
  mpfr_set_q(ar.get(), a.value().get_mpq_t(), MPFR_RNDN);
  BigFloat g(wp);
  int t = mpfr_gamma(g.get(), ar.get(), MPFR_RNDN);
  Mag rad = t == 0 ? Mag() : Mag::ulp(g);
  mpq_class arq;
  mpfr_get_q(arq.get_mpq_t(), ar.get());
  mpq_class da = abs(arq - a.value());
  if (sgn(da) != 0) {
    BigFloat dg(kBoundPrec);
    mpfr_digamma(dg.get(), ar.get(), MPFR_RNDN);
    mpfr_mul(dg.get(), dg.get(), g.get(), MPFR_RNDU);
    Mag slope = Mag::abs_upper(dg).mul_2exp(2);
    BigFloat dab(kBoundPrec);
    mpfr_set_q(dab.get(), da.get_mpq_t(), MPFR_RNDU);
    rad += slope * Mag::abs_upper(dab);
  }
  return Ball(g, rad);
}

}  // namespace

OracleResult incgamma_naive(const Rational& a, const Ball& z, long p) {
  auto t0 = Clock::now();
  if (!z.is_positive()) throw DomainError("incomplete gamma: z must be positive");
  const double zu = z.upper().to_double();
  const double zl = z.lower().to_double();
  const double ad = a.to_double();
  const double lz = std::log2(zl);
  OracleResult r;
  r.method = "naive-series";
  const Mag small = Mag::pow2(-p - 12);

  if (a.is_nonpositive_integer()) {
    const long n = -a.num().get_si();
    const mpfr_prec_t wp = p + 48 + static_cast<long>(std::ceil(zu * kLog2e)) +
                           static_cast<long>(std::ceil(n * std::max(0.0, -lz))) +
                           static_cast<long>(std::ceil(std::log2(n + 2.0)));
    BigFloat gam(wp);
    mpfr_const_euler(gam.get(), MPFR_RNDN);
    Ball euler(gam, Mag::ulp(gam));
    Rational h(0);
    for (long k = 1; k <= n; ++k) h += Rational(1, k);
    Ball psi = sub(Ball::from_rational(h, wp), euler, wp);
    Ball first = div(sub(psi, log(z, wp), wp), Rational(factorial(static_cast<unsigned long>(n)), mpz_class(1)), wp);
    if (n % 2 == 1) first = neg(first);

    Ball pw = pow_si(z, -n, wp);  // (-1)^k z^(k-n) / k!
    Ball sum = Ball::from_si(0);
    Ball mz = neg(z);
    long k = 0;
    for (;; ++k) {
      if (k != n) sum = add(sum, div(pw, Rational(k - n), wp), wp);
      pw = div(mul(pw, mz, wp), Rational(k + 1), wp);
      if (k + 1 > 2.0 * zu + n && pw.upper_abs() <= small) break;
    }
    sum.add_error(pw.upper_abs().mul_2exp(1));
    r.terms = k + 1;
    r.value = ComplexBall::real(sub(first, sum, wp));
  } else {
    const mpfr_prec_t wp = p + 64 + static_cast<long>(std::ceil(zu * kLog2e)) +
                           static_cast<long>(std::ceil(std::fabs(std::lgamma(ad)) * kLog2e)) +
                           static_cast<long>(std::ceil(std::fabs(ad) * std::fabs(lz)));
    // Gamma(a) - z^a e^-z sum_k z^k / (a)_(k+1)
    Ball t = div(Ball::from_si(1), Ball::from_rational(a, wp + 8), wp);
    Ball sum = Ball::from_si(0);
    Ball pref = mul(pow_rational(z, a, wp), exp(neg(z), wp), wp);
    Mag pmag = pref.upper_abs();
    long k = 0;
    for (;; ++k) {
      sum = add(sum, t, wp);
      t = div(mul(t, z, wp), a + Rational(k + 1), wp);
      if (ad + k + 2 > 2.0 * zu && ad + k + 2 > 0 && t.upper_abs() * pmag <= small) break;
    }
    sum.add_error(t.upper_abs().mul_2exp(1));
    r.terms = k + 1;
    r.value = ComplexBall::real(sub(mpfr_gamma_ball(a, wp), mul(pref, sum, wp), wp));
  }
  r.seconds = seconds_since(t0);
  return r;
}

}  // namespace zetaburst
