#include <gtest/gtest.h>

#include <random>

#include "reference.hpp"
#include "tails.hpp"
#include "zetaburst/errors.hpp"
#include "zetaburst/gamma.hpp"
#include "zetaburst/incgamma.hpp"
#include "zetaburst/oracles.hpp"

using namespace zetaburst;

namespace {

Ball dyadic_ball(const Rational& x) { return Ball(tails::exact(x)); }

Ball mpfr_gamma(const Rational& a, mpfr_prec_t prec) {
  return ref::mpfr_ball(prec, [&](mpfr_ptr out) {
    mpfr_t av;
    mpfr_init2(av, prec + 64);
    mpfr_set_q(av, a.value().get_mpq_t(), MPFR_RNDN);
    mpfr_gamma(out, av, MPFR_RNDN);
    mpfr_clear(av);
  });
}

}  // namespace

TEST(Gamma, HalfIsSqrtPi) {
  for (mpfr_prec_t p : {64, 300, 2000}) {
    Ball g = gamma_rational(Rational(1, 2), p);
    Ball r = sqrt(ref::pi(p + 64), p + 32);
    EXPECT_TRUE(g.overlaps(r)) << p;
    EXPECT_LE(g.rad().log2_ceil(), -p + 2);
  }
}

TEST(Gamma, ShiftedArguments) {
  const mpfr_prec_t p = 256;
  Ball sp = sqrt(ref::pi(p + 64), p + 32);
  EXPECT_TRUE(gamma_rational(Rational(5, 2), p).overlaps(mul(sp, Rational(3, 4), p)));
  EXPECT_TRUE(gamma_rational(Rational(-1, 2), p).overlaps(mul(sp, Rational(-2), p)));
  EXPECT_TRUE(gamma_rational(Rational(7), p).contains(Rational(720)));
  for (Rational a : {Rational(1, 3), Rational(-7, 4), Rational(22, 7), Rational(1, 97)}) {
    EXPECT_TRUE(gamma_rational(a, p).overlaps(mpfr_gamma(a, p + 64))) << a.to_string();
  }
}

TEST(Gamma, RefinementAcrossPrecisions) {
  Ball lo = gamma_rational(Rational(1, 3), 64);
  Ball hi = gamma_rational(Rational(1, 3), 1024);
  EXPECT_TRUE(lo.overlaps(hi));
  EXPECT_LE(hi.rad().log2_ceil(), -1020);
}

TEST(Gamma, Poles) {
  EXPECT_THROW(gamma_rational(Rational(0), 64), DomainError);
  EXPECT_THROW(gamma_rational(Rational(-3), 64), DomainError);
}

TEST(Gamma, EulerConstant) {
  for (mpfr_prec_t p : {64, 500, 3000}) {
    Ball g = euler_gamma(p);
    Ball r = ref::mpfr_ball(p + 64, [](mpfr_ptr x) { mpfr_const_euler(x, MPFR_RNDN); });
    EXPECT_TRUE(g.overlaps(r)) << p;
    EXPECT_LE(g.rad().log2_ceil(), -p + 2);
  }
}

TEST(IncGamma, HypSeriesMatchesMpfr) {
  for (auto [a, x] : {std::pair{Rational(1, 3), Rational(5, 2)}, {Rational(-5, 2), Rational(3, 4)},
                      {Rational(7, 2), Rational(17, 8)}, {Rational(1, 4), Rational(81, 4)}}) {
    KernelInfo info;
    Ball y = hyp_series_origin(a, tails::exact(x), -200, &info);
    EXPECT_EQ(info.kind, SeriesKind::hyp_at_origin);
    EXPECT_TRUE(y.overlaps(ref::gamma_inc(a, x, 300))) << a.to_string() << " " << x.to_string();
    EXPECT_LE(y.rad().log2_ceil(), -195);
  }
}

TEST(IncGamma, AsymptoticSeries) {
  KernelInfo info;
  auto y = asymp_series(Rational(1, 3), tails::exact(Rational(60)), -60, &info);
  ASSERT_TRUE(y.has_value());
  EXPECT_EQ(info.kind, SeriesKind::asymp_at_infinity);
  EXPECT_TRUE(y->overlaps(ref::gamma_inc(Rational(1, 3), Rational(60), 200)));
  EXPECT_FALSE(asymp_series(Rational(1, 3), tails::exact(Rational(3)), -200).has_value());
}

TEST(IncGamma, SingularAtNonpositiveIntegers) {
  for (long n : {0L, 1L, 4L}) {
    for (Rational x : {Rational(1, 8), Rational(3, 2), Rational(11)}) {
      Ball y = singular_at_nonpositive_int(n, tails::exact(x), -180);
      EXPECT_TRUE(y.overlaps(ref::gamma_inc(Rational(-n), x, 300))) << n << " " << x.to_string();
      EXPECT_LE(y.rad().log2_ceil(), -175);
    }
  }
}

TEST(IncGamma, TaylorStep) {
  const Rational a(2, 5);
  const Rational u(3);
  const Rational x(-5, 4);
  Ball yu = ref::gamma_inc(a, u, 400);
  KernelInfo info;
  Ball y = taylor_step(a, tails::exact(u), yu, tails::exact(x), -250, &info);
  EXPECT_EQ(info.kind, SeriesKind::taylor_at_point);
  EXPECT_TRUE(y.overlaps(ref::gamma_inc(a, u + x, 400)));
  EXPECT_LE(y.rad().log2_ceil(), -245);
  EXPECT_THROW(taylor_step(a, tails::exact(u), yu, tails::exact(Rational(4)), -50), PreconditionError);
}

TEST(IncGamma, BitBurstAgreesWithMpfr) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 12; ++i) {
    Rational a = ref::random_rational(rng, -4, 6, 7);
    std::uniform_int_distribution<long> zd(1, 50 * 64);
    Rational z(zd(rng), 64);
    for (long p : {128L, 1024L}) {
      BitBurstPath path;
      Ball y = incgamma_bitburst(a, dyadic_ball(z), p, &path);
      EXPECT_TRUE(y.overlaps(ref::gamma_inc(a, z, p + 128))) << a.to_string() << " " << z.to_string();
      EXPECT_LE(y.rad().log2_ceil(), -p + 1);
      ASSERT_FALSE(path.steps.empty());
      EXPECT_EQ(cmp(path.steps.back().point, path.target), 0);
    }
  }
}

TEST(IncGamma, BitBurstPathDoubles) {
  // A point with a long binary expansion forces several steps.
  Ball z = Ball::from_rational(Rational(314159265, 100000000), 2000);
  BitBurstPath path;
  Ball y = incgamma_bitburst(Rational(1, 3), z, 1500, &path);
  ASSERT_GE(path.steps.size(), 3u);
  for (std::size_t k = 1; k < path.steps.size(); ++k) {
    EXPECT_GE(path.steps[k].bits, path.steps[k - 1].bits);
    EXPECT_EQ(path.steps[k].info.kind, SeriesKind::taylor_at_point);
  }
  OracleResult naive = incgamma_naive(Rational(1, 3), z, 1500);
  EXPECT_TRUE(y.overlaps(naive.real()));
}

TEST(IncGamma, RecurrenceInA) {
  const long p = 400;
  for (Rational a : {Rational(-3), Rational(-1, 2), Rational(0), Rational(5, 3)}) {
    Rational z(37, 8);
    Ball zb = dyadic_ball(z);
    Ball lhs = incgamma_bitburst(a + Rational(1), zb, p);
    Ball rhs = add(mul(incgamma_bitburst(a, zb, p), a, p + 32),
                   mul(pow_rational(zb, a, p + 32), exp(neg(zb), p + 32), p + 32), p + 32);
    EXPECT_TRUE(lhs.overlaps(rhs)) << a.to_string();
  }
}

TEST(IncGamma, InputRadiusPropagates) {
  Ball z(BigFloat::from_si(3), Mag::pow2(-40));
  Ball y = incgamma_bitburst(Rational(1, 2), z, 200);
  EXPECT_GE(y.rad().log2_ceil(), -50);
  EXPECT_TRUE(y.overlaps(ref::gamma_inc(Rational(1, 2), Rational(3), 200)));
}

TEST(IncGamma, Errors) {
  EXPECT_THROW(incgamma_bitburst(Rational(1, 2), Ball::from_si(0), 64), DomainError);
  EXPECT_THROW(incgamma_bitburst(Rational(1, 2), Ball::from_si(-1), 64), DomainError);
  EXPECT_THROW(hyp_series_origin(Rational(-2), tails::exact(Rational(1)), -50), DomainError);
}

TEST(IncGamma, EstimateIsRoughlyRight) {
  long e = estimate_log_incgamma(Rational(1, 2), tails::exact(Rational(100)));
  EXPECT_NEAR(static_cast<double>(e), -100 * 1.4427 - 0.5 * std::log2(100.0), 8.0);
}

TEST(IncGammaTails, HypBounds) {
  std::mt19937_64 rng(21);
  int checked = 0;
  for (int i = 0; i < 30; ++i) {
    Rational a = ref::random_rational(rng, -6, 8, 9);
    if (a.is_nonpositive_integer()) continue;
    Rational x(std::uniform_int_distribution<long>(1, 40 * 16)(rng), 16);
    std::int64_t N = std::uniform_int_distribution<std::int64_t>(1, 120)(rng);
    auto c = tails::hyp(a, x, N);
    if (!c.applicable) continue;
    ++checked;
    EXPECT_LE(c.empirical, c.bound) << a.to_string() << " " << x.to_string() << " " << N;
  }
  EXPECT_GE(checked, 10);
}

TEST(IncGammaTails, AsympBounds) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 20; ++i) {
    Rational a = ref::random_rational(rng, -4, 6, 8);
    Rational x(std::uniform_int_distribution<long>(12 * 4, 60 * 4)(rng), 4);
    std::int64_t N = std::uniform_int_distribution<std::int64_t>(6, 30)(rng);
    auto c = tails::asymp(a, x, N);
    ASSERT_TRUE(c.applicable);
    EXPECT_LE(c.empirical, c.bound) << a.to_string() << " " << x.to_string() << " " << N;
  }
}

TEST(IncGammaTails, SingularBounds) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 20; ++i) {
    long n = std::uniform_int_distribution<long>(0, 6)(rng);
    Rational x(std::uniform_int_distribution<long>(1, 30 * 8)(rng), 8);
    std::int64_t J = std::uniform_int_distribution<std::int64_t>(0, 80)(rng);
    auto c = tails::singular(n, x, J);
    if (!c.applicable) continue;
    EXPECT_LE(c.empirical, c.bound) << n << " " << x.to_string() << " " << J;
  }
}

TEST(IncGammaTails, TaylorBounds) {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 15; ++i) {
    Rational a = ref::random_rational(rng, -3, 5, 6);
    Rational u(std::uniform_int_distribution<long>(8, 20 * 8)(rng), 8);
    Rational R = u * Rational(3, 4);
    Rational x = R * Rational(std::uniform_int_distribution<long>(-7, 7)(rng), 8);
    if (x.is_zero()) x = Rational(1, 64);
    std::int64_t N = std::uniform_int_distribution<std::int64_t>(2, 40)(rng);
    auto c = tails::taylor(a, u, x, R, N);
    ASSERT_TRUE(c.applicable);
    EXPECT_LE(c.empirical, c.bound) << a.to_string() << " " << u.to_string() << " " << x.to_string();
  }
}
