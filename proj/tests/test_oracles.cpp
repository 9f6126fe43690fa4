#include <gtest/gtest.h>

#include "reference.hpp"
#include "zetaburst/errors.hpp"
#include "zetaburst/oracles.hpp"

using namespace zetaburst;

TEST(Oracles, HurwitzAtOneIsZeta) {
  const long p = 300;
  for (auto [n, d] : {std::pair{1L, 2L}, {3L, 1L}, {-5L, 2L}, {9L, 4L}}) {
    OracleResult r = hurwitz_em(Rational(n, d), Rational(1), p);
    EXPECT_TRUE(r.real().overlaps(ref::zeta(n, d, p + 64))) << n << "/" << d;
    EXPECT_LE(r.real().rad().log2_ceil(), -p + 2);
  }
}

TEST(Oracles, HurwitzHalf) {
  // zeta(2, 1/2) = 3 zeta(2) = pi^2 / 2
  const long p = 200;
  Ball pi = ref::pi(p + 64);
  OracleResult r = hurwitz_em(Rational(2), Rational(1, 2), p);
  EXPECT_TRUE(r.real().overlaps(mul_2exp(mul(pi, pi, p + 32), -1)));
  EXPECT_THROW(hurwitz_em(Rational(1), Rational(1, 2), p), DomainError);
  EXPECT_THROW(hurwitz_em(Rational(2), Rational(3, 2), p), PreconditionError);
}

TEST(Oracles, LSeriesAtOne) {
  const long p = 200;
  Ball pi = ref::pi(p + 64);
  OracleResult r = l_em(DirichletChar::parse("4.3"), Rational(1), p);
  EXPECT_TRUE(r.real().overlaps(mul_2exp(pi, -2)));
  EXPECT_THROW(l_em(DirichletChar::trivial(), Rational(1), p), DomainError);
}

TEST(Oracles, EulerProduct) {
  OracleResult r = zeta_euler_product(Rational(8), DirichletChar::trivial(), 64);
  EXPECT_TRUE(r.real().overlaps(ref::zeta(8, 1, 128)));
  EXPECT_LE(r.real().rad().log2_ceil(), -60);
  EXPECT_GT(euler_product_cutoff(Rational(8), 64), 0u);
  EXPECT_EQ(euler_product_cutoff(Rational(2), 4096), 0u);
  // capped: wide but still an enclosure
  OracleResult w = zeta_euler_product(Rational(2), DirichletChar::trivial(), 200);
  EXPECT_TRUE(w.real().overlaps(ref::zeta(2, 1, 256)));
  EXPECT_THROW(zeta_euler_product(Rational(1), DirichletChar::trivial(), 64), DomainError);
}

TEST(Oracles, RamanujanZetaHalf) {
  for (long p : {64L, 1000L}) {
    OracleResult r = ramanujan_zeta_half(p);
    EXPECT_TRUE(r.real().overlaps(ref::zeta(1, 2, p + 64))) << p;
    EXPECT_LE(r.real().rad().log2_ceil(), -p + 2);
  }
}

TEST(Oracles, NaiveIncompleteGamma) {
  for (auto [a, z] : {std::pair{Rational(1, 3), Rational(5, 2)}, {Rational(-2), Rational(3, 4)},
                      {Rational(0), Rational(9)}, {Rational(9, 2), Rational(1, 8)}}) {
    OracleResult r = incgamma_naive(a, Ball::from_rational(z, 300), 256);
    EXPECT_TRUE(r.real().overlaps(ref::gamma_inc(a, z, 320))) << a.to_string();
  }
}
