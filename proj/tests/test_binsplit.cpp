#include <gtest/gtest.h>

#include <random>

#include "zetaburst/binsplit.hpp"
#include "zetaburst/errors.hpp"

using namespace zetaburst;

namespace {

RatMatrix factor(std::int64_t n) {
  RatMatrix m(2);
  m.at(0, 0) = Rational(n + 1, 2 * n + 3);
  m.at(0, 1) = Rational(1, n + 1);
  m.at(1, 0) = Rational(-n, 7);
  m.at(1, 1) = Rational(3);
  return m;
}

RatMatrix naive(const MatrixFactory& f, std::int64_t lo, std::int64_t hi) {
  RatMatrix acc = RatMatrix::identity(f(lo).dim());
  for (std::int64_t n = lo; n < hi; ++n) acc = f(n) * acc;
  return acc;
}

}  // namespace

TEST(Binsplit, MatchesLeftFold) {
  for (std::int64_t hi : {1, 2, 3, 17, 64, 101}) {
    EXPECT_TRUE(bsplit_product(factor, 0, hi) == naive(factor, 0, hi)) << hi;
    EXPECT_TRUE(bsplit_product(factor, 5, 5 + hi) == naive(factor, 5, 5 + hi)) << hi;
  }
}

TEST(Binsplit, ThreeByThreeRandom) {
  std::mt19937_64 rng(5);
  std::vector<RatMatrix> ms;
  std::uniform_int_distribution<long> d(-9, 9);
  for (int i = 0; i < 40; ++i) {
    RatMatrix m(3);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) m.at(r, c) = Rational(d(rng), 1 + (d(rng) + 9));
    }
    ms.push_back(m);
  }
  MatrixFactory f = [&](std::int64_t n) { return ms[static_cast<std::size_t>(n)]; };
  EXPECT_TRUE(bsplit_product(f, 0, 40) == naive(f, 0, 40));
}

TEST(Binsplit, ParallelIsIdentical) {
  RatMatrix serial = bsplit_product(factor, 1, 300);
  for (unsigned w : {2u, 3u, 8u}) EXPECT_TRUE(bsplit_parallel(factor, 1, 300, w) == serial);
}

TEST(Binsplit, EmptyRangeAndErrors) {
  EXPECT_TRUE(bsplit_product(factor, 4, 4) == RatMatrix::identity(2));
  EXPECT_THROW(bsplit_product(factor, 5, 4), PreconditionError);
}

TEST(Binsplit, ScaledRoundTrip) {
  RatMatrix m = factor(6);
  EXPECT_TRUE(to_rational(clear_denominators(m)) == m);
}
