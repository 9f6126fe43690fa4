#include <gtest/gtest.h>

#include <numeric>

#include "zetaburst/chars.hpp"
#include "zetaburst/errors.hpp"

using namespace zetaburst;

namespace {

std::vector<DirichletChar> all_chars(std::uint64_t q) {
  std::vector<DirichletChar> out;
  for (std::uint64_t n = 1; n <= q; ++n) {
    if (std::gcd(n, q) == 1) out.push_back(DirichletChar::conrey(q, n));
  }
  return out;
}

// Smallest f | q such that chi is trivial on units congruent to 1 mod f.
std::uint64_t brute_conductor(const DirichletChar& chi) {
  const std::uint64_t q = chi.modulus();
  for (std::uint64_t f = 1; f <= q; ++f) {
    if (q % f != 0) continue;
    bool ok = true;
    for (std::uint64_t m = 1; m <= q && ok; ++m) {
      if (std::gcd(m, q) != 1 || m % f != 1 % f) continue;
      ok = chi(m)->is_one();
    }
    if (ok) return f;
  }
  return q;
}

}  // namespace

TEST(Chars, KnownLabels) {
  DirichletChar c4 = DirichletChar::parse("4.3");
  EXPECT_EQ(c4.modulus(), 4u);
  EXPECT_EQ(c4.parity(), 1);
  EXPECT_TRUE(c4.is_real());
  EXPECT_TRUE(c4.is_primitive());
  EXPECT_FALSE(c4(2).has_value());
  EXPECT_EQ(c4(3)->k * 2, c4(3)->ord);

  DirichletChar c8 = DirichletChar::parse("8.7");
  EXPECT_EQ(c8.conductor(), 4u);
  EXPECT_FALSE(c8.is_primitive());

  DirichletChar t = DirichletChar::trivial();
  EXPECT_TRUE(t.is_principal());
  EXPECT_EQ(t.label(), "1.1");

  DirichletChar c23 = DirichletChar::parse("23.19");
  EXPECT_FALSE(c23.is_real());
  EXPECT_TRUE(c23.is_primitive());
}

TEST(Chars, MalformedLabels) {
  EXPECT_THROW(DirichletChar::parse("4.2"), DomainError);
  EXPECT_THROW(DirichletChar::parse("abc"), DomainError);
  EXPECT_THROW(DirichletChar::parse("0.1"), DomainError);
  EXPECT_THROW(DirichletChar::parse("5"), DomainError);
}

TEST(Chars, MultiplicativeAndPeriodic) {
  for (std::uint64_t q : {5u, 8u, 12u, 15u, 23u, 36u}) {
    for (const auto& chi : all_chars(q)) {
      for (std::uint64_t a = 1; a < 2 * q; ++a) {
        for (std::uint64_t b = 1; b < q; ++b) {
          auto ab = chi(a * b);
          auto ca = chi(a);
          auto cb = chi(b);
          ASSERT_EQ(ab.has_value(), ca.has_value() && cb.has_value());
          if (ab) EXPECT_TRUE(*ab == *ca * *cb) << chi.label();
        }
        EXPECT_EQ(chi(a).has_value(), chi(a + q).has_value());
      }
    }
  }
}

TEST(Chars, Orthogonality) {
  for (std::uint64_t q : {7u, 9u, 20u}) {
    auto chars = all_chars(q);
    for (std::uint64_t m = 1; m < q; ++m) {
      if (std::gcd(m, q) != 1) continue;
      ComplexBall acc = ComplexBall::real(Ball::from_si(0));
      for (const auto& chi : chars) acc = add(acc, to_complex(*chi(m), 64), 64);
      Rational expect = m == 1 ? Rational(static_cast<long>(chars.size())) : Rational(0);
      EXPECT_TRUE(acc.re.contains(expect)) << q << " " << m;
      EXPECT_TRUE(acc.im.contains(Rational(0)));
    }
  }
}

TEST(Chars, ConductorMatchesBruteForce) {
  for (std::uint64_t q : {8u, 12u, 16u, 45u, 60u}) {
    for (const auto& chi : all_chars(q)) {
      EXPECT_EQ(chi.conductor(), brute_conductor(chi)) << chi.label();
      PrimitivePart pp = conductor_and_primitive_part(chi);
      EXPECT_EQ(pp.conductor, chi.conductor());
      EXPECT_TRUE(pp.primitive.is_primitive());
      for (std::uint64_t m = 1; m < q; ++m) {
        if (auto v = chi(m)) EXPECT_TRUE(*v == *pp.primitive(m)) << chi.label();
      }
    }
  }
}

TEST(Chars, GaussSumNorm) {
  for (std::uint64_t q : {3u, 4u, 5u, 8u, 11u, 23u, 25u}) {
    for (const auto& chi : all_chars(q)) {
      if (!chi.is_primitive()) continue;
      EXPECT_TRUE(norm(gauss_sum(chi, 128), 128).contains(Rational(static_cast<long>(q))))
          << chi.label();
      EXPECT_TRUE(norm(root_number(chi, 128), 128).contains(Rational(1))) << chi.label();
    }
  }
}

TEST(Chars, RealRootNumbersAreOne) {
  for (const char* label : {"4.3", "8.5", "8.3", "5.4", "12.11"}) {
    ComplexBall w = root_number(DirichletChar::parse(label), 128);
    EXPECT_TRUE(w.re.contains(Rational(1))) << label;
    EXPECT_TRUE(w.im.contains(Rational(0))) << label;
  }
}

TEST(Chars, ConjugateAndParity) {
  for (const auto& chi : all_chars(23)) {
    auto c = chi.conj();
    EXPECT_EQ(c.parity(), chi.parity());
    for (std::uint64_t m = 1; m < 23; ++m) EXPECT_TRUE((*chi(m) * *c(m)).is_one());
    auto minus = chi(22);
    EXPECT_EQ(minus->is_one(), chi.parity() == 0);
  }
}

TEST(Chars, Factor) {
  auto f = factor_u64(360);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0], (std::pair<std::uint64_t, unsigned>{2, 3}));
  EXPECT_EQ(f[2], (std::pair<std::uint64_t, unsigned>{5, 1}));
}
