#pragma once

#include <cstdint>
#include <string>

#include "zetaburst/ball.hpp"
#include "zetaburst/chars.hpp"
#include "zetaburst/rational.hpp"

namespace zetaburst {

/// Reference computations that share no series code with the AFE and
/// bit-burst paths. Slow, straightforward, rigorous.
struct OracleResult {
  ComplexBall value;
  std::string method;
  std::int64_t terms = 0;
  double seconds = 0.0;

  const Ball& real() const { return value.re; }
};

/// Hurwitz zeta(s, a), 0 < a <= 1, by Euler-Maclaurin summation.
OracleResult hurwitz_em(const Rational& s, const Rational& a, long p);

/// L(s, chi) = q^-s sum_a chi(a) zeta(s, a/q).
OracleResult l_em(const DirichletChar& chi, const Rational& s, long p);

/// Prime cutoff P the Euler product needs for 2^-p at s > 1, or 0 when it
/// exceeds the cap of 2^22.
std::uint64_t euler_product_cutoff(const Rational& s, long p);

/// prod_{p <= P} (1 - chi(p) p^-s)^-1 for s > 1. P is capped, so at high
/// precision and s close to 1 the radius reflects the cap.
OracleResult zeta_euler_product(const Rational& s, const DirichletChar& chi, long p);

/// zeta(1/2) from Ramanujan's two-sided series with alpha beta = 4 pi^3.
OracleResult ramanujan_zeta_half(long p);

/// Gamma(a, z) by plain term-by-term summation of the series at 0, with
/// Gamma(a) and Euler's constant taken from MPFR.
OracleResult incgamma_naive(const Rational& a, const Ball& z, long p);

}  // namespace zetaburst
