#pragma once

#include <gmpxx.h>

#include <cstdint>

#include "zetaburst/ball.hpp"
#include "zetaburst/binsplit.hpp"
#include "zetaburst/rational.hpp"

namespace zetaburst::detail {

inline constexpr double kLog2e = 1.4426950408889634;
inline constexpr double kLn2 = 0.6931471805599453;

double log2_abs(const BigFloat& x);
double log2_abs(const mpz_class& x);
double log2_abs(const Rational& x);
/// log2 |num/den| for the quotient of two big integers.
double log2_ratio(const mpz_class& num, const mpz_class& den);

/// x = man * 2^exp exactly.
struct Dyadic {
  mpz_class man;
  long exp = 0;
};
Dyadic dyadic(const BigFloat& x);
mpq_class exact_q(const BigFloat& x);

Mag mag_upper(const mpq_class& q);
BigFloat lower_abs(const mpq_class& q);
Mag mag_pow(const Mag& m, std::int64_t n);

/// Ball enclosing num/den.
Ball ratio_ball(const mpz_class& num, const mpz_class& den, mpfr_prec_t prec);

unsigned workers_for(std::int64_t terms);

/// Product of [[x/(a+n+1), 0], [1, 1]] over n in [0, N): entry (1, 0) / den
/// is sum_{n<N} x^n / (a+1)_n.
ScaledMatrix hyp_product(const Rational& a, const Dyadic& x, std::int64_t N);

/// Smallest N (up to a small slack) with hyp_tail_bound(a, x, N) <= 2^target.
std::int64_t choose_hyp_terms(const Rational& a, const BigFloat& x, double target);

}  // namespace zetaburst::detail
