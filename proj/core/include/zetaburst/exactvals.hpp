#pragma once

#include <gmpxx.h>

#include <cstddef>

#include "zetaburst/ball.hpp"

namespace zetaburst {

enum class ExactAlgorithm { afe, ep };

struct ExactNumberResult {
  long n = 0;
  mpq_class value;
  std::size_t numerator_digits = 0;
  long prec = 0;  // bits of working precision used
  ExactAlgorithm algorithm = ExactAlgorithm::afe;  // the one actually used
  double seconds = 0.0;
};

/// B_n with B_1 = -1/2. Even n >= 2 go through zeta(n). With
/// ExactAlgorithm::ep the Euler product is used when its prime cutoff is
/// small enough, and the AFE otherwise.
ExactNumberResult bernoulli_exact(long n, ExactAlgorithm alg = ExactAlgorithm::afe);
/// E_n (E_0 = 1, E_2 = -1, ...). Even n go through beta(n+1).
ExactNumberResult euler_exact(long n, ExactAlgorithm alg = ExactAlgorithm::afe);

/// prod of primes p with (p-1) | n.
mpz_class von_staudt_denominator(long n);

/// The Landau-Ramanujan constant with radius <= 2^-p.
Ball landau_ramanujan(long p);

/// Product truncated after the factor with s = 2^depth; the radius covers
/// the omitted factors.
Ball landau_ramanujan_at_depth(long p, int depth);

/// Smallest depth whose tail bound is below 2^(-p-4).
int landau_ramanujan_depth(long p);

}  // namespace zetaburst
