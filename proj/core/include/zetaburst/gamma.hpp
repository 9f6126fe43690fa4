#pragma once

#include "zetaburst/ball.hpp"
#include "zetaburst/rational.hpp"

namespace zetaburst {

/// Gamma(a) for rational a outside the poles, with relative radius at most
/// 2^-prec. Computed as a complement of Gamma(a', N) for a' = a shifted into
/// [1, 2) and large N; results are cached per a and reused at lower
/// precision. Thread-safe.
Ball gamma_rational(const Rational& a, mpfr_prec_t prec);

/// Euler's constant by the Brent-McMillan series, summed with binary
/// splitting. Cached; thread-safe.
Ball euler_gamma(mpfr_prec_t prec);

}  // namespace zetaburst
