#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zetaburst/ball.hpp"
#include "zetaburst/chars.hpp"
#include "zetaburst/gamma.hpp"
#include "zetaburst/rational.hpp"

namespace zetaburst {

struct LValueRequest {
  DirichletChar chi = DirichletChar::trivial();
  Rational s;
  long prec = 64;  // bits
  Rational alpha = Rational(1);
};

/// One of the two incomplete-gamma sums
///   sum_n chi(n) n^-s Gamma((s+delta)/2, pi n^2 alpha / q)          (series 1)
///   sum_n conj chi(n) n^(s-1) Gamma((1-s+delta)/2, pi n^2 / (alpha q))  (series 2)
struct SeriesPlan {
  std::int64_t terms = 0;   // N: terms n = 1 .. N-1 are summed
  Mag tail;                 // bound for the remainder from n = N on
  Rational a;               // the gamma parameter
  Rational C;               // C = a (real part)
  Ball D;                   // pi alpha / q, resp. pi / (alpha q)
  long tol_exp = 0;         // absolute tolerance for each term
  std::vector<long> prec;   // working precision p_n for term n = 1 + i
};

struct AFEPlan {
  SeriesPlan series[2];
  long sum_tol_exp = 0;  // absolute tolerance for Gamma((s+delta)/2) L
  bool symmetric = false;
  mpfr_prec_t prec = 0;  // assembly precision
};

struct LValue {
  ComplexBall value;
  bool is_real = true;
  AFEPlan plan;
  /// The real enclosure; throws PreconditionError for complex values.
  const Ball& real() const;
};

/// Upper bound for sum_{n>=N} |term_n| of the given series (1 or 2),
/// excluding the prefactor of series 2. nullopt when the hypotheses
/// D N^2 > C - 1 and B_0(C, D N^2) < 1 fail ("increase N").
std::optional<Mag> tail_bound(int series, const Rational& s, int delta, std::uint64_t q,
                              const Rational& alpha, std::int64_t N);

/// Requires a primitive character.
AFEPlan choose_truncation(const LValueRequest& req);

/// L(s, chi) for primitive chi with radius <= 2^-prec max(1, |L|).
LValue afe_eval(const LValueRequest& req);

/// L(s, chi) for any chi via its primitive part.
LValue lfunc_eval(const LValueRequest& req);

}  // namespace zetaburst
