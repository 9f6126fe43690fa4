#pragma once

#include <mpfr.h>

#include <string>
#include <string_view>

#include "zetaburst/bigfloat.hpp"
#include "zetaburst/rational.hpp"

namespace zetaburst {

/// Midpoint-radius enclosure [mid - rad, mid + rad] of a real number.
///
/// Every operation below returns a ball containing the exact image of its
/// input sets. Midpoints are rounded to the requested precision and the
/// rounding error is folded into the radius.
class Ball {
 public:
  Ball() : mid_(2) {}
  explicit Ball(BigFloat mid, Mag rad = Mag()) : mid_(std::move(mid)), rad_(std::move(rad)) {}

  static Ball from_si(long v) { return Ball(BigFloat::from_si(v)); }
  static Ball from_z(const mpz_class& v, mpfr_prec_t prec);
  static Ball from_rational(const Rational& q, mpfr_prec_t prec);
  /// The ball [0 +/- m].
  static Ball from_error(const Mag& m) { return Ball(BigFloat(2), m); }

  const BigFloat& mid() const { return mid_; }
  const Mag& rad() const { return rad_; }

  bool is_exact() const { return rad_.is_zero(); }
  bool is_finite() const { return mid_.is_finite() && rad_.is_finite(); }
  bool contains_zero() const;
  /// Strictly positive / negative on the whole ball.
  bool is_positive() const;
  bool is_negative() const;

  bool contains(const Ball& inner) const;
  bool contains(const Rational& q) const;
  bool contains(const BigFloat& x) const { return contains(Ball(x)); }
  bool overlaps(const Ball& other) const;

  /// Upper bound for |x| over the ball.
  Mag upper_abs() const;
  /// Lower bound for |x| over the ball (zero when the ball contains 0).
  BigFloat lower_abs() const;
  /// Endpoints rounded outward.
  BigFloat lower() const;
  BigFloat upper() const;

  /// ceil(log2 |x|) upper bound; LONG_MIN for the exact zero.
  long mag_bits() const { return upper_abs().log2_ceil(); }
  /// Approximate number of correct bits relative to |mid|.
  long rel_accuracy_bits() const;

  void add_error(const Mag& e) { rad_ += e; }

 private:
  BigFloat mid_;
  Mag rad_;
};

Ball neg(const Ball& x);
Ball add(const Ball& x, const Ball& y, mpfr_prec_t prec);
Ball sub(const Ball& x, const Ball& y, mpfr_prec_t prec);
Ball mul(const Ball& x, const Ball& y, mpfr_prec_t prec);
/// Throws DomainError when y contains zero.
Ball div(const Ball& x, const Ball& y, mpfr_prec_t prec);
Ball sqrt(const Ball& x, mpfr_prec_t prec);
Ball mul(const Ball& x, const Rational& q, mpfr_prec_t prec);
Ball div(const Ball& x, const Rational& q, mpfr_prec_t prec);
/// Exact scaling by 2^e.
Ball mul_2exp(const Ball& x, long e);
/// Rounds the midpoint to prec bits, widening the radius accordingly.
Ball round(const Ball& x, mpfr_prec_t prec);

Ball exp(const Ball& x, mpfr_prec_t prec);
Ball log(const Ball& x, mpfr_prec_t prec);
Ball pow_si(const Ball& x, long n, mpfr_prec_t prec);
/// x^e for rational e; non-integer e requires x strictly positive.
Ball pow_rational(const Ball& x, const Rational& e, mpfr_prec_t prec);
Ball cos(const Ball& x, mpfr_prec_t prec);
Ball sin(const Ball& x, mpfr_prec_t prec);
Ball cosh(const Ball& x, mpfr_prec_t prec);
Ball atan(const Ball& x, mpfr_prec_t prec);
Ball const_pi(mpfr_prec_t prec);

enum class BallOp { add, sub, mul, div, sqrt, neg };
enum class ElemFn { exp, log, pow_rational, cos, sin, cosh, atan };

/// Table-driven entry points; `y` is ignored by the unary ops.
Ball ball_arith(BallOp op, const Ball& x, const Ball& y, mpfr_prec_t prec);
Ball elem_eval(ElemFn f, const Ball& x, mpfr_prec_t prec, const Rational& e = Rational(0));

/// "+d.ddd...e+X +/- r" with `digits` significant digits; the printed ball
/// contains x.
std::string to_decimal(const Ball& x, int digits);
/// Parses the format written by to_decimal (the "+/- r" part is optional).
Ball parse_decimal(std::string_view text, mpfr_prec_t prec);

/// Rectangular complex enclosure.
struct ComplexBall {
  Ball re;
  Ball im;

  static ComplexBall real(Ball x) { return {std::move(x), Ball()}; }
  bool is_real() const { return im.is_exact() && im.mid().is_zero(); }
  bool overlaps(const ComplexBall& o) const { return re.overlaps(o.re) && im.overlaps(o.im); }
  bool contains(const ComplexBall& o) const { return re.contains(o.re) && im.contains(o.im); }
  /// Upper bound for the modulus.
  Mag upper_abs() const;
};

ComplexBall add(const ComplexBall& x, const ComplexBall& y, mpfr_prec_t prec);
ComplexBall sub(const ComplexBall& x, const ComplexBall& y, mpfr_prec_t prec);
ComplexBall mul(const ComplexBall& x, const ComplexBall& y, mpfr_prec_t prec);
ComplexBall mul(const ComplexBall& x, const Ball& y, mpfr_prec_t prec);
ComplexBall div(const ComplexBall& x, const Ball& y, mpfr_prec_t prec);
ComplexBall div(const ComplexBall& x, const ComplexBall& y, mpfr_prec_t prec);
ComplexBall conj(const ComplexBall& x);
ComplexBall neg(const ComplexBall& x);
/// |x|^2 as a real ball.
Ball norm(const ComplexBall& x, mpfr_prec_t prec);
/// e^(2 pi i k / n), k and n with n > 0.
ComplexBall exp_2pi_i(const Rational& t, mpfr_prec_t prec);

std::string to_decimal(const ComplexBall& x, int digits);

}  // namespace zetaburst
