#include "zetaburst/ball.hpp"

#include <climits>
#include <cstdlib>
#include <utility>

#include "zetaburst/errors.hpp"

namespace zetaburst {

namespace {

constexpr mpfr_prec_t kBoundPrec = 64;

// Error bound for a correctly rounded (RNDN) result y with ternary value t.
Mag rounding_error(int ternary, const BigFloat& y) {
  if (ternary == 0) return Mag();
  if (y.is_zero()) throw ResourceError("floating-point underflow in ball arithmetic");
  return Mag::ulp(y);
}

BigFloat rad_as_bigfloat(const Mag& m) {
  BigFloat r(Mag::kPrec);
  mpfr_set(r.get(), m.get(), MPFR_RNDU);
  return r;
}

// |a - b| rounded in direction rnd.
BigFloat abs_diff(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) {
  BigFloat d(kBoundPrec);
  // The sign of a - b is exact, so rounding |a-b| in direction rnd is
  // rounding a-b toward/away from zero.
  int s = mpfr_cmp(a.get(), b.get());
  if (s >= 0) {
    mpfr_sub(d.get(), a.get(), b.get(), rnd);
  } else {
    mpfr_sub(d.get(), b.get(), a.get(), rnd);
  }
  return d;
}

// Builds a ball from a freshly rounded midpoint.
Ball finish(BigFloat y, int ternary, Mag rad) {
  rad += rounding_error(ternary, y);
  return Ball(std::move(y), std::move(rad));
}


}  // namespace

// ---------------------------------------------------------------- Ball

Ball Ball::from_z(const mpz_class& v, mpfr_prec_t prec) {
  BigFloat y(prec);
  int t = mpfr_set_z(y.get(), v.get_mpz_t(), MPFR_RNDN);
  return finish(std::move(y), t, Mag());
}

Ball Ball::from_rational(const Rational& q, mpfr_prec_t prec) {
  BigFloat y(prec);
  int t = mpfr_set_q(y.get(), q.value().get_mpq_t(), MPFR_RNDN);
  return finish(std::move(y), t, Mag());
}

bool Ball::contains_zero() const { return mpfr_cmpabs(mid_.get(), rad_.get()) <= 0; }

bool Ball::is_positive() const {
  return mid_.sign() > 0 && mpfr_cmpabs(mid_.get(), rad_.get()) > 0;
}

bool Ball::is_negative() const {
  return mid_.sign() < 0 && mpfr_cmpabs(mid_.get(), rad_.get()) > 0;
}

bool Ball::contains(const Ball& inner) const {
  BigFloat d = abs_diff(mid_, inner.mid_, MPFR_RNDU);
  mpfr_add(d.get(), d.get(), inner.rad_.get(), MPFR_RNDU);
  return mpfr_cmp(d.get(), rad_.get()) <= 0;
}

bool Ball::contains(const Rational& q) const {
  mpq_class m;
  mpfr_get_q(m.get_mpq_t(), mid_.get());
  mpq_class d = abs(m - q.value());
  mpq_class r;
  mpfr_get_q(r.get_mpq_t(), rad_.get());
  return d <= r;
}

bool Ball::overlaps(const Ball& other) const {
  BigFloat d = abs_diff(mid_, other.mid_, MPFR_RNDD);
  BigFloat s(kBoundPrec);
  mpfr_add(s.get(), rad_.get(), other.rad_.get(), MPFR_RNDU);
  return mpfr_cmp(d.get(), s.get()) <= 0;
}

Mag Ball::upper_abs() const { return Mag::abs_upper(mid_) + rad_; }

BigFloat Ball::lower_abs() const {
  BigFloat r(mid_.prec() + 2);
  if (contains_zero()) return r;
  mpfr_abs(r.get(), mid_.get(), MPFR_RNDD);
  mpfr_sub(r.get(), r.get(), rad_.get(), MPFR_RNDD);
  return r;
}

BigFloat Ball::lower() const {
  BigFloat r(mid_.prec() + 2);
  mpfr_sub(r.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  return r;
}

BigFloat Ball::upper() const {
  BigFloat r(mid_.prec() + 2);
  mpfr_add(r.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return r;
}

long Ball::rel_accuracy_bits() const {
  if (rad_.is_zero()) return LONG_MAX;
  if (mid_.is_zero()) return -rad_.log2_ceil();
  return mid_.exponent() - rad_.log2_ceil();
}

// ---------------------------------------------------------- arithmetic

Ball neg(const Ball& x) {
  BigFloat y(x.mid().prec());
  mpfr_neg(y.get(), x.mid().get(), MPFR_RNDN);
  return Ball(std::move(y), x.rad());
}

Ball add(const Ball& x, const Ball& y, mpfr_prec_t prec) {
  BigFloat z(prec);
  int t = mpfr_add(z.get(), x.mid().get(), y.mid().get(), MPFR_RNDN);
  return finish(std::move(z), t, x.rad() + y.rad());
}

Ball sub(const Ball& x, const Ball& y, mpfr_prec_t prec) {
  BigFloat z(prec);
  int t = mpfr_sub(z.get(), x.mid().get(), y.mid().get(), MPFR_RNDN);
  return finish(std::move(z), t, x.rad() + y.rad());
}

Ball mul(const Ball& x, const Ball& y, mpfr_prec_t prec) {
  BigFloat z(prec);
  int t = mpfr_mul(z.get(), x.mid().get(), y.mid().get(), MPFR_RNDN);
  Mag r = Mag::abs_upper(x.mid()) * y.rad() + Mag::abs_upper(y.mid()) * x.rad() +
          x.rad() * y.rad();
  return finish(std::move(z), t, std::move(r));
}

Ball div(const Ball& x, const Ball& y, mpfr_prec_t prec) {
  if (y.contains_zero()) throw DomainError("division by a ball containing zero");
  BigFloat z(prec);
  int t = mpfr_div(z.get(), x.mid().get(), y.mid().get(), MPFR_RNDN);
  Mag r;
  if (!x.rad().is_zero() || !y.rad().is_zero()) {
    Mag num = x.rad() * Mag::abs_upper(y.mid()) + Mag::abs_upper(x.mid()) * y.rad();
    BigFloat den(kBoundPrec);
    mpfr_abs(den.get(), y.mid().get(), MPFR_RNDD);
    BigFloat gap = y.lower_abs();
    mpfr_mul(den.get(), den.get(), gap.get(), MPFR_RNDD);
    r = num.div_lower(den);
  }
  return finish(std::move(z), t, std::move(r));
}

Ball sqrt(const Ball& x, mpfr_prec_t prec) {
  BigFloat lo = x.lower();
  if (lo.sign() < 0) throw DomainError("square root of a ball with negative part");
  BigFloat z(prec);
  int t = mpfr_sqrt(z.get(), x.mid().get(), MPFR_RNDN);
  Mag r;
  if (!x.rad().is_zero()) {
    if (x.mid().is_zero()) {
      BigFloat s = rad_as_bigfloat(x.rad());
      mpfr_sqrt(s.get(), s.get(), MPFR_RNDU);
      r = MagAccess::from_upper(std::move(s));
    } else {
      BigFloat den(kBoundPrec), t2(kBoundPrec);
      mpfr_sqrt(den.get(), x.mid().get(), MPFR_RNDD);
      mpfr_sqrt(t2.get(), lo.get(), MPFR_RNDD);
      mpfr_add(den.get(), den.get(), t2.get(), MPFR_RNDD);
      r = x.rad().div_lower(den);
    }
  }
  return finish(std::move(z), t, std::move(r));
}

Ball mul(const Ball& x, const Rational& q, mpfr_prec_t prec) {
  if (q.is_integer() && mpz_fits_slong_p(q.num().get_mpz_t())) {
    BigFloat z(prec);
    int t = mpfr_mul_si(z.get(), x.mid().get(), q.num().get_si(), MPFR_RNDN);
    return finish(std::move(z), t, x.rad() * Mag::abs_upper(q.num()));
  }
  return mul(x, Ball::from_rational(q, prec + 8), prec);
}

Ball div(const Ball& x, const Rational& q, mpfr_prec_t prec) {
  if (q.is_zero()) throw DomainError("division by zero");
  if (q.is_integer() && mpz_fits_slong_p(q.num().get_mpz_t())) {
    BigFloat z(prec);
    int t = mpfr_div_si(z.get(), x.mid().get(), q.num().get_si(), MPFR_RNDN);
    BigFloat d = BigFloat::from_z(q.num());
    mpfr_abs(d.get(), d.get(), MPFR_RNDN);
    return finish(std::move(z), t, x.rad().div_lower(d));
  }
  return div(x, Ball::from_rational(q, prec + 8), prec);
}

Ball mul_2exp(const Ball& x, long e) {
  BigFloat z(x.mid().prec());
  mpfr_mul_2si(z.get(), x.mid().get(), e, MPFR_RNDN);
  return Ball(std::move(z), x.rad().mul_2exp(e));
}

Ball round(const Ball& x, mpfr_prec_t prec) {
  BigFloat z(prec);
  int t = mpfr_set(z.get(), x.mid().get(), MPFR_RNDN);
  return finish(std::move(z), t, x.rad());
}

// ---------------------------------------------------------- elementary

Ball exp(const Ball& x, mpfr_prec_t prec) {
  BigFloat z(prec);
  int t = mpfr_exp(z.get(), x.mid().get(), MPFR_RNDN);
  Mag r;
  if (!x.rad().is_zero()) {
    // r * sup exp = r * exp(mid + r)
    BigFloat s = x.upper();
    BigFloat e(kBoundPrec);
    mpfr_exp(e.get(), s.get(), MPFR_RNDU);
    r = x.rad() * MagAccess::from_upper(std::move(e));
  }
  return finish(std::move(z), t, std::move(r));
}

Ball log(const Ball& x, mpfr_prec_t prec) {
  if (!x.is_positive()) throw DomainError("logarithm of a ball that is not strictly positive");
  BigFloat z(prec);
  int t = mpfr_log(z.get(), x.mid().get(), MPFR_RNDN);
  Mag r;
  if (!x.rad().is_zero()) r = x.rad().div_lower(x.lower());
  return finish(std::move(z), t, std::move(r));
}

Ball pow_si(const Ball& x, long n, mpfr_prec_t prec) {
  if (n == 0) return Ball::from_si(1);
  if (n < 0) {
    if (n == LONG_MIN) throw DomainError("exponent out of range");
    return div(Ball::from_si(1), pow_si(x, -n, prec + 8), prec);
  }
  unsigned long m = static_cast<unsigned long>(n);
  mpfr_prec_t wp = prec + 8 + static_cast<mpfr_prec_t>(64 - __builtin_clzl(m));
  Ball base = x;
  Ball acc = Ball::from_si(1);
  bool first = true;
  while (m != 0) {
    if (m & 1UL) {
      acc = first ? base : mul(acc, base, wp);
      first = false;
    }
    m >>= 1;
    if (m != 0) base = mul(base, base, wp);
  }
  return round(acc, prec);
}

Ball pow_rational(const Ball& x, const Rational& e, mpfr_prec_t prec) {
  if (e.is_zero()) return Ball::from_si(1);
  if (e.is_integer()) {
    if (!mpz_fits_slong_p(e.num().get_mpz_t())) throw DomainError("exponent out of range");
    return pow_si(x, e.num().get_si(), prec);
  }
  if (!x.is_positive()) {
    throw DomainError("rational power of a ball that is not strictly positive");
  }
  if (!mpz_fits_slong_p(e.num().get_mpz_t()) || !mpz_fits_ulong_p(e.den().get_mpz_t())) {
    throw DomainError("exponent out of range");
  }
  long p = e.num().get_si();
  unsigned long q = e.den().get_ui();
  mpfr_prec_t wp = prec + 16 + static_cast<mpfr_prec_t>(64 - __builtin_clzl(static_cast<unsigned long>(std::labs(p))));

  BigFloat root(wp);
  int t = mpfr_rootn_ui(root.get(), x.mid().get(), q, MPFR_RNDN);
  Ball rb = finish(std::move(root), t, Mag());
  Ball y = pow_si(rb, p, wp);

  if (!x.rad().is_zero()) {
    // Mean value theorem: r * |e| * sup t^(e-1) over [lo, hi]; t^(e-1) is
    // monotone so the sup sits at an endpoint.
    Rational em1 = e - Rational(1);
    Ball lo = pow_rational(Ball(x.lower()), em1, kBoundPrec);
    Ball hi = pow_rational(Ball(x.upper()), em1, kBoundPrec);
    Mag sup = max(lo.upper_abs(), hi.upper_abs());
    Mag ae = Mag::abs_upper(Ball::from_rational(abs(e), kBoundPrec).upper());
    y.add_error(x.rad() * ae * sup);
  }
  return round(y, prec);
}

Ball cos(const Ball& x, mpfr_prec_t prec) {
  BigFloat z(prec);
  int t = mpfr_cos(z.get(), x.mid().get(), MPFR_RNDN);
  return finish(std::move(z), t, x.rad());
}

Ball sin(const Ball& x, mpfr_prec_t prec) {
  BigFloat z(prec);
  int t = mpfr_sin(z.get(), x.mid().get(), MPFR_RNDN);
  return finish(std::move(z), t, x.rad());
}

Ball cosh(const Ball& x, mpfr_prec_t prec) {
  BigFloat z(prec);
  int t = mpfr_cosh(z.get(), x.mid().get(), MPFR_RNDN);
  Mag r;
  if (!x.rad().is_zero()) {
    // |sinh| <= cosh on |t| <= |mid| + r
    Mag a = x.upper_abs();
    BigFloat c(kBoundPrec);
    mpfr_cosh(c.get(), a.get(), MPFR_RNDU);
    r = x.rad() * MagAccess::from_upper(std::move(c));
  }
  return finish(std::move(z), t, std::move(r));
}

Ball atan(const Ball& x, mpfr_prec_t prec) {
  BigFloat z(prec);
  int t = mpfr_atan(z.get(), x.mid().get(), MPFR_RNDN);
  return finish(std::move(z), t, x.rad());
}

Ball const_pi(mpfr_prec_t prec) {
  BigFloat z(prec);
  int t = mpfr_const_pi(z.get(), MPFR_RNDN);
  return finish(std::move(z), t, Mag());
}

Ball ball_arith(BallOp op, const Ball& x, const Ball& y, mpfr_prec_t prec) {
  switch (op) {
    case BallOp::add: return add(x, y, prec);
    case BallOp::sub: return sub(x, y, prec);
    case BallOp::mul: return mul(x, y, prec);
    case BallOp::div: return div(x, y, prec);
    case BallOp::sqrt: return sqrt(x, prec);
    case BallOp::neg: return neg(x);
  }
  throw PreconditionError("unknown ball operation");
}

Ball elem_eval(ElemFn f, const Ball& x, mpfr_prec_t prec, const Rational& e) {
  switch (f) {
    case ElemFn::exp: return exp(x, prec);
    case ElemFn::log: return log(x, prec);
    case ElemFn::pow_rational: return pow_rational(x, e, prec);
    case ElemFn::cos: return cos(x, prec);
    case ElemFn::sin: return sin(x, prec);
    case ElemFn::cosh: return cosh(x, prec);
    case ElemFn::atan: return atan(x, prec);
  }
  throw PreconditionError("unknown elementary function");
}

// ------------------------------------------------------- serialization

std::string to_decimal(const Ball& x, int digits) {
  if (digits < 1) digits = 1;
  std::string mid_text;
  Mag err = x.rad();
  if (x.mid().is_zero()) {
    mid_text = "+0e+0";
  } else {
    mpfr_exp_t e10;
    char* s = mpfr_get_str(nullptr, &e10, 10, static_cast<size_t>(digits), x.mid().get(), MPFR_RNDN);
    std::string m(s);
    mpfr_free_str(s);
    char sign = '+';
    if (m.front() == '-') {
      sign = '-';
      m.erase(0, 1);
    }
    long ex = static_cast<long>(e10) - 1;
    mid_text = std::string(1, sign) + m.substr(0, 1);
    if (m.size() > 1) mid_text += "." + m.substr(1);
    mid_text += (ex < 0 ? "e-" : "e+") + std::to_string(std::labs(ex));

    bool exact = false;
    if (x.rad().is_zero()) {
      // The decimal is exact only when it reproduces the dyadic midpoint.
      mpq_class mq;
      mpfr_get_q(mq.get_mpq_t(), x.mid().get());
      exact = Rational::parse(mid_text.substr(mid_text[0] == '+' ? 1 : 0)).value() == mq;
    }
    if (!exact) {
      // Half a unit in the last printed digit, rounded up to a full unit.
      BigFloat unit(Mag::kPrec), k(64);
      mpfr_set_si(k.get(), static_cast<long>(e10) - digits, MPFR_RNDN);
      mpfr_ui_pow(unit.get(), 10, k.get(), MPFR_RNDU);
      err += MagAccess::from_upper(std::move(unit));
    }
  }
  std::string rad_text;
  if (err.is_zero()) {
    rad_text = "0";
  } else {
    mpfr_exp_t e10;
    char* s = mpfr_get_str(nullptr, &e10, 10, 2, err.get(), MPFR_RNDU);
    std::string m(s);
    mpfr_free_str(s);
    long ex = static_cast<long>(e10) - 1;
    rad_text = m.substr(0, 1) + "." + m.substr(1) + (ex < 0 ? "e-" : "e+") + std::to_string(std::labs(ex));
  }
  return mid_text + " +/- " + rad_text;
}

Ball parse_decimal(std::string_view text, mpfr_prec_t prec) {
  std::string t(text);
  std::string mid_part = t, rad_part;
  auto pos = t.find("+/-");
  if (pos != std::string::npos) {
    mid_part = t.substr(0, pos);
    rad_part = t.substr(pos + 3);
  }
  auto trim = [](std::string& s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  };
  trim(mid_part);
  trim(rad_part);
  if (mid_part.empty()) throw DomainError("malformed decimal: '" + t + "'");

  BigFloat m(prec);
  char* end = nullptr;
  int tern = mpfr_strtofr(m.get(), mid_part.c_str(), &end, 10, MPFR_RNDN);
  if (end == mid_part.c_str() || *end != '\0' || !m.is_finite()) {
    throw DomainError("malformed decimal: '" + t + "'");
  }
  Mag r = rounding_error(tern, m);
  if (!rad_part.empty()) {
    BigFloat rv(Mag::kPrec);
    mpfr_strtofr(rv.get(), rad_part.c_str(), &end, 10, MPFR_RNDU);
    if (end == rad_part.c_str() || *end != '\0' || rv.sign() < 0) {
      throw DomainError("malformed radius: '" + t + "'");
    }
    r += MagAccess::from_upper(std::move(rv));
  }
  return Ball(std::move(m), std::move(r));
}

// ------------------------------------------------------- ComplexBall

Mag ComplexBall::upper_abs() const {
  Mag a = re.upper_abs();
  Mag b = im.upper_abs();
  BigFloat s(kBoundPrec), t(kBoundPrec);
  mpfr_sqr(s.get(), a.get(), MPFR_RNDU);
  mpfr_sqr(t.get(), b.get(), MPFR_RNDU);
  mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDU);
  mpfr_sqrt(s.get(), s.get(), MPFR_RNDU);
  return MagAccess::from_upper(std::move(s));
}

ComplexBall add(const ComplexBall& x, const ComplexBall& y, mpfr_prec_t prec) {
  return {add(x.re, y.re, prec), add(x.im, y.im, prec)};
}

ComplexBall sub(const ComplexBall& x, const ComplexBall& y, mpfr_prec_t prec) {
  return {sub(x.re, y.re, prec), sub(x.im, y.im, prec)};
}

ComplexBall mul(const ComplexBall& x, const ComplexBall& y, mpfr_prec_t prec) {
  if (y.is_real()) return mul(x, y.re, prec);
  if (x.is_real()) return mul(y, x.re, prec);
  mpfr_prec_t wp = prec + 4;
  return {round(sub(mul(x.re, y.re, wp), mul(x.im, y.im, wp), wp), prec),
          round(add(mul(x.re, y.im, wp), mul(x.im, y.re, wp), wp), prec)};
}

ComplexBall mul(const ComplexBall& x, const Ball& y, mpfr_prec_t prec) {
  return {mul(x.re, y, prec), mul(x.im, y, prec)};
}

ComplexBall div(const ComplexBall& x, const Ball& y, mpfr_prec_t prec) {
  return {div(x.re, y, prec), div(x.im, y, prec)};
}

ComplexBall div(const ComplexBall& x, const ComplexBall& y, mpfr_prec_t prec) {
  if (y.is_real()) return div(x, y.re, prec);
  mpfr_prec_t wp = prec + 8;
  return div(mul(x, conj(y), wp), norm(y, wp), prec);
}

ComplexBall conj(const ComplexBall& x) { return {x.re, neg(x.im)}; }

ComplexBall neg(const ComplexBall& x) { return {neg(x.re), neg(x.im)}; }

Ball norm(const ComplexBall& x, mpfr_prec_t prec) {
  return add(mul(x.re, x.re, prec), mul(x.im, x.im, prec), prec);
}

ComplexBall exp_2pi_i(const Rational& t, mpfr_prec_t prec) {
  // reduce to [0, 1)
  Rational f = t - Rational(t.floor(), 1);
  if (f.is_zero()) return {Ball::from_si(1), Ball()};
  if (f == Rational(1, 2)) return {Ball::from_si(-1), Ball()};
  if (f == Rational(1, 4)) return {Ball(), Ball::from_si(1)};
  if (f == Rational(3, 4)) return {Ball(), Ball::from_si(-1)};
  mpfr_prec_t wp = prec + 8;
  Ball angle = mul(mul_2exp(const_pi(wp), 1), f, wp);
  return {cos(angle, prec), sin(angle, prec)};
}

std::string to_decimal(const ComplexBall& x, int digits) {
  if (x.is_real()) return to_decimal(x.re, digits);
  return "(" + to_decimal(x.re, digits) + ") + (" + to_decimal(x.im, digits) + ")*I";
}

}  // namespace zetaburst
