#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace zetaburst {

/// Owning wrapper around an mpfr_t. The precision travels with the value;
/// every arithmetic routine in the library takes its target precision
/// explicitly, so there is no ambient precision state.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  /// Exact conversions; precision is chosen large enough.
  static BigFloat from_si(long v);
  static BigFloat from_z(const mpz_class& v);
  static BigFloat from_z_2exp(const mpz_class& man, long exp);
  static BigFloat from_double(double v);

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Exponent e with |x| in [2^(e-1), 2^e); undefined for zero.
  long exponent() const { return static_cast<long>(mpfr_get_exp(v_)); }
  /// Number of significant bits actually used by the mantissa.
  mpfr_prec_t significant_bits() const;
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Writes this value as man * 2^exp with an odd (or zero) mantissa.
  void to_z_2exp(mpz_class& man, long& exp) const;

  /// Decimal rendering for diagnostics.
  std::string to_string(int digits = 20) const;

  friend int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

/// Nonnegative upper bound with ~30 bits of precision. All arithmetic on
/// Mag rounds upward, so a Mag computed from upper bounds stays an upper
/// bound. Used for ball radii and for rigorous truncation bounds.
class Mag {
 public:
  static constexpr mpfr_prec_t kPrec = 30;

  Mag();

  static Mag from_double(double v);
  static Mag pow2(long e);
  static Mag infinity();
  /// Upper bound for |x|.
  static Mag abs_upper(const BigFloat& x);
  static Mag abs_upper(const mpz_class& x);
  /// One unit in the last place of x at its current precision.
  static Mag ulp(const BigFloat& x);
  /// Same but for a value rounded to `prec` bits.
  static Mag ulp(const BigFloat& x, mpfr_prec_t prec);

  mpfr_srcptr get() const { return v_.get(); }
  const BigFloat& value() const { return v_; }

  bool is_zero() const { return v_.is_zero(); }
  bool is_finite() const { return v_.is_finite(); }
  /// Smallest integer e with value <= 2^e; LONG_MIN for zero.
  long log2_ceil() const;
  double to_double() const { return mpfr_get_d(v_.get(), MPFR_RNDU); }
  std::string to_string() const;

  Mag& operator+=(const Mag& o);
  Mag& operator*=(const Mag& o);
  friend Mag operator+(Mag a, const Mag& b) { return a += b; }
  friend Mag operator*(Mag a, const Mag& b) { return a *= b; }
  Mag mul_2exp(long e) const;
  /// this / d where d is a positive *lower* bound for the divisor.
  Mag div_lower(const BigFloat& d) const;

  friend Mag max(const Mag& a, const Mag& b);
  friend bool operator<(const Mag& a, const Mag& b) { return cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Mag& a, const Mag& b) { return cmp(a.v_, b.v_) <= 0; }
  friend bool operator==(const Mag& a, const Mag& b) { return cmp(a.v_, b.v_) == 0; }

 private:
  explicit Mag(BigFloat v) : v_(std::move(v)) {}
  BigFloat v_;
  friend class MagAccess;
};

/// Escape hatch for modules that build bounds with directed-rounding mpfr
/// calls (upper results only).
class MagAccess {
 public:
  static Mag from_upper(BigFloat v);
};

}  // namespace zetaburst
