#include "zetaburst/bigfloat.hpp"

#include <climits>
#include <cmath>
#include <utility>

#include "zetaburst/errors.hpp"

namespace zetaburst {

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(v_, prec < MPFR_PREC_MIN ? MPFR_PREC_MIN : prec);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, other.prec());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.prec());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_si(long v) {
  BigFloat r(64);
  mpfr_set_si(r.v_, v, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_z(const mpz_class& v) {
  auto bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(v.get_mpz_t(), 2));
  BigFloat r(bits < 2 ? 2 : bits);
  mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_z_2exp(const mpz_class& man, long exp) {
  auto bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(man.get_mpz_t(), 2));
  BigFloat r(bits < 2 ? 2 : bits);
  mpfr_set_z_2exp(r.v_, man.get_mpz_t(), exp, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::from_double(double v) {
  BigFloat r(53);
  mpfr_set_d(r.v_, v, MPFR_RNDN);
  return r;
}

mpfr_prec_t BigFloat::significant_bits() const {
  if (is_zero() || !is_finite()) return 0;
  mpz_class m;
  long e;
  to_z_2exp(m, e);
  return static_cast<mpfr_prec_t>(mpz_sizeinbase(m.get_mpz_t(), 2));
}

void BigFloat::to_z_2exp(mpz_class& man, long& exp) const {
  if (is_zero()) {
    man = 0;
    exp = 0;
    return;
  }
  mpfr_exp_t e = mpfr_get_z_2exp(man.get_mpz_t(), v_);
  auto tz = mpz_scan1(man.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(man.get_mpz_t(), man.get_mpz_t(), tz);
  exp = static_cast<long>(e) + static_cast<long>(tz);
}

std::string BigFloat::to_string(int digits) const {
  if (is_zero()) return "0";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
  std::string m(s);
  mpfr_free_str(s);
  bool neg = m.front() == '-';
  if (neg) m.erase(0, 1);
  std::string out = neg ? "-" : "";
  out += m.substr(0, 1) + "." + m.substr(1) + "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

// ---------------------------------------------------------------- Mag

Mag::Mag() : v_(kPrec) {}

Mag Mag::from_double(double v) {
  BigFloat r(kPrec);
  mpfr_set_d(r.get(), std::fabs(v), MPFR_RNDU);
  return Mag(std::move(r));
}

Mag Mag::pow2(long e) {
  BigFloat r(kPrec);
  mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDU);
  return Mag(std::move(r));
}

Mag Mag::infinity() {
  BigFloat r(kPrec);
  mpfr_set_inf(r.get(), 1);
  return Mag(std::move(r));
}

Mag Mag::abs_upper(const BigFloat& x) {
  BigFloat r(kPrec);
  mpfr_abs(r.get(), x.get(), MPFR_RNDU);
  return Mag(std::move(r));
}

Mag Mag::abs_upper(const mpz_class& x) {
  BigFloat r(kPrec);
  mpfr_set_z(r.get(), x.get_mpz_t(), MPFR_RNDA);
  mpfr_abs(r.get(), r.get(), MPFR_RNDU);
  return Mag(std::move(r));
}

Mag Mag::ulp(const BigFloat& x) { return ulp(x, x.prec()); }

Mag Mag::ulp(const BigFloat& x, mpfr_prec_t prec) {
  if (x.is_zero()) return Mag();
  return pow2(x.exponent() - static_cast<long>(prec));
}

long Mag::log2_ceil() const {
  if (is_zero()) return LONG_MIN;
  if (!is_finite()) return LONG_MAX;
  long e = static_cast<long>(mpfr_get_exp(v_.get()));
  // v in [2^(e-1), 2^e); exact power of two means ceil is e - 1.
  BigFloat t(kPrec);
  mpfr_set_ui_2exp(t.get(), 1, e - 1, MPFR_RNDN);
  return mpfr_equal_p(t.get(), v_.get()) ? e - 1 : e;
}

std::string Mag::to_string() const {
  if (is_zero()) return "0";
  if (!is_finite()) return "inf";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, 3, v_.get(), MPFR_RNDU);
  std::string m(s);
  mpfr_free_str(s);
  return m.substr(0, 1) + "." + m.substr(1) + "e" + std::to_string(static_cast<long>(e) - 1);
}

Mag& Mag::operator+=(const Mag& o) {
  mpfr_add(v_.get(), v_.get(), o.v_.get(), MPFR_RNDU);
  return *this;
}

Mag& Mag::operator*=(const Mag& o) {
  mpfr_mul(v_.get(), v_.get(), o.v_.get(), MPFR_RNDU);
  return *this;
}

Mag Mag::mul_2exp(long e) const {
  Mag r = *this;
  mpfr_mul_2si(r.v_.get(), r.v_.get(), e, MPFR_RNDU);
  return r;
}

Mag Mag::div_lower(const BigFloat& d) const {
  if (d.sign() <= 0) return infinity();
  Mag r;
  mpfr_div(r.v_.get(), v_.get(), d.get(), MPFR_RNDU);
  return r;
}

Mag max(const Mag& a, const Mag& b) { return a < b ? b : a; }

Mag MagAccess::from_upper(BigFloat v) {
  if (v.sign() < 0 || mpfr_nan_p(v.get())) {
    throw PreconditionError("magnitude bound must be nonnegative");
  }
  BigFloat r(Mag::kPrec);
  mpfr_set(r.get(), v.get(), MPFR_RNDU);
  return Mag(std::move(r));
}

}  // namespace zetaburst
