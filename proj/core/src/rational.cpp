#include "zetaburst/rational.hpp"

#include <cctype>

#include "zetaburst/errors.hpp"

namespace zetaburst {

namespace {

bool is_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string t(s);
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  return mpz_class(t, 10);
}

// Decimal with optional fraction and exponent, e.g. "-12.5e-3".
Rational parse_decimal(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  long scale = 0;
  std::size_t i = 0;
  bool seen_digit = false;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
    digits += s[i];
    seen_digit = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
      digits += s[i];
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw DomainError("malformed rational: '" + std::string(s) + "'");
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    std::string_view ex = s.substr(i + 1);
    if (!is_integer_text(ex)) {
      throw DomainError("malformed rational exponent: '" + std::string(s) + "'");
    }
    scale += std::stol(std::string(ex));
    i = s.size();
  }
  if (i != s.size()) throw DomainError("malformed rational: '" + std::string(s) + "'");
  mpz_class n(digits, 10);
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational r = scale >= 0 ? Rational(n * p, 1) : Rational(n, p);
  return neg ? -r : r;
}

}  // namespace

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    auto n = text.substr(0, slash);
    auto d = text.substr(slash + 1);
    if (!is_integer_text(n) || !is_integer_text(d) || d.front() == '-' || d.front() == '+') {
      throw DomainError("malformed rational: '" + std::string(text) + "'");
    }
    mpz_class den = parse_integer(d);
    if (den == 0) throw DomainError("rational with zero denominator");
    return Rational(parse_integer(n), den);
  }
  if (is_integer_text(text)) return Rational(parse_integer(text), 1);
  return parse_decimal(text);
}

mpz_class Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return r;
}

mpz_class Rational::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return r;
}

std::string Rational::to_string() const { return v_.get_str(10); }

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

}  // namespace zetaburst
