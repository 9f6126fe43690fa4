#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zetaburst/ball.hpp"

namespace zetaburst {

/// e^(2 pi i k / ord) with 0 <= k < ord.
struct RootOfUnity {
  std::uint64_t k = 0;
  std::uint64_t ord = 1;

  bool is_one() const { return k == 0; }
  Rational angle() const { return Rational(mpz_class(static_cast<unsigned long>(k)), mpz_class(static_cast<unsigned long>(ord))); }
  friend RootOfUnity operator*(RootOfUnity a, RootOfUnity b);
  friend bool operator==(RootOfUnity a, RootOfUnity b);
};

ComplexBall to_complex(RootOfUnity z, mpfr_prec_t prec);

/// Dirichlet character chi_{q.n} in Conrey labeling. Immutable; copies
/// share the value table.
class DirichletChar {
 public:
  /// n is reduced mod q and must be coprime to q (for q = 1 any n works).
  static DirichletChar conrey(std::uint64_t q, std::uint64_t n);
  /// Parses "q.n"; throws DomainError on malformed or invalid labels.
  static DirichletChar parse(std::string_view label);
  static DirichletChar trivial() { return conrey(1, 1); }

  std::uint64_t modulus() const { return q_; }
  std::uint64_t index() const { return n_; }
  std::string label() const;
  /// delta with chi(-1) = (-1)^delta.
  int parity() const { return parity_; }
  std::uint64_t order() const { return order_; }
  std::uint64_t conductor() const { return conductor_; }
  bool is_primitive() const { return conductor_ == q_; }
  bool is_principal() const { return order_ == 1; }
  bool is_real() const { return order_ <= 2; }

  /// chi(m); nullopt when gcd(m, q) > 1.
  std::optional<RootOfUnity> operator()(std::uint64_t m) const;
  DirichletChar conj() const;

 private:
  DirichletChar() = default;

  std::uint64_t q_ = 1;
  std::uint64_t n_ = 1;
  std::uint64_t order_ = 1;
  std::uint64_t conductor_ = 1;
  int parity_ = 0;
  // exponent of chi(m) in units of 1/order_, or -1 for zero
  std::shared_ptr<const std::vector<std::int64_t>> table_;
};

struct PrimitivePart {
  std::uint64_t conductor;
  DirichletChar primitive;
};

/// Conductor f and the primitive character mod f inducing chi.
PrimitivePart conductor_and_primitive_part(const DirichletChar& chi);

/// tau(chi) = sum_{m=1}^{q} chi(m) e^(2 pi i m / q), by direct summation.
ComplexBall gauss_sum(const DirichletChar& chi, mpfr_prec_t prec);

/// omega = tau(chi) / (i^delta sqrt(q)); chi must be primitive.
ComplexBall root_number(const DirichletChar& chi, mpfr_prec_t prec);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
/// Prime factorization by trial division, as (p, e) pairs.
std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n);

}  // namespace zetaburst
