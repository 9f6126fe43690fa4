#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>

#include "zetaburst/rational.hpp"

namespace zetaburst {

/// Square matrix (dimension 1..3) with exact rational entries.
class RatMatrix {
 public:
  explicit RatMatrix(int dim = 1);
  static RatMatrix identity(int dim);

  int dim() const { return dim_; }
  Rational& at(int i, int j) { return e_[static_cast<std::size_t>(i * 3 + j)]; }
  const Rational& at(int i, int j) const { return e_[static_cast<std::size_t>(i * 3 + j)]; }

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b);

 private:
  int dim_;
  std::array<Rational, 9> e_;
};

/// Integer matrix with one common denominator: value = entries / den.
/// This is the representation binary splitting works with internally.
struct ScaledMatrix {
  int dim = 1;
  std::array<mpz_class, 9> e;
  mpz_class den = 1;

  static ScaledMatrix identity(int dim);
  mpz_class& at(int i, int j) { return e[static_cast<std::size_t>(i * 3 + j)]; }
  const mpz_class& at(int i, int j) const { return e[static_cast<std::size_t>(i * 3 + j)]; }
};

/// Product a * b; denominators multiply, no gcd reduction.
ScaledMatrix multiply(const ScaledMatrix& a, const ScaledMatrix& b);
ScaledMatrix clear_denominators(const RatMatrix& m);
RatMatrix to_rational(const ScaledMatrix& m);

/// n -> U_n; must be deterministic and free of side effects.
using MatrixFactory = std::function<RatMatrix(std::int64_t)>;
using ScaledFactory = std::function<ScaledMatrix(std::int64_t)>;

/// U_{hi-1} ... U_{lo+1} U_lo, computed exactly by splitting at the
/// midpoint. An empty range yields the identity.
RatMatrix bsplit_product(const MatrixFactory& factory, std::int64_t lo, std::int64_t hi);

/// Same product with the top recursion levels evaluated on `workers`
/// threads. The split points do not depend on `workers`, so the result is
/// entry-wise identical to bsplit_product.
RatMatrix bsplit_parallel(const MatrixFactory& factory, std::int64_t lo, std::int64_t hi,
                          unsigned workers);

/// Integer-domain core shared by the series kernels.
ScaledMatrix bsplit_scaled(const ScaledFactory& factory, std::int64_t lo, std::int64_t hi,
                           unsigned workers = 1);

}  // namespace zetaburst
