#include "zetaburst/binsplit.hpp"

#include <future>

#include "zetaburst/errors.hpp"

namespace zetaburst {

RatMatrix::RatMatrix(int dim) : dim_(dim) {
  if (dim < 1 || dim > 3) throw PreconditionError("matrix dimension must be 1, 2 or 3");
}

RatMatrix RatMatrix::identity(int dim) {
  RatMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = Rational(1);
  return m;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.dim_ != b.dim_) throw PreconditionError("matrix dimension mismatch");
  RatMatrix c(a.dim_);
  for (int i = 0; i < a.dim_; ++i) {
    for (int j = 0; j < a.dim_; ++j) {
      Rational s;
      for (int k = 0; k < a.dim_; ++k) s += a.at(i, k) * b.at(k, j);
      c.at(i, j) = s;
    }
  }
  return c;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
  if (a.dim_ != b.dim_) return false;
  for (int i = 0; i < a.dim_; ++i) {
    for (int j = 0; j < a.dim_; ++j) {
      if (!(a.at(i, j) == b.at(i, j))) return false;
    }
  }
  return true;
}

ScaledMatrix ScaledMatrix::identity(int dim) {
  ScaledMatrix m;
  m.dim = dim;
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

ScaledMatrix multiply(const ScaledMatrix& a, const ScaledMatrix& b) {
  if (a.dim != b.dim) throw PreconditionError("matrix dimension mismatch");
  ScaledMatrix c;
  c.dim = a.dim;
  const int d = a.dim;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      mpz_class& acc = c.at(i, j);
      for (int k = 0; k < d; ++k) {
        const mpz_class& x = a.at(i, k);
        const mpz_class& y = b.at(k, j);
        // The series matrices are sparse; skipping zeros saves most of the
        // big multiplications.
        if (sgn(x) == 0 || sgn(y) == 0) continue;
        mpz_addmul(acc.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      }
    }
  }
  mpz_mul(c.den.get_mpz_t(), a.den.get_mpz_t(), b.den.get_mpz_t());
  return c;
}

ScaledMatrix clear_denominators(const RatMatrix& m) {
  ScaledMatrix s;
  s.dim = m.dim();
  mpz_class l = 1;
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).den().get_mpz_t());
  }
  s.den = l;
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      mpz_class f = l / m.at(i, j).den();
      s.at(i, j) = m.at(i, j).num() * f;
    }
  }
  return s;
}

RatMatrix to_rational(const ScaledMatrix& m) {
  RatMatrix r(m.dim);
  for (int i = 0; i < m.dim; ++i) {
    for (int j = 0; j < m.dim; ++j) r.at(i, j) = Rational(m.at(i, j), m.den);
  }
  return r;
}

namespace {

ScaledMatrix product(const ScaledFactory& f, std::int64_t lo, std::int64_t hi, unsigned workers) {
  if (hi - lo == 1) return f(lo);
  std::int64_t mid = lo + (hi - lo) / 2;
  if (workers > 1) {
    unsigned left = workers / 2;
    auto upper = std::async(std::launch::async, [&] { return product(f, mid, hi, workers - left); });
    ScaledMatrix lower = product(f, lo, mid, left);
    return multiply(upper.get(), lower);
  }
  ScaledMatrix upper = product(f, mid, hi, 1);
  ScaledMatrix lower = product(f, lo, mid, 1);
  return multiply(upper, lower);
}

}  // namespace

ScaledMatrix bsplit_scaled(const ScaledFactory& factory, std::int64_t lo, std::int64_t hi,
                           unsigned workers) {
  if (lo > hi) throw PreconditionError("bsplit: lo > hi");
  if (lo == hi) return ScaledMatrix::identity(factory(lo).dim);
  return product(factory, lo, hi, workers == 0 ? 1 : workers);
}

RatMatrix bsplit_product(const MatrixFactory& factory, std::int64_t lo, std::int64_t hi) {
  return bsplit_parallel(factory, lo, hi, 1);
}

RatMatrix bsplit_parallel(const MatrixFactory& factory, std::int64_t lo, std::int64_t hi,
                          unsigned workers) {
  if (lo > hi) throw PreconditionError("bsplit: lo > hi");
  if (lo == hi) return RatMatrix::identity(factory(lo).dim());
  ScaledFactory scaled = [&factory](std::int64_t n) { return clear_denominators(factory(n)); };
  return to_rational(bsplit_scaled(scaled, lo, hi, workers));
}

}  // namespace zetaburst
