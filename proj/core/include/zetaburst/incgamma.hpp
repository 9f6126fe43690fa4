#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zetaburst/ball.hpp"
#include "zetaburst/rational.hpp"

namespace zetaburst {

/// Upper incomplete gamma function Gamma(a, z) = int_z^inf t^(a-1) e^(-t) dt
/// for rational a and z > 0.
///
/// The kernels take an absolute tolerance 2^tol_exp: the returned ball
/// encloses the exact value and its radius is at most about 2^tol_exp
/// (plus whatever error the inputs already carry).

enum class SeriesKind { hyp_at_origin, singular_at_origin, asymp_at_infinity, taylor_at_point };

struct KernelInfo {
  SeriesKind kind = SeriesKind::hyp_at_origin;
  std::int64_t terms = 0;  // N
  Mag tail;                // bound for the truncated series remainder
  mpfr_prec_t prec = 0;    // working precision
};

struct BitBurstStep {
  BigFloat point;  // z_k, the end of the step
  long bits = 0;   // significant bits kept from the target (b_k)
  KernelInfo info;
};

/// Trace of one bit-burst evaluation: z_1, z_2, ... with z_last == target.
struct BitBurstPath {
  BigFloat target;
  std::vector<BitBurstStep> steps;
};

/// ceil(log2) of the order-of-magnitude estimate
///   (a-1) ln z - z  for a < z,   a (ln a - 1)  for a >= z,
/// converted to bits. Only used for precision planning.
long estimate_log_incgamma(const Rational& a, const BigFloat& z);

/// Gamma(a, x) = Gamma(a) - x^a e^-x / a * sum_n x^n / (a+1)_n.
/// a must not be a pole of Gamma.
Ball hyp_series_origin(const Rational& a, const BigFloat& x, long tol_exp,
                       KernelInfo* info = nullptr);

/// Gamma(-n, x) from the explicit limit formula with psi(n+1).
Ball singular_at_nonpositive_int(long n, const BigFloat& x, long tol_exp,
                                 KernelInfo* info = nullptr);

/// x^(a-1) e^-x sum_{k<N} (1-a)_k / (-x)^k, or nullopt when no N brings the
/// remainder below the tolerance.
std::optional<Ball> asymp_series(const Rational& a, const BigFloat& x, long tol_exp,
                                 KernelInfo* info = nullptr);

/// Continues Gamma(a, .) from u (where y_u encloses Gamma(a, u)) to u + x by
/// the Taylor expansion at u. Requires 0 <= |x| < u.
Ball taylor_step(const Rational& a, const BigFloat& u, const Ball& y_u, const BigFloat& x,
                 long tol_exp, KernelInfo* info = nullptr);

/// Full bit-burst evaluation with absolute error 2^-p plus the error
/// propagated from the radius of z.
Ball incgamma_bitburst(const Rational& a, const Ball& z, long p, BitBurstPath* path = nullptr);

/// As incgamma_bitburst with the tolerance given as an exponent.
Ball incgamma_abs(const Rational& a, const Ball& z, long tol_exp, BitBurstPath* path = nullptr);

// Remainder bounds, exposed for verification.

/// |sum_{n>=N} x^n/(a+1)_n|; requires N > -a-1 and a+N+1 > x. Infinite
/// when the hypotheses fail.
Mag hyp_tail_bound(const Rational& a, const BigFloat& x, std::int64_t N);
/// |R_N(a, x)| <= |(1-a)_N| / x^N for N >= a-1.
Mag asymp_tail_bound(const Rational& a, const BigFloat& x, std::int64_t N);
/// |sum_{j>=J} t_j / t_0| for the infinite part of the singular formula,
/// t_j = (-x)^(n+1+j) / ((n+1+j)! (j+1)).
Mag singular_tail_bound(long n, const BigFloat& x, std::int64_t J);
/// R M_R(u) / N * C^N / (1-C), C = |x|/R; requires |x| < R < u.
Mag taylor_tail_bound(const Rational& a, const BigFloat& u, const BigFloat& x,
                      const BigFloat& R, std::int64_t N);

}  // namespace zetaburst
