#pragma once

// Saddle-point quantities for uniform set partitions of [n].
//
// W = W(n) solves W e^W = n. With d = floor(W) and f = W - d, the Poisson
// means lambda_j = W^j / j! peak at j = d with value R = W^d / d!, and
// theta = min(f, 1 - f) measures how close W sits to an integer.

#include "setpart/real.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace setpart {

/// Guard bits carried by every value produced here on top of the requested
/// precision, so that residual contracts hold after the final rounding.
inline constexpr Precision kGuardBits = 16;

/// Root of w e^w = x for x > 0, with |w e^w - x| <= 8 x 2^{-bits}.
/// Newton from log x - log log x, bisection fallback.
Real solve_w(const Real& x, Precision bits);
Real solve_w(double x, Precision bits);

struct SaddleParams {
  std::uint64_t n;
  Real w;
  std::int64_t d;
  Real f;
  Real r;      // W^d / d!
  Real theta;  // min(f, 1 - f)
  Real b;      // W (1 + W) e^W
  Precision precision;
};

/// Throws kBelowRegime for n < 3. d is taken only once W is resolved at a
/// precision that separates it from the nearest integer.
SaddleParams saddle_params(std::uint64_t n, Precision bits = kDefaultPrecision);

/// n / (sqrt(2 pi) log^{3/2} n).
Real rn_asymptotic(std::uint64_t n, Precision bits = kDefaultPrecision);

/// log of e^{e^W - 1} / (W^n sqrt(2 pi W (W + 1) e^W)), the Moser-Wyman
/// approximation of B_n / n!.
Real bell_log_moser_wyman(std::uint64_t n, Precision bits = kDefaultPrecision);

/// log B_n from e^{-1} sum_k k^n / k!, summed over a window around the peak
/// term that widens until further terms fall below 2^{-bits} relatively.
Real dobinski_log_bell(std::uint64_t n, Precision bits = kDefaultPrecision);

/// Standard normal CDF.
double normal_cdf(double x);

/// Phi(c) * Phi(c + u); u = +inf gives Phi(c), u = 0 gives Phi(c)^2.
double limit_cdf(double c, double u);

inline constexpr double kUnboundedShift = std::numeric_limits<double>::infinity();

struct ScenarioU {
  Real u;                  // (2 pi)^{-1/4} theta sqrt(n) / log^{7/4} n
  Real u_f;                // same with f in place of theta
  Real u_one_minus_f;      // same with 1 - f in place of theta
  Real boundary_scale;     // log^{7/4} n / sqrt(n), the case (i)/(ii) scale
};

ScenarioU scenario_u(std::uint64_t n, Precision bits = kDefaultPrecision);

/// n_m = floor((m + 1) e^{m + 1}) for m = 1..count. count <= 39 so that
/// every member fits in 64 bits.
std::vector<std::uint64_t> subsequence_case_i(std::size_t count);

inline constexpr std::size_t kMaxSubsequenceCount = 39;

/// W(n) in double precision (Halley iteration); used for fast scans.
double solve_w_double(double x);

/// Every n in [n_lo, n_hi] with |f_n - target_f| < tolerance. Candidates near
/// the acceptance boundary are re-decided at high precision.
std::vector<std::uint64_t> scan_f(std::uint64_t n_lo, std::uint64_t n_hi, double target_f,
                                  double tolerance, Precision bits = 128);

}  // namespace setpart
