#pragma once

// Numerical check of the saddle-point analysis of
//   J_n = (W^{-n} / 2 pi) int_{-pi}^{pi} e^{e^{z} - 1} F_m(z) e^{-i theta n} d theta,
//   z = W e^{i theta},
// whose value is B_n / n! * P(M_n <= m), split into the central arc
// |theta| < delta_n, the intermediate arcs delta_n <= |theta| < gamma_n and
// the outer arcs gamma_n <= |theta| <= pi.
//
// F_m(z) = prod_j e^{-z^j/j!} sum_{k<=m} (z^j/j!)^k / k! is taken over
// j = 1..n only; the dropped factors are 1 + O(z^{n+1}) and do not change the
// coefficient of z^n.

#include "setpart/asymptotics.hpp"
#include "setpart/error.hpp"
#include "setpart/quadrature.hpp"
#include "setpart/real.hpp"

#include <cstdint>
#include <string>

namespace setpart {

inline constexpr Precision kContourPrecision = 192;

enum class Region { kD1, kD2, kD3, kTotal };

const char* to_string(Region region);

struct ContourConfig {
  std::uint64_t n;
  std::uint64_t m;
  double delta;  // n^{1/7} / sqrt(n log n)
  double gamma;  // log^{-1/5} n
  Precision precision;
  double quad_tolerance;  // absolute, on the offset-scaled integral
};

/// Throws kInvalidArgument unless 0 < delta < gamma < pi.
ContourConfig make_contour(std::uint64_t n, std::uint64_t m,
                           Precision precision = kContourPrecision,
                           double quad_tolerance = 1e-14);
ContourConfig with_split(ContourConfig cfg, double delta, double gamma);

class CauchyIntegrand {
 public:
  CauchyIntegrand(std::uint64_t n, std::uint64_t m, Precision bits);

  /// log of e^{e^z - 1} F_m(z) e^{-i theta n} W^{-n}.
  Complex log_value(const Real& theta) const;
  /// Real part of log_value(0): the global exponent offset.
  const Real& log_offset() const { return offset_; }
  /// exp(log_value(theta) - offset) / (2 pi).
  Complex scaled(const Real& theta) const;

  const Real& w() const { return w_; }

 private:
  std::uint64_t n_;
  std::uint64_t m_;
  Precision bits_;
  Real w_;
  Real log_w_;
  Real two_pi_;
  Real negligible_;
  Real offset_;
};

Complex log_integrand(const Real& theta, std::uint64_t n, std::uint64_t m,
                      Precision bits = kContourPrecision);

struct QuadResult {
  Region region;
  Complex value;  // region integral divided by e^{log_offset}
  Real log_offset;
  double abs_error_estimate;
  std::size_t panel_count;
  std::size_t evaluations;

  /// log |Re value| + log_offset.
  Real log_magnitude() const;
};

class ToleranceUnmet : public Error {
 public:
  explicit ToleranceUnmet(QuadResult best);
  const QuadResult& best() const { return best_; }

 private:
  QuadResult best_;
};

/// Throws ToleranceUnmet (carrying the best value) if the estimate stays
/// above cfg.quad_tolerance.
QuadResult compute_region(const ContourConfig& cfg, Region region);

struct CauchyValidation {
  ContourConfig config;
  QuadResult d1;
  QuadResult d2;
  QuadResult d3;
  Complex total;  // scaled, d1 + d2 + d3
  double total_error;
  Real exact_log;     // log(A(n, m) / n!)
  Real computed_log;  // log Re(total) + offset
  double relative_deviation;
  /// (|J_{n,2}| + |J_{n,3}|) / |J_{n,1}|
  double outer_to_central;
};

/// Integrates all three regions with a tolerance of rel_tol times a pilot
/// estimate of the total, then compares with the exact coefficient.
CauchyValidation validate_cauchy(std::uint64_t n, std::uint64_t m,
                                 Precision bits = kContourPrecision, double rel_tol = 1e-11);

/// Same, without the exact reference (usable where A(n, m) is too costly);
/// exact_log and relative_deviation are NaN/zero.
CauchyValidation integrate_regions(const ContourConfig& cfg, double rel_tol);

/// e^{W e^{i t}} - e^W - sum_{j=d-1}^{d+1} W^j e^{i t j} / j! + sum_{j=d-1}^{d+1} W^j / j!
///   - i t n + i t sum_{j=d-1}^{d+1} j W^j / j!
Complex phi_n_eval(const Real& theta, const SaddleParams& params);
Complex phi_n_eval(const Real& theta, std::uint64_t n, Precision bits = kDefaultPrecision);

/// Re phi_n(theta) from the closed form
/// e^{W cos t} cos(W sin t) - e^W + sum_{j=d-1}^{d+1} W^j / j! (1 - cos(j t)).
Real re_phi_closed_form(const Real& theta, const SaddleParams& params);

struct PhiDiagnostics {
  std::uint64_t n;
  Real b;
  Real phi_at_zero;       // |phi_n(0)|
  Real first_difference;  // |phi(h) - phi(-h)| / 2h
  Complex second_difference;  // (phi(h) - 2 phi(0) + phi(-h)) / h^2
  double step;
  double second_over_minus_b;  // Re(second difference) / (-b)
};

PhiDiagnostics phi_diagnostics(std::uint64_t n, double step = 1e-6,
                               Precision bits = kDefaultPrecision);

struct RePhiReport {
  std::uint64_t n;
  double gamma;
  std::size_t grid_count;
  double max_scaled;  // max of log(n) Re phi_n(theta) / n on gamma <= |theta| <= pi
  double argmax_theta;
  double scaled_at_gamma;
  double scaled_at_pi;
  bool negative;
};

RePhiReport re_phi_bound_check(std::uint64_t n, std::size_t grid_count,
                               Precision bits = 128);

}  // namespace setpart
