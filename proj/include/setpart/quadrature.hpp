#pragma once

// Globally adaptive Gauss-Legendre quadrature for complex-valued integrands at
// arbitrary precision. Each panel is compared against the sum of its two
// halves; the panel with the largest discrepancy is split until the summed
// discrepancies fall below the requested absolute tolerance.

#include "setpart/real.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace setpart {

struct GaussLegendreRule {
  std::vector<Real> nodes;    // on [-1, 1]
  std::vector<Real> weights;
};

/// Nodes and weights by Newton iteration on P_order.
GaussLegendreRule gauss_legendre(std::size_t order, Precision bits);

struct Interval {
  Real lo;
  Real hi;
};

struct AdaptiveResult {
  Complex value;
  double abs_error_estimate;
  std::size_t panel_count;
  std::size_t evaluations;
  bool converged;
};

struct AdaptiveOptions {
  double abs_tolerance = 1e-12;
  std::size_t order = 20;
  std::size_t max_panels = 4000;
  /// Split every starting interval into this many equal panels first.
  std::size_t initial_panels = 4;
};

using ComplexIntegrand = std::function<Complex(const Real&)>;

/// Integrates over the union of `intervals`. Never throws on a missed
/// tolerance; check `converged`.
AdaptiveResult integrate_adaptive(const ComplexIntegrand& f, const std::vector<Interval>& intervals,
                                  const AdaptiveOptions& options, Precision bits);

}  // namespace setpart
