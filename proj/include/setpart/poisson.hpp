#pragma once

// Independent Poisson model for block-size multiplicities: V_j ~ Poisson(lambda_j)
// with lambda_j = W^j / j!. The maximum of the V_j concentrates on the three
// indices d-1, d, d+1 around the peak of lambda_j.

#include "setpart/asymptotics.hpp"
#include "setpart/real.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace setpart {

/// W^j / j!, evaluated in log space.
Real lambda_at(std::int64_t j, const SaddleParams& params);

struct PoissonWindow {
  SaddleParams params;
  std::int64_t j_lo;
  std::int64_t j_hi;
  std::vector<Real> lambdas;  // lambda_{j_lo} .. lambda_{j_hi}

  const Real& lambda(std::int64_t j) const { return lambdas.at(static_cast<std::size_t>(j - j_lo)); }
};

/// Materialises lambda_j for j in [j_lo, j_hi] and checks unimodality:
/// strictly increasing up to d, strictly decreasing after, maximum R at d.
/// j_lo is clamped to 1.
PoissonWindow make_window(const SaddleParams& params, std::int64_t j_lo, std::int64_t j_hi);
/// Default window d-1 .. d+1.
PoissonWindow make_window(const SaddleParams& params);

struct PoissonTail {
  Real cdf;       // P(V <= floor(t))
  Real survival;  // P(V > floor(t))
};

/// Both tails of Poisson(lambda) at floor(t); the smaller tail is summed
/// directly so it keeps full relative precision.
PoissonTail poisson_tails(const Real& lambda, const Real& t, Precision bits = kDefaultPrecision);
Real poisson_cdf(const Real& lambda, const Real& t, Precision bits = kDefaultPrecision);

/// H_n = R - c sqrt(R).
Real threshold(const SaddleParams& params, double c);

/// prod_{j=d-1}^{d+1} P(V_j <= R - c sqrt R); zero when the threshold is negative.
/// Indices below 1 are skipped.
Real window_product_cdf(const SaddleParams& params, double c);
Real window_product_cdf(std::uint64_t n, double c, Precision bits = kDefaultPrecision);

struct FullProduct {
  Real value;       // prod_{j=1}^{j_max} P(V_j <= H)
  Real tail_bound;  // >= sum_{j > j_max} P(V_j > H)
  std::int64_t j_max;
};

/// The infinite product lies in [value (1 - tail_bound), value].
FullProduct full_product_cdf(const SaddleParams& params, double c, std::int64_t j_max);
FullProduct full_product_cdf(std::uint64_t n, double c, std::int64_t j_max,
                             Precision bits = kDefaultPrecision);

/// exp(H (u + ln(1 - u))) with u = 1 - lambda_j / H, an upper bound on
/// P(V_j > H). Throws kBoundInapplicable when lambda_j >= H.
Real chernoff_tail(std::int64_t j, const SaddleParams& params, double c);
Real chernoff_tail(std::int64_t j, std::uint64_t n, double c, Precision bits = kDefaultPrecision);

/// 1 - lambda_j / H, the relative gap used by the Chernoff bound.
Real chernoff_gap(std::int64_t j, const SaddleParams& params, double c);

/// Upper bound on sum_{j > j_max} P(V_j > H) from Chernoff terms.
Real chernoff_tail_sum(const SaddleParams& params, double c, std::int64_t j_max);

inline constexpr double kDefaultTailTarget = 1e-9;

/// Smallest j >= d+2 whose Chernoff tail sum over larger indices is below
/// `target`, capped at 8d (and never below d+2).
std::int64_t default_j_max(const SaddleParams& params, double c,
                           double target = kDefaultTailTarget);

/// (R - lambda_j) / sqrt(lambda_j) - c sqrt(R) / sqrt(lambda_j), exactly.
Real shift_term(std::int64_t j, const SaddleParams& params, double c);

struct ShiftTerms {
  Real upper;  // j = d + 1
  Real lower;  // j = d - 1
};

ShiftTerms shift_terms(const SaddleParams& params, double c);
ShiftTerms shift_terms(std::uint64_t n, double c, Precision bits = kDefaultPrecision);

/// 61 points on [-3, 3] with step 0.1.
std::vector<double> default_c_grid();

struct VbarRow {
  double c;
  double empirical_cdf;  // fraction of samples with (Vbar - R)/sqrt(R) <= c
  double product_cdf;    // full_product_cdf(n, -c)
  double abs_gap;
};

struct VbarTable {
  std::uint64_t n;
  std::uint64_t seed;
  std::size_t sample_count;
  std::size_t worker_count;
  std::int64_t j_max;
  double r;
  double omitted_tail_bound;
  std::vector<VbarRow> rows;
  std::vector<std::uint64_t> maxima;  // sampled Vbar, in worker order
};

/// Simulates Vbar = max_{j <= j_max} V_j. j_max <= 0 selects the default
/// cutoff with omitted tail below 1e-9 at every grid point.
VbarTable sample_vbar(std::uint64_t n, const std::vector<double>& c_grid,
                      std::size_t sample_count, std::uint64_t seed, std::int64_t j_max = 0,
                      std::size_t worker_count = 1, Precision bits = kDefaultPrecision);

/// sqrt(ln(2/delta) / (2 samples)), the DKW half-width.
double dkw_half_width(std::size_t samples, double delta);

}  // namespace setpart
