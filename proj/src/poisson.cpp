#include "setpart/poisson.hpp"

#include "setpart/error.hpp"
#include "setpart/random.hpp"

#include <algorithm>
#include <cmath>

namespace setpart {

namespace {

Real epsilon(Precision bits) {
  Real eps(1, bits);
  mpfr_mul_2si(eps.get(), eps.get(), -static_cast<long>(bits), MPFR_RNDN);
  return eps;
}

}  // namespace

Real lambda_at(std::int64_t j, const SaddleParams& params) {
  if (j < 1) fail(ErrorKind::kInvalidArgument, "lambda_j needs j >= 1");
  const Precision p = params.w.precision();
  return exp(Real(j, p) * log(params.w) - log_factorial(static_cast<std::uint64_t>(j), p));
}

PoissonWindow make_window(const SaddleParams& params, std::int64_t j_lo, std::int64_t j_hi) {
  j_lo = std::max<std::int64_t>(1, j_lo);
  if (j_hi < j_lo) fail(ErrorKind::kInvalidArgument, "empty Poisson window");
  PoissonWindow window{params, j_lo, j_hi, {}};
  for (std::int64_t j = j_lo; j <= j_hi; ++j) window.lambdas.push_back(lambda_at(j, params));
  for (std::int64_t j = j_lo; j < j_hi; ++j) {
    const bool rising = window.lambda(j) < window.lambda(j + 1);
    if (rising != (j < params.d)) {
      fail(ErrorKind::kInvalidArgument,
           "lambda_j is not unimodal around d at j=" + std::to_string(j));
    }
  }
  return window;
}

PoissonWindow make_window(const SaddleParams& params) {
  return make_window(params, params.d - 1, params.d + 1);
}

PoissonTail poisson_tails(const Real& lambda, const Real& t, Precision bits) {
  if (!(lambda > 0.0)) fail(ErrorKind::kInvalidArgument, "Poisson mean must be > 0");
  const Precision work = bits + 32;
  const Real lam = lambda.rounded(std::max(work, lambda.precision()));
  if (t < 0.0) return PoissonTail{Real(0, bits), Real(1, bits)};
  const std::uint64_t k = t.to_mpz_floor().get_ui();
  const Real kk(k, work);
  const Real log_term = kk * log(lam) - lam - log_factorial(k, work);
  const Real eps = epsilon(work);

  Real sum(work);
  Real term = exp(log_term);
  Real cdf(work);
  Real survival(work);
  if (kk <= lam) {
    sum = term;
    for (std::uint64_t i = k; i >= 1; --i) {
      term *= Real(i, work) / lam;
      sum += term;
      if (term <= sum * eps) break;
    }
    cdf = std::move(sum);
    survival = 1.0 - cdf;
  } else {
    for (std::uint64_t i = k + 1;; ++i) {
      term *= lam / Real(i, work);
      sum += term;
      if (term <= sum * eps) break;
    }
    survival = std::move(sum);
    cdf = 1.0 - survival;
  }
  cdf.round_to(bits);
  survival.round_to(bits);
  return PoissonTail{std::move(cdf), std::move(survival)};
}

Real poisson_cdf(const Real& lambda, const Real& t, Precision bits) {
  return poisson_tails(lambda, t, bits).cdf;
}

Real threshold(const SaddleParams& params, double c) {
  return params.r - sqrt(params.r) * c;
}

Real window_product_cdf(const SaddleParams& params, double c) {
  const Real h = threshold(params, c);
  const Precision p = params.precision;
  if (h < 0.0) return Real(0, p);
  Real product(1, p);
  for (std::int64_t j = std::max<std::int64_t>(1, params.d - 1); j <= params.d + 1; ++j) {
    product *= poisson_cdf(lambda_at(j, params), h, p);
  }
  return product;
}

Real window_product_cdf(std::uint64_t n, double c, Precision bits) {
  return window_product_cdf(saddle_params(n, bits), c);
}

Real chernoff_gap(std::int64_t j, const SaddleParams& params, double c) {
  return 1.0 - lambda_at(j, params) / threshold(params, c);
}

Real chernoff_tail(std::int64_t j, const SaddleParams& params, double c) {
  const Real h = threshold(params, c);
  const Real lambda = lambda_at(j, params);
  if (!(h > 0.0) || !(lambda < h)) {
    fail(ErrorKind::kBoundInapplicable,
         "Chernoff bound inapplicable: lambda_" + std::to_string(j) + " >= H");
  }
  const Real u = 1.0 - lambda / h;
  return exp(h * (u + log1p(-u)));
}

Real chernoff_tail(std::int64_t j, std::uint64_t n, double c, Precision bits) {
  return chernoff_tail(j, saddle_params(n, bits), c);
}

Real chernoff_tail_sum(const SaddleParams& params, double c, std::int64_t j_max) {
  if (j_max < params.d + 1) {
    fail(ErrorKind::kInvalidArgument, "tail sums start beyond the peak index");
  }
  const Precision p = params.w.precision();
  const Real eps = epsilon(p);
  Real sum(0, p);
  for (std::int64_t j = j_max + 1; j < j_max + 100000; ++j) {
    const Real term = chernoff_tail(j, params, c);
    sum += term;
    if (term.is_zero() || term <= sum * eps) break;
  }
  return sum;
}

std::int64_t default_j_max(const SaddleParams& params, double c, double target) {
  const std::int64_t lo = params.d + 2;
  const std::int64_t cap = std::max(lo, 8 * params.d);
  for (std::int64_t j = lo; j < cap; ++j) {
    try {
      if (chernoff_tail_sum(params, c, j) < target) return j;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kBoundInapplicable) throw;
    }
  }
  return cap;
}

FullProduct full_product_cdf(const SaddleParams& params, double c, std::int64_t j_max) {
  if (j_max < params.d + 2) fail(ErrorKind::kInvalidArgument, "full product needs j_max >= d+2");
  const Precision p = params.precision;
  const Real h = threshold(params, c);
  if (h < 0.0) return FullProduct{Real(0, p), Real(0, p), j_max};
  Real product(1, p);
  for (std::int64_t j = 1; j <= j_max; ++j) {
    product *= poisson_cdf(lambda_at(j, params), h, p);
  }
  Real tail = chernoff_tail_sum(params, c, j_max);
  tail.round_to(p);
  return FullProduct{std::move(product), std::move(tail), j_max};
}

FullProduct full_product_cdf(std::uint64_t n, double c, std::int64_t j_max, Precision bits) {
  return full_product_cdf(saddle_params(n, bits), c, j_max);
}

Real shift_term(std::int64_t j, const SaddleParams& params, double c) {
  const Real lambda = lambda_at(j, params);
  const Real root = sqrt(lambda);
  return (params.r - lambda) / root - sqrt(params.r) * c / root;
}

ShiftTerms shift_terms(const SaddleParams& params, double c) {
  if (params.d < 2) fail(ErrorKind::kBelowRegime, "shift terms need d >= 2");
  return ShiftTerms{shift_term(params.d + 1, params, c), shift_term(params.d - 1, params, c)};
}

ShiftTerms shift_terms(std::uint64_t n, double c, Precision bits) {
  return shift_terms(saddle_params(n, bits), c);
}

std::vector<double> default_c_grid() {
  std::vector<double> grid;
  for (int i = -30; i <= 30; ++i) grid.push_back(i / 10.0);
  return grid;
}

double dkw_half_width(std::size_t samples, double delta) {
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(samples)));
}

VbarTable sample_vbar(std::uint64_t n, const std::vector<double>& c_grid,
                      std::size_t sample_count, std::uint64_t seed, std::int64_t j_max,
                      std::size_t worker_count, Precision bits) {
  if (sample_count == 0) fail(ErrorKind::kInvalidArgument, "sample_count must be >= 1");
  const SaddleParams params = saddle_params(n, bits);
  if (j_max <= 0) {
    j_max = params.d + 2;
    for (double c : c_grid) {
      if (threshold(params, -c) > 0.0) j_max = std::max(j_max, default_j_max(params, -c));
    }
  }
  if (j_max < params.d + 2) fail(ErrorKind::kInvalidArgument, "j_max must be >= d+2");

  double omitted = 0.0;
  for (double c : c_grid) {
    if (threshold(params, -c) > 0.0) {
      omitted = std::max(omitted, chernoff_tail_sum(params, -c, j_max).to_double());
    }
  }

  std::vector<double> lambdas;
  for (std::int64_t j = 1; j <= j_max; ++j) lambdas.push_back(lambda_at(j, params).to_double());

  std::vector<std::uint64_t> maxima(sample_count);
  run_partitioned(sample_count, worker_count, [&](std::size_t w, std::size_t begin, std::size_t end) {
    Rng rng(seed, w);
    for (std::size_t s = begin; s < end; ++s) {
      std::uint64_t best = 0;
      for (double lambda : lambdas) best = std::max(best, rng.poisson(lambda));
      maxima[s] = best;
    }
  });

  std::vector<std::uint64_t> sorted = maxima;
  std::sort(sorted.begin(), sorted.end());
  VbarTable table{n, seed, sample_count, worker_count, j_max, params.r.to_double(), omitted, {},
                  std::move(maxima)};
  for (double c : c_grid) {
    const Real h = threshold(params, -c);
    double empirical = 0.0;
    if (!(h < 0.0)) {
      const std::uint64_t cut = h.to_mpz_floor().get_ui();
      const auto count = std::upper_bound(sorted.begin(), sorted.end(), cut) - sorted.begin();
      empirical = static_cast<double>(count) / static_cast<double>(sample_count);
    }
    const double product = full_product_cdf(params, -c, j_max).value.to_double();
    table.rows.push_back(VbarRow{c, empirical, product, std::abs(empirical - product)});
  }
  return table;
}

}  // namespace setpart
