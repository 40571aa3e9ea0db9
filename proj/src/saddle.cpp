#include "setpart/saddle.hpp"

#include "setpart/exact.hpp"
#include "setpart/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace setpart {

const char* to_string(Region region) {
  switch (region) {
    case Region::kD1: return "D1";
    case Region::kD2: return "D2";
    case Region::kD3: return "D3";
    case Region::kTotal: return "total";
  }
  return "unknown";
}

ContourConfig make_contour(std::uint64_t n, std::uint64_t m, Precision precision,
                           double quad_tolerance) {
  if (n < 3) fail(ErrorKind::kBelowRegime, "contour needs n >= 3");
  const double nn = static_cast<double>(n);
  const double log_n = std::log(nn);
  const double delta = std::pow(nn, 1.0 / 7.0) / std::sqrt(nn * log_n);
  const double gamma = std::pow(log_n, -0.2);
  return with_split(ContourConfig{n, std::min(m, n), delta, gamma, precision, quad_tolerance},
                    delta, gamma);
}

ContourConfig with_split(ContourConfig cfg, double delta, double gamma) {
  if (!(0.0 < delta && delta < gamma && gamma < std::acos(-1.0))) {
    fail(ErrorKind::kInvalidArgument, "contour split needs 0 < delta < gamma < pi");
  }
  cfg.delta = delta;
  cfg.gamma = gamma;
  return cfg;
}

CauchyIntegrand::CauchyIntegrand(std::uint64_t n, std::uint64_t m, Precision bits)
    : n_(n), m_(std::min(m, n)), bits_(bits), w_(solve_w(Real(n, 64), bits)), log_w_(log(w_)),
      two_pi_(Real::pi(w_.precision()) * 2.0), negligible_(1, w_.precision()),
      offset_(w_.precision()) {
  if (n == 0) fail(ErrorKind::kInvalidArgument, "integrand needs n >= 1");
  mpfr_mul_2si(negligible_.get(), negligible_.get(), -static_cast<long>(w_.precision() + 8),
               MPFR_RNDN);
  offset_ = log_value(Real(0, w_.precision())).re;
}

namespace {

// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  explicit CompensatedSum(Precision bits) : sum_(bits), carry_(bits) {}

  void add(const Complex& x) {
    add_part(sum_.re, carry_.re, x.re);
    add_part(sum_.im, carry_.im, x.im);
  }
  Complex value() const { return sum_ + carry_; }
  const Complex& rough() const { return sum_; }

 private:
  static void add_part(Real& sum, Real& carry, const Real& x) {
    Real t = sum + x;
    if (abs(sum) >= abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = std::move(t);
  }

  Complex sum_;
  Complex carry_;
};

}  // namespace

Complex CauchyIntegrand::log_value(const Real& theta_in) const {
  const Precision p = w_.precision();
  const Real theta = theta_in.rounded(p);
  const Complex phase = unit_phase(theta);
  const Complex z = Complex(w_ * phase.re, w_ * phase.im);

  // e^z - 1 - i theta n - n log W
  Complex out = exp(z);
  out.re -= 1.0;
  out.re -= Real(n_, p) * log_w_;
  out.im -= theta * Real(n_, p);

  Real magnitude(1, p);       // W^j / j!
  Complex rotation(Real(1, p), Real(0, p));  // e^{i j theta}
  for (std::uint64_t j = 1; j <= n_; ++j) {
    magnitude *= w_ / Real(j, p);
    rotation *= phase;
    if (magnitude < negligible_ && Real(j, p) > w_) break;
    const Complex x = rotation * magnitude;

    // sum_{k<=m} x^k / k!, stopped once the remaining terms cannot matter.
    CompensatedSum truncated(p);
    truncated.add(Complex(Real(1, p), Real(0, p)));
    Complex term(Real(1, p), Real(0, p));
    for (std::uint64_t k = 1; k <= m_; ++k) {
      term *= x;
      term /= Real(k, p);
      truncated.add(term);
      if (Real(k + 1, p) > magnitude * 2.0 && abs(term) < abs(truncated.rough()) * negligible_) {
        break;
      }
    }
    out -= x;
    out += log(truncated.value());
  }
  return out;
}

Complex CauchyIntegrand::scaled(const Real& theta) const {
  Complex value = log_value(theta);
  value.re -= offset_;
  return exp(value) / two_pi_;
}

Complex log_integrand(const Real& theta, std::uint64_t n, std::uint64_t m, Precision bits) {
  return CauchyIntegrand(n, m, bits).log_value(theta);
}

Real QuadResult::log_magnitude() const { return log(abs(value.re)) + log_offset; }

ToleranceUnmet::ToleranceUnmet(QuadResult best)
    : Error(ErrorKind::kToleranceUnmet,
            std::string("tolerance unmet in region ") + to_string(best.region) +
                ": value=" + best.value.re.to_string(20) +
                " error_estimate=" + std::to_string(best.abs_error_estimate)),
      best_(std::move(best)) {}

namespace {

std::vector<Interval> region_intervals(const ContourConfig& cfg, Region region, Precision p) {
  const Real pi = Real::pi(p);
  const Real delta(cfg.delta, p);
  const Real gamma(cfg.gamma, p);
  switch (region) {
    case Region::kD1:
      return {{-delta, delta}};
    case Region::kD2:
      return {{-gamma, -delta}, {delta, gamma}};
    case Region::kD3:
      return {{-pi, -gamma}, {gamma, pi}};
    case Region::kTotal:
      return {{-pi, -gamma}, {-gamma, -delta}, {-delta, delta}, {delta, gamma}, {gamma, pi}};
  }
  return {};
}

QuadResult integrate_region(const CauchyIntegrand& integrand, const ContourConfig& cfg,
                            Region region) {
  const Precision p = integrand.w().precision();
  AdaptiveOptions options;
  options.abs_tolerance = cfg.quad_tolerance;
  const AdaptiveResult result = integrate_adaptive(
      [&](const Real& theta) { return integrand.scaled(theta); },
      region_intervals(cfg, region, p), options, cfg.precision);
  QuadResult out{region,          result.value,      integrand.log_offset(),
                 result.abs_error_estimate, result.panel_count, result.evaluations};
  if (!result.converged) throw ToleranceUnmet(std::move(out));
  return out;
}

}  // namespace

QuadResult compute_region(const ContourConfig& cfg, Region region) {
  const CauchyIntegrand integrand(cfg.n, cfg.m, cfg.precision);
  return integrate_region(integrand, cfg, region);
}

CauchyValidation integrate_regions(const ContourConfig& cfg_in, double rel_tol) {
  const CauchyIntegrand integrand(cfg_in.n, cfg_in.m, cfg_in.precision);
  // Pilot pass fixes the scale of the answer, which can sit many orders of
  // magnitude below the integrand's peak when m is small.
  ContourConfig pilot = cfg_in;
  pilot.quad_tolerance = 1e-8;
  const QuadResult rough = integrate_region(integrand, pilot, Region::kTotal);
  const double scale = std::max(abs(rough.value).to_double(), rough.abs_error_estimate);

  ContourConfig cfg = cfg_in;
  cfg.quad_tolerance = std::min(cfg_in.quad_tolerance, rel_tol * scale / 3.0);
  QuadResult d1 = integrate_region(integrand, cfg, Region::kD1);
  QuadResult d2 = integrate_region(integrand, cfg, Region::kD2);
  QuadResult d3 = integrate_region(integrand, cfg, Region::kD3);
  Complex total = d1.value + d2.value + d3.value;
  const double total_error = d1.abs_error_estimate + d2.abs_error_estimate + d3.abs_error_estimate;
  Real computed_log = log(abs(total.re)) + integrand.log_offset();
  const double ratio = ((abs(d2.value) + abs(d3.value)) / abs(d1.value)).to_double();
  return CauchyValidation{cfg,
                          std::move(d1),
                          std::move(d2),
                          std::move(d3),
                          std::move(total),
                          total_error,
                          Real(std::numeric_limits<double>::quiet_NaN(), cfg.precision),
                          std::move(computed_log),
                          std::numeric_limits<double>::quiet_NaN(),
                          ratio};
}

CauchyValidation validate_cauchy(std::uint64_t n, std::uint64_t m, Precision bits,
                                 double rel_tol) {
  CauchyValidation v = integrate_regions(make_contour(n, m, bits), rel_tol);
  const ExactRational exact(count_restricted(n, std::min(m, n)), factorial(n));
  const Precision p = v.computed_log.precision();
  v.exact_log = log(Real(exact, p));
  v.relative_deviation = abs(expm1(v.computed_log - v.exact_log)).to_double();
  return v;
}

Complex phi_n_eval(const Real& theta_in, const SaddleParams& params) {
  const Precision p = params.w.precision();
  const Real theta = theta_in.rounded(p);
  const Real& w = params.w;
  const Complex phase = unit_phase(theta);
  Complex out = exp(Complex(w * phase.re, w * phase.im));
  out.re -= exp(w);
  out.im -= theta * Real(params.n, p);
  for (std::int64_t j = std::max<std::int64_t>(1, params.d - 1); j <= params.d + 1; ++j) {
    const Real lambda = lambda_at(j, params);
    const Complex rotation = unit_phase(theta * Real(j, p));
    out -= rotation * lambda;
    out.re += lambda;
    out.im += theta * Real(j, p) * lambda;
  }
  return out;
}

Complex phi_n_eval(const Real& theta, std::uint64_t n, Precision bits) {
  return phi_n_eval(theta, saddle_params(n, bits));
}

Real re_phi_closed_form(const Real& theta_in, const SaddleParams& params) {
  const Precision p = params.w.precision();
  const Real theta = theta_in.rounded(p);
  const Real& w = params.w;
  Real out = exp(w * cos(theta)) * cos(w * sin(theta)) - exp(w);
  for (std::int64_t j = std::max<std::int64_t>(1, params.d - 1); j <= params.d + 1; ++j) {
    out += lambda_at(j, params) * (1.0 - cos(theta * Real(j, p)));
  }
  return out;
}

PhiDiagnostics phi_diagnostics(std::uint64_t n, double step, Precision bits) {
  const SaddleParams params = saddle_params(n, bits);
  const Precision p = params.w.precision();
  const Real h(step, p);
  const Complex at_zero = phi_n_eval(Real(0, p), params);
  const Complex plus = phi_n_eval(h, params);
  const Complex minus = phi_n_eval(-h, params);
  const Real first = abs(plus - minus) / (h * 2.0);
  Complex second = plus + minus;
  second -= at_zero * Real(2, p);
  second /= h * h;
  const double ratio = (second.re / (-params.b)).to_double();
  return PhiDiagnostics{n, params.b, abs(at_zero), first, std::move(second), step, ratio};
}

RePhiReport re_phi_bound_check(std::uint64_t n, std::size_t grid_count, Precision bits) {
  if (grid_count < 2) fail(ErrorKind::kInvalidArgument, "grid needs at least two points");
  const SaddleParams params = saddle_params(n, bits);
  const Precision p = params.w.precision();
  const double gamma = std::pow(std::log(static_cast<double>(n)), -0.2);
  const Real pi = Real::pi(p);
  const Real lo(gamma, p);
  const Real scale = log(Real(n, p)) / Real(n, p);

  RePhiReport report{n, gamma, grid_count, -std::numeric_limits<double>::infinity(), gamma,
                     0.0, 0.0, false};
  for (std::size_t i = 0; i < grid_count; ++i) {
    const Real theta =
        lo + (pi - lo) * (static_cast<double>(i) / static_cast<double>(grid_count - 1));
    const double value = (re_phi_closed_form(theta, params) * scale).to_double();
    if (i == 0) report.scaled_at_gamma = value;
    if (i + 1 == grid_count) report.scaled_at_pi = value;
    if (value > report.max_scaled) {
      report.max_scaled = value;
      report.argmax_theta = theta.to_double();
    }
  }
  report.negative = report.max_scaled < 0.0;
  return report;
}

}  // namespace setpart
