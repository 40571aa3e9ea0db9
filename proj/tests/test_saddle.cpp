#include "setpart/error.hpp"
#include "setpart/exact.hpp"
#include "setpart/quadrature.hpp"
#include "setpart/saddle.hpp"

#include <doctest.h>

#include <cmath>

using namespace setpart;

TEST_CASE("gauss-legendre rule") {
  const auto rule = gauss_legendre(20, 192);
  Real total(0, 192);
  for (const auto& w : rule.weights) total += w;
  CHECK(abs(total - 2.0).to_double() < 1e-50);
  // Exact for x^38, whose integral over [-1, 1] is 2/39.
  Real moment(0, 192);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) moment += rule.weights[i] * pow(rule.nodes[i], 38);
  CHECK(abs(moment - Real(2, 192) / 39.0).to_double() < 1e-50);
}

TEST_CASE("adaptive quadrature on known integrals") {
  const Precision p = 192;
  const Real pi = Real::pi(p);
  AdaptiveOptions opts;
  opts.abs_tolerance = 1e-40;
  for (long k : {0L, 1L, 7L}) {
    const auto r = integrate_adaptive([&](const Real& t) { return unit_phase(t * Real(k, p)); },
                                      {{-pi, pi}}, opts, p);
    CHECK(r.converged);
    const Real expected = k == 0 ? pi * 2.0 : Real(0, p);
    CHECK(abs(r.value.re - expected).to_double() < 1e-38);
    CHECK(abs(r.value.im).to_double() < 1e-38);
  }
  // A sharply peaked integrand forces refinement: int exp(-x^2 / eps) over [-1, 1].
  const Real eps(1e-4, p);
  const auto peaked = integrate_adaptive(
      [&](const Real& x) { return Complex(exp(-(x * x) / eps), Real(0, p)); },
      {{Real(-1, p), Real(1, p)}}, opts, p);
  CHECK(peaked.converged);
  CHECK(peaked.panel_count > 8);
  CHECK(abs(peaked.value.re - sqrt(pi * eps)).to_double() < 1e-38);

  AdaptiveOptions tight = opts;
  tight.max_panels = 6;
  const auto starved = integrate_adaptive(
      [&](const Real& x) { return Complex(exp(-(x * x) / eps), Real(0, p)); },
      {{Real(-1, p), Real(1, p)}}, tight, p);
  CHECK_FALSE(starved.converged);
}

TEST_CASE("cauchy integrand symmetry") {
  const CauchyIntegrand f(15, 2, 192);
  const Real t(0.4, 192);
  const Complex a = f.log_value(t);
  const Complex b = f.log_value(-t);
  CHECK(abs(a.re - b.re).to_double() < 1e-45);
  CHECK(abs(a.im + b.im).to_double() < 1e-45);
  CHECK(abs(f.log_value(Real(0, 192)).im).to_double() < 1e-50);
  // The modulus is maximal on the positive axis.
  CHECK(a.re < f.log_offset());
}

TEST_CASE("contour configuration") {
  const auto cfg = make_contour(200, 3);
  CHECK(cfg.delta == doctest::Approx(std::pow(200.0, 1.0 / 7) / std::sqrt(200 * std::log(200.0))));
  CHECK(cfg.gamma == doctest::Approx(std::pow(std::log(200.0), -0.2)));
  CHECK(cfg.delta < cfg.gamma);
  CHECK_THROWS_AS(with_split(cfg, 0.5, 0.4), Error);
  CHECK_THROWS_AS(with_split(cfg, 0.1, 4.0), Error);
  CHECK_THROWS_AS(make_contour(2, 1), Error);
  CHECK(make_contour(10, 50).m == 10);
}

TEST_CASE("cauchy integral recovers the exact coefficient") {
  for (std::uint64_t m : {1u, 3u}) {
    const auto v = validate_cauchy(14, m, 160, 1e-12);
    CHECK(v.relative_deviation < 1e-10);
    const Real exact = log(Real(ExactRational(count_restricted(14, m), factorial(14)), 160));
    CHECK(abs(v.exact_log - exact).to_double() < 1e-40);
  }
}

TEST_CASE("the total does not depend on where the contour is split") {
  const auto base = make_contour(16, 2, 160);
  const auto a = integrate_regions(base, 1e-12);
  const auto b = integrate_regions(with_split(base, 0.05, 1.5), 1e-12);
  CHECK(abs(a.computed_log - b.computed_log).to_double() < 1e-10);
  CHECK(a.outer_to_central != doctest::Approx(b.outer_to_central));
}

TEST_CASE("phi_n at the saddle") {
  const auto p = saddle_params(5000);
  CHECK(abs(phi_n_eval(Real(0, 256), p)).to_double() < 1e-60);
  for (double t : {0.3, 1.0, 2.5, -1.7}) {
    const Complex z = phi_n_eval(Real(t, 256), p);
    CHECK(abs(z.re - re_phi_closed_form(Real(t, 256), p)).to_double() < 1e-50 * p.b.to_double());
  }
  const auto d = phi_diagnostics(5000);
  CHECK((d.phi_at_zero / d.b).to_double() < 1e-30);
  CHECK((d.first_difference / d.b).to_double() < 1e-6);
  // The window terms remove a fixed share of the curvature:
  // -phi''(0) = b - sum_{j=d-1}^{d+1} j^2 lambda_j.
  Real removed(0, 256);
  for (std::int64_t j = p.d - 1; j <= p.d + 1; ++j) {
    removed += Real(j * j, 256) * exp(Real(j, 256) * log(p.w) - lgamma(Real(j + 1, 256)));
  }
  CHECK(d.second_over_minus_b == doctest::Approx((1 - removed / p.b).to_double()).epsilon(1e-6));
}

TEST_CASE("re phi bound on the outer arcs") {
  const auto r = re_phi_bound_check(1000, 2000);
  CHECK(r.negative);
  CHECK(r.max_scaled < 0);
  CHECK(r.max_scaled >= r.scaled_at_gamma);
  CHECK(r.max_scaled >= r.scaled_at_pi);
  CHECK_THROWS_AS(re_phi_bound_check(1000, 1), Error);
}
