#include "setpart/asymptotics.hpp"
#include "setpart/error.hpp"
#include "setpart/exact.hpp"

#include <doctest.h>

#include <cmath>

using namespace setpart;

namespace {

// Plain bisection on w e^w - x, independent of the Newton solver.
Real bisect_w(const Real& x, Precision bits) {
  Real lo(0, bits);
  Real hi = log1p(x) + 1.0;
  for (int i = 0; i < static_cast<int>(bits) + 20; ++i) {
    Real mid = (lo + hi) / 2.0;
    if (mid * exp(mid) < x) lo = mid; else hi = mid;
  }
  return (lo + hi) / 2.0;
}

// Phi(x) = 1/2 + phi(x) sum_k x^{2k+1} / (2k+1)!!, independent of erfc.
double series_normal_cdf(double x) {
  double term = x, sum = x;
  for (int k = 1; k < 200; ++k) {
    term *= x * x / (2.0 * k + 1.0);
    sum += term;
  }
  return 0.5 + std::exp(-x * x / 2.0) / std::sqrt(2.0 * M_PI) * sum;
}

}  // namespace

TEST_CASE("omega constant") {
  const Real w = solve_w(1.0, 256);
  CHECK(w.to_double() == doctest::Approx(0.5671432904097838));
  CHECK(abs(w - bisect_w(Real(1, 300), 300)).to_double() < 1e-70);
}

TEST_CASE("solver residual contract across scales") {
  for (double x : {1e-3, 0.5, 3.0, 100.0, 1e4, 1e6, 1e9, 1e12}) {
    for (Precision bits : {64, 256, 512}) {
      const Real w = solve_w(x, bits);
      const Real xr(x, bits + 64);
      const Real residual = abs(w * exp(w) - xr) / xr;
      CHECK(residual.to_double() <= 8.0 * std::ldexp(1.0, -static_cast<int>(bits)));
    }
  }
  CHECK(solve_w(100.0, 128).to_double() == doctest::Approx(3.385630140290050));
  CHECK_THROWS_AS(solve_w(0.0, 64), Error);
  CHECK_THROWS_AS(solve_w(-1.0, 64), Error);
}

TEST_CASE("saddle parameters") {
  const auto p = saddle_params(100, 256);
  CHECK(p.d == 3);
  CHECK(p.f.to_double() == doctest::Approx(0.385630140290050));
  CHECK(p.theta.to_double() == doctest::Approx(0.385630140290050));
  CHECK(p.r.to_double() == doctest::Approx(std::pow(3.38563014029005, 3) / 6.0));
  const Real n(100, 256);
  CHECK((abs(p.w * exp(p.w) - n) / n).to_double() < 1e-70);
  // b = W (1 + W) e^W = n (1 + W).
  CHECK((abs(p.b - n * (p.w + 1.0)) / p.b).to_double() < 1e-70);
  CHECK_THROWS_AS(saddle_params(2), Error);

  // Doubling the precision only refines the low-order digits.
  for (std::uint64_t m : {1000u, 123456u, 999999937u}) {
    const auto a = saddle_params(m, 256);
    const auto b = saddle_params(m, 512);
    CHECK(a.d == b.d);
    CHECK(abs(a.w - b.w).to_double() < 1e-70);
    CHECK((abs(a.r - b.r) / b.r).to_double() < 1e-70);
  }
}

TEST_CASE("dobinski and moser-wyman against exact bell numbers") {
  for (std::uint64_t n : {3u, 10u, 50u, 120u}) {
    const Real exact = log(Real(bell(n), 512));
    CHECK(abs(dobinski_log_bell(n, 256) - exact).to_double() < 1e-60);
  }
  // Moser-Wyman is an asymptotic approximation; its error shrinks with n.
  double previous = 1e9;
  for (std::uint64_t n : {20u, 80u, 300u}) {
    const Real exact = log(Real(bell(n), 256)) - log(Real(factorial(n), 256));
    const double err = abs(bell_log_moser_wyman(n) - exact).to_double();
    CHECK(err < previous);
    previous = err;
  }
}

TEST_CASE("limit law") {
  CHECK(normal_cdf(1.96) == doctest::Approx(series_normal_cdf(1.96)).epsilon(1e-13));
  CHECK(normal_cdf(-2.5) == doctest::Approx(series_normal_cdf(-2.5)).epsilon(1e-12));
  CHECK(limit_cdf(0.0, 0.0) == doctest::Approx(0.25));
  CHECK(limit_cdf(1.96, kUnboundedShift) == doctest::Approx(series_normal_cdf(1.96)));
  CHECK(limit_cdf(0.3, 0.7) ==
        doctest::Approx(series_normal_cdf(0.3) * series_normal_cdf(1.0)));
  CHECK_THROWS_AS(limit_cdf(0.0, -1.0), Error);
  double last = 0.0;
  for (double c = -4; c <= 4; c += 0.25) {
    const double v = limit_cdf(c, 0.4);
    CHECK(v >= last);
    last = v;
  }
}

TEST_CASE("scenario shift") {
  const auto u = scenario_u(100000);
  const auto p = saddle_params(100000);
  CHECK(u.u.to_double() == doctest::Approx(std::min(u.u_f.to_double(), u.u_one_minus_f.to_double())));
  const double n = 1e5, ln = std::log(n);
  CHECK(u.u_f.to_double() ==
        doctest::Approx(std::pow(2 * M_PI, -0.25) * p.f.to_double() * std::sqrt(n) /
                        std::pow(ln, 1.75)));
  CHECK(u.boundary_scale.to_double() == doctest::Approx(std::pow(ln, 1.75) / std::sqrt(n)));
}

TEST_CASE("case-(i) subsequence") {
  const auto seq = subsequence_case_i(8);
  REQUIRE(seq.size() == 8);
  CHECK(seq[0] == 14);
  CHECK(seq[1] == 60);
  CHECK(seq[2] == 218);
  CHECK(seq[3] == 742);
  CHECK(seq[4] == 2420);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    // W(n_m) sits just below the integer m + 1, closer than 1 / n_m since
    // dW/dn = W / (n (1 + W)) < 1 / n.
    const auto p = saddle_params(seq[i], 256);
    CHECK(p.d == static_cast<std::int64_t>(i + 1));
    CHECK(1.0 - p.f.to_double() < 1.0 / static_cast<double>(seq[i]));
  }
  CHECK(subsequence_case_i(kMaxSubsequenceCount).size() == kMaxSubsequenceCount);
  CHECK_THROWS_AS(subsequence_case_i(kMaxSubsequenceCount + 1), Error);
}

TEST_CASE("scan for fractional part") {
  const auto hits = scan_f(1000, 5000, 0.5, 0.01);
  REQUIRE(!hits.empty());
  for (auto n : hits) {
    const double f = saddle_params(n).f.to_double();
    CHECK(std::abs(f - 0.5) < 0.01);
  }
  // Every accepted n is found: brute-force the same interval.
  std::size_t brute = 0;
  for (std::uint64_t n = 1000; n <= 5000; ++n) {
    if (std::abs(saddle_params(n, 128).f.to_double() - 0.5) < 0.01) ++brute;
  }
  CHECK(brute == hits.size());
}
