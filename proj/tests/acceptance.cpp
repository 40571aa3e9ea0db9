// Acceptance suite: one PASS/FAIL line per criterion. Run with no arguments
// for all criteria or with criterion numbers to select a subset. Exit status
// is nonzero if any selected criterion fails.

#include "setpart/asymptotics.hpp"
#include "setpart/exact.hpp"
#include "setpart/poisson.hpp"
#include "setpart/saddle.hpp"
#include "setpart/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace setpart;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::size_t worker_count() {
  return std::max<std::size_t>(1, std::min<std::size_t>(8, std::thread::hardware_concurrency()));
}

// 1. count_restricted == oracle_count for n <= 14, 0 <= m <= n.
Outcome oracle_equivalence() {
  std::size_t pairs = 0;
  for (std::uint64_t n = 0; n <= 14; ++n) {
    for (std::uint64_t m = 0; m <= n; ++m) {
      if (n == 0) continue;
      if (count_restricted(n, m) != oracle_count(n, m)) {
        return {false, "mismatch at n=" + std::to_string(n) + " m=" + std::to_string(m)};
      }
      ++pairs;
    }
  }
  return {true, std::to_string(pairs) + " (n, m) pairs agree exactly"};
}

// 2. Triangle B_n == n! [x^n] prod_j restricted_factor(j, n, n) for n <= 200,
//    and Dobinski log B_n within 1e-30.
Outcome bell_consistency() {
  constexpr std::uint64_t kMax = 200;
  const auto triangle = bell_sequence(kMax);
  // The coefficient of x^n only involves powers x^{jk} with jk <= n, so one
  // product with m = degree = 200 carries every truncation n <= 200.
  const auto series = restricted_product(kMax, kMax, kMax);
  ExactInteger fact = 1;
  for (std::uint64_t n = 0; n <= kMax; ++n) {
    if (n > 0) fact *= n;
    if (ExactRational(series[n] * fact) != ExactRational(triangle[n])) {
      return {false, "extraction differs at n=" + std::to_string(n)};
    }
  }
  for (std::uint64_t n : {1u, 37u, 113u, 200u}) {
    if (bell_by_extraction(n) != triangle[n]) {
      return {false, "per-n extraction differs at n=" + std::to_string(n)};
    }
  }
  double worst = 0;
  for (std::uint64_t n = 1; n <= kMax; ++n) {
    const Real exact = log(Real(triangle[n], 320));
    worst = std::max(worst, abs(dobinski_log_bell(n, 256) - exact).to_double());
  }
  return {worst < 1e-30, "extraction exact for n<=200; max |dobinski - log B_n| = " + fmt(worst)};
}

// 3. Cauchy integral vs exact coefficient, relative error < 1e-8.
Outcome cauchy_exactness() {
  double worst = 0;
  std::ostringstream detail;
  for (std::uint64_t n : {20u, 50u}) {
    for (std::uint64_t m : {1u, 2u, 5u}) {
      const auto v = validate_cauchy(n, m);
      worst = std::max(worst, v.relative_deviation);
    }
  }
  detail << "max relative deviation over n in {20,50}, m in {1,2,5}: " << fmt(worst);
  return {worst < 1e-8, detail.str()};
}

// 4. (|J2| + |J3|) / |J1| < 1e-3 at n = 200, with m at the scale of R_n.
Outcome region_smallness() {
  const auto p = saddle_params(200);
  const auto m = static_cast<std::uint64_t>(std::ceil(p.r.to_double()));
  const auto v = integrate_regions(make_contour(200, m), 1e-10);
  return {v.outer_to_central < 1e-3,
          "n=200 m=" + std::to_string(m) + ": (|J2|+|J3|)/|J1| = " + fmt(v.outer_to_central) +
              " (delta_n sqrt(b) = " +
              fmt(v.config.delta * std::sqrt(p.b.to_double())) + ")"};
}

// 5. phi_n(0), phi_n'(0) small relative to b; phi_n''(0) / -b in (0.9, 1.1).
Outcome phi_checks() {
  bool pass = true;
  std::ostringstream detail;
  for (std::uint64_t n : {10000u, 1000000u}) {
    const auto d = phi_diagnostics(n);
    const double zero = (d.phi_at_zero / d.b).to_double();
    const double first = (d.first_difference / d.b).to_double();
    const bool ok = zero < 1e-30 && first < 1e-6 && d.second_over_minus_b > 0.9 &&
                    d.second_over_minus_b < 1.1;
    pass = pass && ok;
    detail << "n=" << n << ": |phi(0)|/b=" << fmt(zero) << " |phi'(0)|/b=" << fmt(first)
           << " phi''(0)/-b=" << fmt(d.second_over_minus_b) << "; ";
  }
  return {pass, detail.str()};
}

// 6. max log(n) Re phi_n(theta) / n < 0 on gamma_n <= |theta| <= pi.
Outcome re_phi_negativity() {
  bool pass = true;
  std::ostringstream detail;
  for (std::uint64_t n : {1000ull, 1000000ull, 1000000000ull}) {
    const auto r = re_phi_bound_check(n, 20000);
    pass = pass && r.negative;
    detail << "n=" << n << ": max=" << fmt(r.max_scaled) << " at theta=" << fmt(r.argmax_theta)
           << "; ";
  }
  return {pass, detail.str()};
}

// 7. |full - window| < 1e-6 at n = 1e6 over the default grid; Chernoff
//    bounds dominate exact tails wherever applicable.
Outcome poisson_collapse() {
  const auto p = saddle_params(1000000);
  double worst = 0;
  std::size_t bounds = 0;
  for (double c : default_c_grid()) {
    const std::int64_t j_max = default_j_max(p, c);
    const auto full = full_product_cdf(p, c, j_max);
    worst = std::max(worst, abs(full.value - window_product_cdf(p, c)).to_double());
    const Real h = threshold(p, c);
    for (std::int64_t j = 1; j <= j_max + 4; ++j) {
      const Real lambda = lambda_at(j, p);
      if (lambda >= h) continue;
      if (poisson_tails(lambda, h).survival > chernoff_tail(j, p, c)) {
        return {false, "Chernoff bound below exact tail at c=" + fmt(c) + " j=" + std::to_string(j)};
      }
      ++bounds;
    }
  }
  return {worst < 1e-6, "max |full - window| = " + fmt(worst) + "; " + std::to_string(bounds) +
                            " Chernoff bounds dominate"};
}

// 8. Chi-square uniformity over shapes (n <= 8, 1e6 draws, level 1e-3) and
//    TV(M_30 empirical, exact) < 0.02 at 1e5 draws.
Outcome sampler_correctness() {
  bool pass = true;
  std::ostringstream detail;
  double worst_p = 1;
  for (std::uint64_t n = 2; n <= 8; ++n) {
    const auto r = chi_square_uniformity(n, 1000000, 100 + n, worker_count());
    worst_p = std::min(worst_p, r.p_value);
    pass = pass && r.p_value > 1e-3;
  }
  const double tv =
      tv_distance(empirical_m_distribution(30, 100000, 30, worker_count()), exact_distribution(30));
  pass = pass && tv < 0.02;
  detail << "min chi-square p-value over n=2..8: " << fmt(worst_p) << "; TV(M_30) = " << fmt(tv)
         << " (n=1 has a single shape)";
  return {pass, detail.str()};
}

// 9. KS distance to Phi(c) Phi(c + u_n) does not grow beyond the noise band
//    along three scan_f members with f near 1/2; the (1 - f) shift decreases
//    along the case-(i) subsequence.
Outcome limit_trend() {
  constexpr std::size_t kSamples = 20000;
  const double band = 2 * std::sqrt(std::log(2000.0) / (2.0 * 10000.0));
  std::vector<std::uint64_t> members;
  for (auto [lo, hi] : {std::pair<std::uint64_t, std::uint64_t>{1000, 3000},
                        {10000, 30000},
                        {100000, 300000}}) {
    const auto hits = scan_f(lo, hi, 0.5, 0.01);
    if (hits.empty()) return {false, "no scan_f member in [" + std::to_string(lo) + ", " +
                                         std::to_string(hi) + "]"};
    members.push_back(hits.front());
  }
  bool ks_ok = true;
  std::ostringstream detail;
  double previous = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto n = members[i];
    const auto batch = sample_batch(n, kSamples, 9000 + i, worker_count());
    const double u = scenario_u(n).u.to_double();
    const double ks = ks_to_limit(batch, u);
    if (i > 0 && ks > previous + band) ks_ok = false;
    previous = ks;
    detail << "n=" << n << " f=" << fmt(saddle_params(n).f.to_double()) << " KS=" << fmt(ks)
           << "; ";
  }
  detail << "band=" << fmt(band) << "; ";

  bool monotone = true;
  const auto subsequence = subsequence_case_i(12);
  double last = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < subsequence.size(); ++i) {
    const double u = scenario_u(subsequence[i]).u_one_minus_f.to_double();
    if (!(u < last)) {
      if (monotone) detail << "(1-f) shift rises at member " << i << "->" << i + 1 << " ("
                           << fmt(last) << " -> " << fmt(u) << ")";
      monotone = false;
    }
    last = u;
  }
  if (monotone) detail << "(1-f) shift decreasing over 12 members";
  return {ks_ok && monotone, detail.str()};
}

// 10. Moser-Wyman error decreasing along 1e2, 1e3, 1e4 and < 5% at n = 500.
Outcome moser_wyman_trend() {
  std::ostringstream detail;
  bool decreasing = true;
  double last = std::numeric_limits<double>::infinity();
  for (std::uint64_t n : {100u, 1000u, 10000u}) {
    const Real reference = dobinski_log_bell(n) - lgamma(Real(n + 1, kDefaultPrecision));
    const double err = abs(bell_log_moser_wyman(n) - reference).to_double();
    decreasing = decreasing && err < last;
    last = err;
    detail << "n=" << n << " err=" << fmt(err) << "; ";
  }
  const Real exact = log(Real(bell(500), 512)) - log(Real(factorial(500), 512));
  const double rel = (abs(bell_log_moser_wyman(500) - exact) / abs(exact)).to_double();
  detail << "n=500 relative=" << fmt(rel);
  return {decreasing && rel < 0.05, detail.str()};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", 60, oracle_equivalence},
      {2, "bell consistency", 120, bell_consistency},
      {3, "cauchy exactness", 600, cauchy_exactness},
      {4, "region smallness", 300, region_smallness},
      {5, "phi_n checks", 60, phi_checks},
      {6, "re phi negativity", 60, re_phi_negativity},
      {7, "poisson collapse", 120, poisson_collapse},
      {8, "sampler correctness", 600, sampler_correctness},
      {9, "limit-law trend", 1800, limit_trend},
      {10, "moser-wyman trend", 120, moser_wyman_trend},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("error: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds) {
      outcome.pass = false;
      outcome.detail += " [over budget]";
    }
    failures += !outcome.pass;
    std::printf("criterion %d (%s): %s  %s  [%.1fs / %.0fs]\n", c.id, c.name,
                outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str(), seconds, c.budget_seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
