#include "setpart/asymptotics.hpp"

#include "setpart/error.hpp"

#include <cmath>

namespace setpart {

namespace {

bool residual_ok(const Real& w, const Real& x, Precision bits) {
  const Real residual = abs(w * exp(w) - x);
  Real limit = abs(x) * 8.0;
  mpfr_mul_2si(limit.get(), limit.get(), -static_cast<long>(bits), MPFR_RNDN);
  return residual <= limit;
}

Real bisect_w(const Real& x, Precision work) {
  Real lo(0, work);
  Real hi = x < 1.0 ? Real(x).rounded(work) : log(x.rounded(work)) + 1.0;
  for (Precision i = 0; i < work + 64; ++i) {
    Real mid = (lo + hi) / 2.0;
    if (mid * exp(mid) < x) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  return (lo + hi) / 2.0;
}

}  // namespace

double solve_w_double(double x) {
  if (!(x > 0.0)) fail(ErrorKind::kInvalidArgument, "W(x) needs x > 0");
  double w = x < std::exp(1.0) ? std::log1p(x) * 0.8 : std::log(x) - std::log(std::log(x));
  for (int i = 0; i < 100; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double fp = ew * (w + 1.0);
    const double step = f / (fp - (w + 2.0) * f / (2.0 * w + 2.0));
    w -= step;
    if (std::abs(step) <= 4e-16 * std::abs(w)) break;
  }
  return w;
}

Real solve_w(const Real& x, Precision bits) {
  if (!(x > 0.0)) fail(ErrorKind::kInvalidArgument, "W(x) needs x > 0");
  const Precision work = bits + kGuardBits;
  const Real target = x.rounded(std::max(work, x.precision()));
  Real w(solve_w_double(x.to_double()), work);
  if (!w.is_finite() || !(w > 0.0)) w = Real(1, work);
  for (int i = 0; i < 200; ++i) {
    if (residual_ok(w, target, bits)) return w;
    const Real ew = exp(w);
    w -= (w * ew - target) / (ew * (w + 1.0));
  }
  w = bisect_w(target, work);
  if (!residual_ok(w, target, bits)) {
    fail(ErrorKind::kNonConvergence, "W solver missed its residual target for x=" + x.to_string(20));
  }
  return w;
}

Real solve_w(double x, Precision bits) { return solve_w(Real(x, 64), bits); }

SaddleParams saddle_params(std::uint64_t n, Precision bits) {
  if (n < 3) {
    fail(ErrorKind::kBelowRegime, "below asymptotic regime: n=" + std::to_string(n) + " < 3");
  }
  Precision work = bits;
  Real w(bits);
  for (int attempt = 0;; ++attempt) {
    w = solve_w(Real(n, 64), work);
    Real gap = abs(w - floor(w + 0.5));
    Real resolution(1, work);
    mpfr_mul_2si(resolution.get(), resolution.get(), -static_cast<long>(work / 2), MPFR_RNDN);
    if (gap > resolution) break;
    if (attempt == 4) {
      fail(ErrorKind::kNonConvergence, "cannot separate W(n) from an integer");
    }
    work *= 2;
  }
  const Precision p = w.precision();
  const std::int64_t d = w.to_long_floor();
  Real f = w - Real(d, p);
  Real r = exp(Real(d, p) * log(w) - log_factorial(static_cast<std::uint64_t>(d), p));
  Real theta = min(f, 1.0 - f);
  Real b = w * (w + 1.0) * exp(w);
  return SaddleParams{n, std::move(w), d, std::move(f), std::move(r), std::move(theta),
                      std::move(b), bits};
}

Real rn_asymptotic(std::uint64_t n, Precision bits) {
  if (n < 3) fail(ErrorKind::kBelowRegime, "rn_asymptotic needs n >= 3");
  const Precision p = bits + kGuardBits;
  const Real nn(n, p);
  const Real log_n = log(nn);
  return nn / (sqrt(Real::pi(p) * 2.0) * log_n * sqrt(log_n));
}

Real bell_log_moser_wyman(std::uint64_t n, Precision bits) {
  if (n < 3) fail(ErrorKind::kBelowRegime, "Moser-Wyman approximation needs n >= 3");
  const Precision p = bits + kGuardBits;
  const Real w = solve_w(Real(n, 64), bits);
  const Real ew = exp(w);
  const Real spread = Real::pi(p) * 2.0 * w * (w + 1.0) * ew;
  return (ew - 1.0) - Real(n, p) * log(w) - log(spread) / 2.0;
}

Real dobinski_log_bell(std::uint64_t n, Precision bits) {
  if (n == 0) fail(ErrorKind::kInvalidArgument, "dobinski_log_bell needs n >= 1");
  const Precision work = bits + 48;
  const Real nn(n, work);

  // The summand k^n / k! peaks near k log k = n.
  const double peak_guess = std::exp(solve_w_double(static_cast<double>(n)));
  const std::uint64_t k0 = std::max<std::uint64_t>(1, std::llround(peak_guess));
  const Real t0 = nn * log(Real(k0, work)) - log_factorial(k0, work);

  Real cutoff(1, work);
  mpfr_mul_2si(cutoff.get(), cutoff.get(), -static_cast<long>(work), MPFR_RNDN);

  Real sum(1, work);  // the k0 term relative to itself
  // Upward from the peak.
  Real t(0, work);    // t_k - t0
  for (std::uint64_t k = k0; ; ++k) {
    const Real kk(k, work);
    t += nn * log1p(1.0 / kk) - log(kk + 1.0);
    const Real term = exp(t);
    sum += term;
    if (term < sum * cutoff && k + 1 > peak_guess) break;
  }
  // Downward; the k = 0 term vanishes for n >= 1.
  t = Real(0, work);
  for (std::uint64_t k = k0; k > 1; --k) {
    const Real kk(k, work);
    t += log(kk) - nn * log1p(1.0 / (kk - 1.0));
    const Real term = exp(t);
    sum += term;
    if (term < sum * cutoff && k - 1 < peak_guess) break;
  }
  Real out = log(sum) + t0 - 1.0;
  out.round_to(bits + kGuardBits);
  return out;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double limit_cdf(double c, double u) {
  if (u < 0.0 || std::isnan(u)) fail(ErrorKind::kInvalidArgument, "limit_cdf needs u >= 0");
  if (std::isinf(u)) return normal_cdf(c);
  return normal_cdf(c) * normal_cdf(c + u);
}

ScenarioU scenario_u(std::uint64_t n, Precision bits) {
  const SaddleParams params = saddle_params(n, bits);
  const Precision p = params.w.precision();
  const Real nn(n, p);
  const Real log_n = log(nn);
  const Real log_power = pow(log_n, Real(1.75, p));
  const Real scale = pow(Real::pi(p) * 2.0, Real(-0.25, p)) * sqrt(nn) / log_power;
  return ScenarioU{scale * params.theta, scale * params.f, scale * (1.0 - params.f),
                   log_power / sqrt(nn)};
}

std::vector<std::uint64_t> subsequence_case_i(std::size_t count) {
  if (count == 0 || count > kMaxSubsequenceCount) {
    fail(ErrorKind::kInvalidArgument,
         "subsequence count must be in 1.." + std::to_string(kMaxSubsequenceCount));
  }
  constexpr Precision p = 192;
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::size_t m = 1; m <= count; ++m) {
    const Real x = Real(m + 1, p) * exp(Real(m + 1, p));
    out.push_back(x.to_mpz_floor().get_ui());
  }
  return out;
}

std::vector<std::uint64_t> scan_f(std::uint64_t n_lo, std::uint64_t n_hi, double target_f,
                                  double tolerance, Precision bits) {
  if (n_lo < 3 || n_lo > n_hi) {
    fail(ErrorKind::kInvalidArgument, "scan_f needs 3 <= n_lo <= n_hi");
  }
  constexpr double kMargin = 1e-9;
  std::vector<std::uint64_t> hits;
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    const double w = solve_w_double(static_cast<double>(n));
    const double f = w - std::floor(w);
    const double gap = std::abs(f - target_f);
    const bool ambiguous = std::abs(gap - tolerance) < kMargin || f < kMargin || f > 1.0 - kMargin;
    if (!ambiguous) {
      if (gap < tolerance) hits.push_back(n);
      continue;
    }
    const SaddleParams params = saddle_params(n, bits);
    if (abs(params.f - target_f) < tolerance) hits.push_back(n);
  }
  return hits;
}

}  // namespace setpart
