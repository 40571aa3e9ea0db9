#include "setpart/real.hpp"

#include "setpart/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace setpart {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kBelowRegime: return "below_asymptotic_regime";
    case ErrorKind::kOracleScaleExceeded: return "oracle_scale_exceeded";
    case ErrorKind::kNonConvergence: return "non_convergence";
    case ErrorKind::kBoundInapplicable: return "bound_inapplicable";
    case ErrorKind::kToleranceUnmet: return "tolerance_unmet";
    case ErrorKind::kMismatchedTables: return "mismatched_tables";
  }
  return "unknown";
}

namespace {

Precision clamp_precision(Precision bits) {
  return std::clamp<Precision>(bits, MPFR_PREC_MIN, MPFR_PREC_MAX);
}

// Widens `x` to at least `bits` without changing its value.
void widen(mpfr_ptr x, Precision bits) {
  if (mpfr_get_prec(x) < bits) mpfr_prec_round(x, bits, MPFR_RNDN);
}

}  // namespace

Real::Real(Precision bits) {
  mpfr_init2(value_, clamp_precision(bits));
  mpfr_set_zero(value_, 1);
}

Real::Real(double value, Precision bits) : Real(bits) {
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const mpz_class& value, Precision bits) : Real(bits) {
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& value, Precision bits) : Real(bits) {
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(std::string_view decimal, Precision bits) : Real(bits) {
  const std::string text(decimal);
  if (mpfr_set_str(value_, text.c_str(), 10, MPFR_RNDN) != 0) {
    fail(ErrorKind::kInvalidArgument, "not a decimal number: " + text);
  }
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::pi(Precision bits) {
  Real r(bits);
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

Real Real::infinity(Precision bits) {
  Real r(bits);
  mpfr_set_inf(r.value_, 1);
  return r;
}

void Real::round_to(Precision bits) {
  mpfr_prec_round(value_, clamp_precision(bits), MPFR_RNDN);
}

Real Real::rounded(Precision bits) const {
  Real r(*this);
  r.round_to(bits);
  return r;
}

long Real::to_long_floor() const { return mpfr_get_si(value_, MPFR_RNDD); }

mpz_class Real::to_mpz_floor() const {
  mpz_class out;
  Real f = floor(*this);
  mpfr_get_z(out.get_mpz_t(), f.value_, MPFR_RNDD);
  return out;
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  if (digits <= 0) {
    digits = static_cast<int>(mpfr_get_str_ndigits(10, precision()));
  }
  char* buffer = nullptr;
  const std::string format = "%." + std::to_string(digits - 1) + "Re";
  mpfr_asprintf(&buffer, format.c_str(), value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

std::pair<std::string, std::string> Real::to_mantissa_exponent(int digits) const {
  const std::string text = to_string(digits);
  const auto pos = text.find('e');
  if (pos == std::string::npos) return {text, "0"};
  std::string exponent = text.substr(pos + 1);
  if (!exponent.empty() && exponent.front() == '+') exponent.erase(0, 1);
  return {text.substr(0, pos), exponent};
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

Real& Real::operator+=(const Real& rhs) {
  widen(value_, rhs.precision());
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& rhs) {
  widen(value_, rhs.precision());
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& rhs) {
  widen(value_, rhs.precision());
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& rhs) {
  widen(value_, rhs.precision());
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator+=(double rhs) {
  mpfr_add_d(value_, value_, rhs, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(double rhs) {
  mpfr_sub_d(value_, value_, rhs, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(double rhs) {
  mpfr_mul_d(value_, value_, rhs, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(double rhs) {
  mpfr_div_d(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real operator-(double lhs, const Real& rhs) {
  Real r(rhs.precision());
  mpfr_d_sub(r.value_, lhs, rhs.value_, MPFR_RNDN);
  return r;
}

Real operator/(double lhs, const Real& rhs) {
  Real r(rhs.precision());
  mpfr_d_div(r.value_, lhs, rhs.value_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, double b) {
  if (mpfr_nan_p(a.value_) || b != b) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_d(a.value_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

namespace {

template <typename Fn>
Real unary(const Real& x, Fn fn) {
  Real r(x.precision());
  fn(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real expm1(const Real& x) { return unary(x, mpfr_expm1); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real log1p(const Real& x) { return unary(x, mpfr_log1p); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real lgamma(const Real& x) { return unary(x, mpfr_lngamma); }

Real floor(const Real& x) {
  Real r(x.precision());
  mpfr_floor(r.get(), x.get());
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r(std::max(y.precision(), x.precision()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, const Real& exponent) {
  Real r(std::max(base.precision(), exponent.precision()));
  mpfr_pow(r.get(), base.get(), exponent.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, long exponent) {
  Real r(base.precision());
  mpfr_pow_si(r.get(), base.get(), exponent, MPFR_RNDN);
  return r;
}

Real log_factorial(std::uint64_t k, Precision bits) {
  Real r(bits);
  mpfr_set_ui(r.get(), static_cast<unsigned long>(k + 1), MPFR_RNDN);
  mpfr_lngamma(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real min(const Real& a, const Real& b) { return b < a ? b : a; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Complex& Complex::operator+=(const Complex& rhs) {
  re += rhs.re;
  im += rhs.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& rhs) {
  re -= rhs.re;
  im -= rhs.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& rhs) {
  Real new_re = re * rhs.re - im * rhs.im;
  im = re * rhs.im + im * rhs.re;
  re = std::move(new_re);
  return *this;
}

Complex& Complex::operator*=(const Real& rhs) {
  re *= rhs;
  im *= rhs;
  return *this;
}

Complex& Complex::operator/=(const Real& rhs) {
  re /= rhs;
  im /= rhs;
  return *this;
}

Complex conj(const Complex& z) { return Complex(z.re, -z.im); }

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Real abs(const Complex& z) {
  Real r(z.precision());
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}

Complex exp(const Complex& z) {
  const Real scale = exp(z.re);
  Real s(z.precision());
  Real c(z.precision());
  mpfr_sin_cos(s.get(), c.get(), z.im.get(), MPFR_RNDN);
  return Complex(scale * c, scale * s);
}

Complex log(const Complex& z) { return Complex(log(abs(z)), atan2(z.im, z.re)); }

Complex unit_phase(const Real& theta) {
  Real s(theta.precision());
  Real c(theta.precision());
  mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
  return Complex(std::move(c), std::move(s));
}

}  // namespace setpart
