#pragma once

// Binary floating point with an explicit mantissa width, backed by MPFR.
//
// Every value carries its own precision. Arithmetic between two values is
// performed at the larger of the two precisions; arithmetic with a builtin
// operand keeps the precision of the Real operand.

#include <mpfr.h>

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace setpart {

using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 256;

class Real {
 public:
  explicit Real(Precision bits = kDefaultPrecision);
  Real(double value, Precision bits);
  template <std::signed_integral I>
  Real(I value, Precision bits) : Real(bits) {
    mpfr_set_si(value_, static_cast<long>(value), MPFR_RNDN);
  }
  template <std::unsigned_integral U>
  Real(U value, Precision bits) : Real(bits) {
    mpfr_set_ui(value_, static_cast<unsigned long>(value), MPFR_RNDN);
  }
  Real(const mpz_class& value, Precision bits);
  Real(const mpq_class& value, Precision bits);
  Real(std::string_view decimal, Precision bits);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real pi(Precision bits);
  static Real infinity(Precision bits);

  Precision precision() const { return mpfr_get_prec(value_); }
  /// Rounds to a new mantissa width in place.
  void round_to(Precision bits);
  Real rounded(Precision bits) const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  long to_long_floor() const;
  mpz_class to_mpz_floor() const;
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  /// Decimal scientific notation with `digits` significant digits
  /// (0 selects enough digits to round-trip).
  std::string to_string(int digits = 0) const;
  /// Mantissa in [1,10) and base-10 exponent, both as strings.
  std::pair<std::string, std::string> to_mantissa_exponent(int digits = 40) const;

  Real operator-() const;
  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator+=(double rhs);
  Real& operator-=(double rhs);
  Real& operator*=(double rhs);
  Real& operator/=(double rhs);

  friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
  friend Real operator+(Real lhs, double rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, double rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, double rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, double rhs) { return lhs /= rhs; }
  friend Real operator+(double lhs, Real rhs) { return rhs += lhs; }
  friend Real operator*(double lhs, Real rhs) { return rhs *= lhs; }
  friend Real operator-(double lhs, const Real& rhs);
  friend Real operator/(double lhs, const Real& rhs);

  friend bool operator==(const Real& a, const Real& b) {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, double b) {
    return mpfr_cmp_d(a.value_, b) == 0;
  }
  friend std::partial_ordering operator<=>(const Real& a, double b);

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real floor(const Real& x);
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, long exponent);
/// log Gamma(x) for x > 0.
Real lgamma(const Real& x);
/// log(k!) at the requested precision.
Real log_factorial(std::uint64_t k, Precision bits);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

/// A complex number with Real parts; both parts share one precision.
struct Complex {
  Real re;
  Real im;

  explicit Complex(Precision bits = kDefaultPrecision) : re(bits), im(bits) {}
  Complex(Real real_part, Real imag_part)
      : re(std::move(real_part)), im(std::move(imag_part)) {}

  Precision precision() const { return re.precision(); }

  Complex& operator+=(const Complex& rhs);
  Complex& operator-=(const Complex& rhs);
  Complex& operator*=(const Complex& rhs);
  Complex& operator*=(const Real& rhs);
  Complex& operator/=(const Real& rhs);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator*(Complex a, const Real& b) { return a *= b; }
  friend Complex operator/(Complex a, const Real& b) { return a /= b; }
};

Complex conj(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real abs(const Complex& z);
Complex exp(const Complex& z);
/// Principal branch.
Complex log(const Complex& z);
/// e^{i theta}
Complex unit_phase(const Real& theta);

}  // namespace setpart
