#pragma once

// Exact (big rational) computation of Bell numbers and of the distribution of
// the largest block-size multiplicity M_n of a uniform set partition of [n].
//
// A(n, m) denotes the number of set partitions of [n] in which no block size
// occurs more than m times. Its exponential generating function is the
// product over block sizes j of the truncated exponentials
//   sum_{k=0}^{m} (x^j / j!)^k / k!,
// so A(n, m) = n! [x^n] of that product, and P(M_n <= m) = A(n, m) / B_n.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace setpart {

using ExactInteger = mpz_class;
using ExactRational = mpq_class;

/// Polynomial with exact rational coefficients, reduced modulo x^{degree+1}.
class TruncatedSeries {
 public:
  /// The constant series 1.
  explicit TruncatedSeries(std::size_t degree);
  TruncatedSeries(std::size_t degree, std::vector<ExactRational> coeffs);

  std::size_t degree() const { return coeffs_.size() - 1; }
  const ExactRational& operator[](std::size_t k) const { return coeffs_[k]; }
  const std::vector<ExactRational>& coeffs() const { return coeffs_; }

  /// Product truncated at degree(); `rhs` must have the same degree.
  /// Iterates over the nonzero coefficients of `rhs` only.
  TruncatedSeries& operator*=(const TruncatedSeries& rhs);
  friend TruncatedSeries operator*(TruncatedSeries lhs, const TruncatedSeries& rhs) {
    return lhs *= rhs;
  }
  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  std::vector<ExactRational> coeffs_;
};

/// Shape of a set partition: block size j -> number of blocks of that size.
class MultiplicityVector {
 public:
  /// Throws kInvalidArgument unless sum_j j*mu(j) == n, n >= 1 and every
  /// stored multiplicity is >= 1.
  MultiplicityVector(std::uint64_t n, std::map<std::uint64_t, std::uint64_t> mu);

  std::uint64_t n() const { return n_; }
  const std::map<std::uint64_t, std::uint64_t>& mu() const { return mu_; }
  std::uint64_t operator[](std::uint64_t block_size) const;

  friend bool operator==(const MultiplicityVector&, const MultiplicityVector&) = default;
  friend auto operator<=>(const MultiplicityVector&, const MultiplicityVector&) = default;

 private:
  std::uint64_t n_;
  std::map<std::uint64_t, std::uint64_t> mu_;
};

enum class DistributionKind { kExact, kEmpirical };

/// CDF of M_n over m = 0..n, exact or estimated from samples.
class DistributionTable {
 public:
  DistributionTable(std::uint64_t n, std::vector<ExactRational> exact_cdf);
  DistributionTable(std::uint64_t n, std::vector<double> empirical_cdf);

  std::uint64_t n() const { return n_; }
  DistributionKind kind() const;
  std::size_t size() const;

  const std::vector<ExactRational>& exact_cdf() const;
  const std::vector<double>& empirical_cdf() const;

  double cdf(std::size_t m) const;
  /// P(M_n = m).
  double pmf(std::size_t m) const;

  friend bool operator==(const DistributionTable&, const DistributionTable&) = default;

 private:
  void check_invariants() const;

  std::uint64_t n_;
  std::variant<std::vector<ExactRational>, std::vector<double>> cdf_;
};

/// B_n via the Bell triangle.
ExactInteger bell(std::uint64_t n);

/// B_0..B_n via the Bell triangle.
std::vector<ExactInteger> bell_sequence(std::uint64_t n);

/// sum_{k=0}^{min(m, degree/j)} x^{jk} / ((j!)^k k!), truncated at `degree`.
TruncatedSeries restricted_factor(std::uint64_t j, std::uint64_t m, std::size_t degree);

/// prod_{j=1}^{max_block} restricted_factor(j, m, degree).
TruncatedSeries restricted_product(std::uint64_t m, std::size_t degree,
                                   std::uint64_t max_block);

/// A(n, m); m > n is treated as m = n.
ExactInteger count_restricted(std::uint64_t n, std::uint64_t m);

/// Same count, with the product taken over block sizes 1..max_block
/// (any max_block >= n gives the same answer).
ExactInteger count_restricted(std::uint64_t n, std::uint64_t m, std::uint64_t max_block);

/// n! [x^n] prod_j restricted_factor(j, n, n).
ExactInteger bell_by_extraction(std::uint64_t n);

/// cdf[m] = A(n, m) / B_n for m = 0..n.
DistributionTable exact_distribution(std::uint64_t n);

inline constexpr std::uint64_t kDefaultOracleCap = 30;

/// Brute-force A(n, m): enumerates every multiplicity vector of n with all
/// multiplicities <= m and adds n! / prod_j ((j!)^{mu_j} mu_j!).
/// Throws kOracleScaleExceeded when n > cap.
ExactInteger oracle_count(std::uint64_t n, std::uint64_t m,
                          std::uint64_t cap = kDefaultOracleCap);

/// Calls `visit` for every multiplicity vector of n (every integer partition).
void for_each_multiplicity_vector(std::uint64_t n,
                                  const std::function<void(const MultiplicityVector&)>& visit);

/// Number of set partitions of [n] with shape v.
ExactInteger partitions_with_shape(const MultiplicityVector& v);

/// M = max_j mu(j).
std::uint64_t max_mult(const MultiplicityVector& v);

ExactInteger factorial(std::uint64_t n);

}  // namespace setpart
