#include "setpart/exact.hpp"

#include "setpart/error.hpp"

#include <mpfr.h>

#include <algorithm>
#include <utility>

namespace setpart {

TruncatedSeries::TruncatedSeries(std::size_t degree) : coeffs_(degree + 1) {
  coeffs_[0] = 1;
}

TruncatedSeries::TruncatedSeries(std::size_t degree, std::vector<ExactRational> coeffs)
    : coeffs_(std::move(coeffs)) {
  coeffs_.resize(degree + 1);
}

TruncatedSeries& TruncatedSeries::operator*=(const TruncatedSeries& rhs) {
  if (rhs.degree() != degree()) {
    fail(ErrorKind::kInvalidArgument, "series degrees differ");
  }
  const std::size_t deg = degree();
  std::vector<ExactRational> out(deg + 1);
  ExactRational term;
  for (std::size_t b = 0; b <= deg; ++b) {
    if (sgn(rhs.coeffs_[b]) == 0) continue;
    for (std::size_t a = 0; a + b <= deg; ++a) {
      if (sgn(coeffs_[a]) == 0) continue;
      term = coeffs_[a] * rhs.coeffs_[b];
      out[a + b] += term;
    }
  }
  coeffs_ = std::move(out);
  return *this;
}

MultiplicityVector::MultiplicityVector(std::uint64_t n,
                                       std::map<std::uint64_t, std::uint64_t> mu)
    : n_(n), mu_(std::move(mu)) {
  if (n_ == 0) fail(ErrorKind::kInvalidArgument, "multiplicity vector needs n >= 1");
  std::uint64_t total = 0;
  for (const auto& [size, count] : mu_) {
    if (size == 0 || count == 0) {
      fail(ErrorKind::kInvalidArgument, "block sizes and stored multiplicities must be >= 1");
    }
    total += size * count;
  }
  if (total != n_) {
    fail(ErrorKind::kInvalidArgument,
         "sum of j*mu(j) is " + std::to_string(total) + ", expected " + std::to_string(n_));
  }
}

std::uint64_t MultiplicityVector::operator[](std::uint64_t block_size) const {
  const auto it = mu_.find(block_size);
  return it == mu_.end() ? 0 : it->second;
}

DistributionTable::DistributionTable(std::uint64_t n, std::vector<ExactRational> exact_cdf)
    : n_(n), cdf_(std::move(exact_cdf)) {
  check_invariants();
}

DistributionTable::DistributionTable(std::uint64_t n, std::vector<double> empirical_cdf)
    : n_(n), cdf_(std::move(empirical_cdf)) {
  check_invariants();
}

namespace {

// mpq_get_d truncates; round to nearest instead.
double nearest_double(const ExactRational& q) {
  mpfr_t x;
  mpfr_init2(x, 53);
  mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDN);
  const double out = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clear(x);
  return out;
}

}  // namespace

DistributionKind DistributionTable::kind() const {
  return cdf_.index() == 0 ? DistributionKind::kExact : DistributionKind::kEmpirical;
}

std::size_t DistributionTable::size() const {
  return std::visit([](const auto& v) { return v.size(); }, cdf_);
}

const std::vector<ExactRational>& DistributionTable::exact_cdf() const {
  if (kind() != DistributionKind::kExact) {
    fail(ErrorKind::kInvalidArgument, "table is empirical");
  }
  return std::get<0>(cdf_);
}

const std::vector<double>& DistributionTable::empirical_cdf() const {
  if (kind() != DistributionKind::kEmpirical) {
    fail(ErrorKind::kInvalidArgument, "table is exact");
  }
  return std::get<1>(cdf_);
}

double DistributionTable::cdf(std::size_t m) const {
  if (m >= size()) return 1.0;
  if (kind() == DistributionKind::kExact) return nearest_double(std::get<0>(cdf_)[m]);
  return std::get<1>(cdf_)[m];
}

double DistributionTable::pmf(std::size_t m) const {
  if (m >= size()) return 0.0;
  if (kind() == DistributionKind::kExact) {
    const auto& c = std::get<0>(cdf_);
    return m == 0 ? nearest_double(c[0]) : nearest_double(ExactRational(c[m] - c[m - 1]));
  }
  const auto& c = std::get<1>(cdf_);
  return m == 0 ? c[0] : c[m] - c[m - 1];
}

void DistributionTable::check_invariants() const {
  if (size() != n_ + 1) {
    fail(ErrorKind::kInvalidArgument, "cdf must have n+1 entries");
  }
  std::visit(
      [this](const auto& c) {
        using Value = typename std::decay_t<decltype(c)>::value_type;
        for (std::size_t m = 0; m < c.size(); ++m) {
          if (c[m] < Value(0) || c[m] > Value(1) || (m > 0 && c[m] < c[m - 1])) {
            fail(ErrorKind::kInvalidArgument, "cdf must be nondecreasing in [0,1]");
          }
        }
        if (c.back() != Value(1)) fail(ErrorKind::kInvalidArgument, "cdf[n] must be 1");
        if (n_ >= 1 && c.front() != Value(0)) {
          fail(ErrorKind::kInvalidArgument, "cdf[0] must be 0");
        }
      },
      cdf_);
}

ExactInteger factorial(std::uint64_t n) {
  ExactInteger out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

std::vector<ExactInteger> bell_sequence(std::uint64_t n) {
  std::vector<ExactInteger> out{1};
  out.reserve(n + 1);
  std::vector<ExactInteger> row{1};
  std::vector<ExactInteger> next;
  for (std::uint64_t i = 1; i <= n; ++i) {
    next.assign(row.size() + 1, 0);
    next[0] = row.back();
    for (std::size_t k = 1; k < next.size(); ++k) next[k] = next[k - 1] + row[k - 1];
    row.swap(next);
    out.push_back(row[0]);
  }
  return out;
}

ExactInteger bell(std::uint64_t n) { return bell_sequence(n).back(); }

TruncatedSeries restricted_factor(std::uint64_t j, std::uint64_t m, std::size_t degree) {
  if (j == 0) fail(ErrorKind::kInvalidArgument, "block size must be >= 1");
  std::vector<ExactRational> coeffs(degree + 1);
  const std::uint64_t top = std::min<std::uint64_t>(m, degree / j);
  const ExactInteger j_fact = factorial(j);
  ExactInteger denom = 1;  // (j!)^k k!
  for (std::uint64_t k = 0; k <= top; ++k) {
    if (k > 0) denom *= j_fact * k;
    coeffs[j * k] = ExactRational(1, denom);
  }
  return TruncatedSeries(degree, std::move(coeffs));
}

TruncatedSeries restricted_product(std::uint64_t m, std::size_t degree,
                                   std::uint64_t max_block) {
  TruncatedSeries product(degree);
  for (std::uint64_t j = 1; j <= max_block; ++j) {
    product *= restricted_factor(j, m, degree);
  }
  return product;
}

ExactInteger count_restricted(std::uint64_t n, std::uint64_t m, std::uint64_t max_block) {
  if (n == 0) fail(ErrorKind::kInvalidArgument, "count_restricted needs n >= 1");
  if (max_block < n) fail(ErrorKind::kInvalidArgument, "product must cover block sizes 1..n");
  m = std::min(m, n);
  const ExactRational coeff = restricted_product(m, n, max_block)[n];
  const ExactRational scaled = coeff * factorial(n);
  return scaled.get_num();
}

ExactInteger count_restricted(std::uint64_t n, std::uint64_t m) {
  return count_restricted(n, m, n);
}

ExactInteger bell_by_extraction(std::uint64_t n) {
  if (n == 0) return 1;
  return count_restricted(n, n);
}

namespace {

// Truncated series at degree n held as integers n! * c_k, so that products
// need one exact division per coefficient instead of rational arithmetic.
class ScaledSeries {
 public:
  ScaledSeries(std::uint64_t n, const ExactInteger& n_fact)
      : n_(n), n_fact_(&n_fact), coeffs_(n + 1, 0) {
    coeffs_[0] = n_fact;
  }

  const ExactInteger& operator[](std::size_t k) const { return coeffs_[k]; }

  /// Multiplies by sum_{k <= top} x^{jk} / ((j!)^k k!), top = min(m, n / j).
  void multiply_factor(std::uint64_t j, std::uint64_t m) {
    const std::uint64_t top = std::min<std::uint64_t>(m, n_ / j);
    if (top == 0) return;
    // Scaled factor coefficients n! / ((j!)^k k!).
    std::vector<ExactInteger> factor(top + 1);
    const ExactInteger j_fact = factorial(j);
    factor[0] = *n_fact_;
    for (std::uint64_t k = 1; k <= top; ++k) {
      mpz_divexact(factor[k].get_mpz_t(), factor[k - 1].get_mpz_t(),
                   ExactInteger(j_fact * k).get_mpz_t());
    }
    ExactInteger acc;
    for (std::uint64_t deg = n_ + 1; deg-- > 0;) {
      acc = 0;
      for (std::uint64_t k = 0; k <= top && j * k <= deg; ++k) {
        const auto& c = coeffs_[deg - j * k];
        if (c != 0) mpz_addmul(acc.get_mpz_t(), c.get_mpz_t(), factor[k].get_mpz_t());
      }
      mpz_divexact(coeffs_[deg].get_mpz_t(), acc.get_mpz_t(), n_fact_->get_mpz_t());
    }
  }

  /// n! [x^n] (this * other) for the true series.
  ExactInteger top_coefficient_of_product(const ScaledSeries& other) const {
    ExactInteger acc = 0;
    for (std::uint64_t i = 0; i <= n_; ++i) {
      mpz_addmul(acc.get_mpz_t(), coeffs_[i].get_mpz_t(), other.coeffs_[n_ - i].get_mpz_t());
    }
    mpz_divexact(acc.get_mpz_t(), acc.get_mpz_t(), n_fact_->get_mpz_t());
    return acc;
  }

 private:
  std::uint64_t n_;
  const ExactInteger* n_fact_;
  std::vector<ExactInteger> coeffs_;
};

}  // namespace

// For multiplicity bound m the factors with j > n / (m + 1) are never
// truncated, so their product is shared between all m with the same cutoff
// and is built once, from the largest block size down.
DistributionTable exact_distribution(std::uint64_t n) {
  if (n == 0) fail(ErrorKind::kInvalidArgument, "exact_distribution needs n >= 1");
  const ExactInteger total = bell(n);
  const ExactInteger n_fact = factorial(n);

  std::map<std::uint64_t, ScaledSeries> suffix;  // cutoff J -> prod_{j > J} factor_j
  {
    std::vector<std::uint64_t> cutoffs;
    for (std::uint64_t m = 1; m <= n; ++m) cutoffs.push_back(n / (m + 1));
    ScaledSeries running(n, n_fact);
    for (std::uint64_t j = n + 1; j-- > 0;) {
      if (std::find(cutoffs.begin(), cutoffs.end(), j) != cutoffs.end()) suffix.emplace(j, running);
      if (j >= 1) running.multiply_factor(j, n);
    }
  }

  std::vector<ExactRational> cdf(n + 1);
  for (std::uint64_t m = 1; m <= n; ++m) {
    const std::uint64_t cutoff = n / (m + 1);
    ScaledSeries prefix(n, n_fact);
    for (std::uint64_t j = 1; j <= cutoff; ++j) prefix.multiply_factor(j, m);
    cdf[m] = ExactRational(prefix.top_coefficient_of_product(suffix.at(cutoff)), total);
    cdf[m].canonicalize();
  }
  return DistributionTable(n, std::move(cdf));
}

namespace {

void enumerate(std::uint64_t remaining, std::uint64_t largest,
               std::map<std::uint64_t, std::uint64_t>& mu, std::uint64_t n,
               const std::function<void(const MultiplicityVector&)>& visit) {
  if (remaining == 0) {
    visit(MultiplicityVector(n, mu));
    return;
  }
  for (std::uint64_t j = std::min(largest, remaining); j >= 1; --j) {
    for (std::uint64_t count = 1; count * j <= remaining; ++count) {
      mu[j] = count;
      enumerate(remaining - count * j, j - 1, mu, n, visit);
    }
    mu.erase(j);
  }
}

}  // namespace

void for_each_multiplicity_vector(std::uint64_t n,
                                  const std::function<void(const MultiplicityVector&)>& visit) {
  if (n == 0) fail(ErrorKind::kInvalidArgument, "n must be >= 1");
  std::map<std::uint64_t, std::uint64_t> mu;
  enumerate(n, n, mu, n, visit);
}

ExactInteger partitions_with_shape(const MultiplicityVector& v) {
  ExactInteger denom = 1;
  for (const auto& [size, count] : v.mu()) {
    ExactInteger power;
    mpz_pow_ui(power.get_mpz_t(), factorial(size).get_mpz_t(), static_cast<unsigned long>(count));
    denom *= power * factorial(count);
  }
  ExactInteger out = factorial(v.n());
  mpz_divexact(out.get_mpz_t(), out.get_mpz_t(), denom.get_mpz_t());
  return out;
}

ExactInteger oracle_count(std::uint64_t n, std::uint64_t m, std::uint64_t cap) {
  if (n == 0) fail(ErrorKind::kInvalidArgument, "oracle_count needs n >= 1");
  if (n > cap) {
    fail(ErrorKind::kOracleScaleExceeded,
         "oracle scale exceeded: n=" + std::to_string(n) + " > cap=" + std::to_string(cap));
  }
  ExactInteger total = 0;
  for_each_multiplicity_vector(n, [&](const MultiplicityVector& v) {
    if (max_mult(v) <= m) total += partitions_with_shape(v);
  });
  return total;
}

std::uint64_t max_mult(const MultiplicityVector& v) {
  std::uint64_t best = 0;
  for (const auto& [size, count] : v.mu()) best = std::max(best, count);
  return best;
}

}  // namespace setpart
