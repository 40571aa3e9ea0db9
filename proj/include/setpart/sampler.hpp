#pragma once

// Exact-uniform random set partitions by Stam's urn method: draw an urn
// count K with P(K = k) = k^n / (k! e B_n), throw n labelled balls uniformly
// into K urns and read off the occupancy profile of the nonempty urns.

#include "setpart/exact.hpp"
#include "setpart/random.hpp"
#include "setpart/real.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace setpart {

/// Inversion table for the urn count K.
class UrnCountTable {
 public:
  explicit UrnCountTable(std::uint64_t n);

  std::uint64_t n() const { return n_; }
  std::uint64_t first() const { return first_; }
  std::uint64_t last() const { return first_ + cumulative_.size() - 1; }
  /// Upper bound on the probability mass moved onto the last index by
  /// truncating weights below peak * 1e-30.
  double truncation_bias() const { return truncation_bias_; }

  std::uint64_t draw(Rng& rng) const;
  double probability(std::uint64_t k) const;

 private:
  std::uint64_t n_;
  std::uint64_t first_ = 1;
  std::vector<double> cumulative_;  // normalised, last entry 1
  double truncation_bias_ = 0.0;
};

/// Exact check that sum_k k^n / (k! e) = B_n: rational partial sums with a
/// rigorous geometric tail bound and rational bounds on e must pin B_n as
/// the unique integer in the resulting interval.
bool verify_urn_weights_exact(std::uint64_t n);

class PartitionSampler {
 public:
  /// Runs verify_urn_weights_exact first when n <= 30 and throws if it fails.
  explicit PartitionSampler(std::uint64_t n);

  std::uint64_t n() const { return table_.n(); }
  const UrnCountTable& urn_counts() const { return table_; }

  MultiplicityVector sample(Rng& rng);
  /// M_n of a fresh sample without materialising the multiplicity map.
  std::uint64_t sample_max_mult(Rng& rng);

 private:
  void throw_balls(Rng& rng, std::uint64_t urns);

  UrnCountTable table_;
  std::vector<std::uint64_t> occupancy_;
  std::vector<std::uint64_t> size_counts_;
};

/// One draw with a throwaway sampler.
MultiplicityVector sample_partition(std::uint64_t n, Rng& rng);

/// Empirical CDF of M_n over sample_count draws.
DistributionTable empirical_m_distribution(std::uint64_t n, std::size_t sample_count,
                                           std::uint64_t seed, std::size_t worker_count = 1);

struct SampleBatch {
  std::uint64_t n;
  std::uint64_t seed;
  std::size_t worker_count;
  double w;
  double r;
  double truncation_bias;
  std::vector<std::uint64_t> maxima;  // raw M per sample
  std::vector<double> samples;        // (M - R) / sqrt(R)
  std::size_t count() const { return samples.size(); }
};

/// Batch of normalised maxima; n >= 3.
SampleBatch sample_batch(std::uint64_t n, std::size_t sample_count, std::uint64_t seed,
                         std::size_t worker_count = 1, Precision bits = kDefaultPrecision);

/// 1/2 sum_m |pmf_a(m) - pmf_b(m)|; tables must share n.
double tv_distance(const DistributionTable& a, const DistributionTable& b);

/// sup_x |F_emp(x) - G(x)| for a right-continuous G with left limits
/// `cdf_left` (pass the same function when G is continuous).
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf,
                   const std::function<double(double)>& cdf_left);
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

/// KS distance between the batch and c -> Phi(c) Phi(c + u). Needs >= 100 samples.
double ks_to_limit(const SampleBatch& batch, double u);

/// Pearson chi-square statistic and upper-tail p-value over all
/// multiplicity vectors of n (n <= 8 keeps every cell well populated).
struct ChiSquareResult {
  double statistic;
  std::size_t degrees_of_freedom;
  double p_value;
};

ChiSquareResult chi_square_uniformity(std::uint64_t n, std::size_t sample_count,
                                      std::uint64_t seed, std::size_t worker_count = 1);

/// Upper tail of the chi-square distribution.
double chi_square_survival(double statistic, std::size_t degrees_of_freedom);

}  // namespace setpart
