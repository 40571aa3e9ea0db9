#include "setpart/sampler.hpp"

#include "setpart/asymptotics.hpp"
#include "setpart/error.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace setpart {

namespace {

double log_weight(std::uint64_t n, std::uint64_t k) {
  const double kk = static_cast<double>(k);
  return static_cast<double>(n) * std::log(kk) - std::lgamma(kk + 1.0);
}

// ln(1e30): weights below peak * 1e-30 are folded into the last retained index.
constexpr double kTruncationLog = 69.07755278982137;

}  // namespace

UrnCountTable::UrnCountTable(std::uint64_t n) : n_(n) {
  if (n == 0) fail(ErrorKind::kInvalidArgument, "urn table needs n >= 1");
  auto k = static_cast<std::uint64_t>(
      std::max(1.0, std::round(std::exp(solve_w_double(static_cast<double>(n))))));
  while (k > 1 && log_weight(n, k - 1) > log_weight(n, k)) --k;
  while (log_weight(n, k + 1) > log_weight(n, k)) ++k;
  const double peak = log_weight(n, k);

  std::uint64_t lo = k;
  while (lo > 1 && log_weight(n, lo - 1) >= peak - kTruncationLog) --lo;
  std::uint64_t hi = k;
  while (log_weight(n, hi + 1) >= peak - kTruncationLog) ++hi;

  double retained = 0.0;
  std::vector<double> weights;
  for (std::uint64_t j = lo; j <= hi; ++j) {
    weights.push_back(std::exp(log_weight(n, j) - peak));
    retained += weights.back();
  }
  double discarded = 0.0;
  for (std::uint64_t j = lo; j > 1;) {
    --j;
    const double w = std::exp(log_weight(n, j) - peak);
    discarded += w;
    if (w < 1e-300) break;
  }
  for (std::uint64_t j = hi + 1;; ++j) {
    const double w = std::exp(log_weight(n, j) - peak);
    discarded += w;
    if (w < 1e-300 || w < discarded * 1e-17) break;
  }

  const double total = retained + discarded;
  first_ = lo;
  cumulative_.reserve(weights.size());
  double running = 0.0;
  for (double w : weights) {
    running += w;
    cumulative_.push_back(running / total);
  }
  cumulative_.back() = 1.0;
  truncation_bias_ = discarded / total;
}

std::uint64_t UrnCountTable::draw(Rng& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return first_ + static_cast<std::uint64_t>(it - cumulative_.begin());
}

double UrnCountTable::probability(std::uint64_t k) const {
  if (k < first_ || k > last()) return 0.0;
  const std::size_t i = k - first_;
  return i == 0 ? cumulative_[0] : cumulative_[i] - cumulative_[i - 1];
}

bool verify_urn_weights_exact(std::uint64_t n) {
  if (n == 0) fail(ErrorKind::kInvalidArgument, "n must be >= 1");
  const std::uint64_t cut = 3 * n + 20;

  ExactRational partial = 0;
  ExactInteger k_fact = 1;
  for (std::uint64_t k = 1; k <= cut; ++k) {
    k_fact *= k;
    ExactInteger power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(n));
    partial += ExactRational(power, k_fact);
  }
  partial.canonicalize();

  // Terms a_k = k^n / k! have ratio a_{k+1}/a_k = (1 + 1/k)^n / (k + 1), which
  // decreases in k, so beyond the cut the tail is dominated by a geometric series.
  ExactInteger next_power;
  mpz_ui_pow_ui(next_power.get_mpz_t(), static_cast<unsigned long>(cut + 1),
                static_cast<unsigned long>(n));
  const ExactRational first_omitted(next_power, k_fact * (cut + 1));
  ExactInteger ratio_num;
  ExactInteger ratio_den;
  mpz_ui_pow_ui(ratio_num.get_mpz_t(), static_cast<unsigned long>(cut + 2),
                static_cast<unsigned long>(n));
  mpz_ui_pow_ui(ratio_den.get_mpz_t(), static_cast<unsigned long>(cut + 1),
                static_cast<unsigned long>(n));
  ExactRational ratio(ratio_num, ratio_den * (cut + 2));
  ratio.canonicalize();
  if (ratio >= 1) return false;
  ExactRational tail = first_omitted / (1 - ratio);

  // e in [e_lo, e_lo + 2/(L+1)!].
  ExactRational e_lo = 0;
  ExactInteger i_fact = 1;
  for (std::uint64_t i = 0; i <= cut; ++i) {
    if (i > 0) i_fact *= i;
    e_lo += ExactRational(1, i_fact);
  }
  const ExactRational e_hi = e_lo + ExactRational(2, i_fact * (cut + 1));

  const ExactRational lower = partial / e_hi;
  const ExactRational upper = (partial + tail) / e_lo;
  const ExactRational bn(bell(n));
  return lower <= bn && bn <= upper && upper - lower < 1;
}

PartitionSampler::PartitionSampler(std::uint64_t n) : table_(n), size_counts_(n + 1, 0) {
  if (n <= 30 && !verify_urn_weights_exact(n)) {
    fail(ErrorKind::kNonConvergence, "urn weights failed the exact Dobinski check");
  }
}

void PartitionSampler::throw_balls(Rng& rng, std::uint64_t urns) {
  occupancy_.assign(urns, 0);
  for (std::uint64_t ball = 0; ball < n(); ++ball) ++occupancy_[rng.below(urns)];
}

MultiplicityVector PartitionSampler::sample(Rng& rng) {
  throw_balls(rng, table_.draw(rng));
  std::map<std::uint64_t, std::uint64_t> mu;
  for (std::uint64_t size : occupancy_) {
    if (size > 0) ++mu[size];
  }
  return MultiplicityVector(n(), std::move(mu));
}

std::uint64_t PartitionSampler::sample_max_mult(Rng& rng) {
  throw_balls(rng, table_.draw(rng));
  std::uint64_t best = 0;
  std::uint64_t placed = 0;
  for (std::uint64_t size : occupancy_) {
    if (size == 0) continue;
    best = std::max(best, ++size_counts_[size]);
    placed += size;
  }
  if (placed != n()) fail(ErrorKind::kInvalidArgument, "sampled shape does not sum to n");
  for (std::uint64_t size : occupancy_) size_counts_[size] = 0;
  return best;
}

MultiplicityVector sample_partition(std::uint64_t n, Rng& rng) {
  PartitionSampler sampler(n);
  return sampler.sample(rng);
}

namespace {

std::vector<std::uint64_t> draw_maxima(std::uint64_t n, std::size_t sample_count,
                                       std::uint64_t seed, std::size_t worker_count) {
  if (sample_count == 0) fail(ErrorKind::kInvalidArgument, "sample_count must be >= 1");
  const PartitionSampler prototype(n);
  std::vector<std::uint64_t> maxima(sample_count);
  run_partitioned(sample_count, worker_count,
                  [&](std::size_t worker, std::size_t begin, std::size_t end) {
                    PartitionSampler sampler = prototype;
                    Rng rng(seed, worker);
                    for (std::size_t s = begin; s < end; ++s) maxima[s] = sampler.sample_max_mult(rng);
                  });
  return maxima;
}

}  // namespace

DistributionTable empirical_m_distribution(std::uint64_t n, std::size_t sample_count,
                                           std::uint64_t seed, std::size_t worker_count) {
  const auto maxima = draw_maxima(n, sample_count, seed, worker_count);
  std::vector<std::uint64_t> counts(n + 1, 0);
  for (std::uint64_t m : maxima) ++counts[m];
  std::vector<double> cdf(n + 1);
  std::uint64_t running = 0;
  for (std::size_t m = 0; m <= n; ++m) {
    running += counts[m];
    cdf[m] = static_cast<double>(running) / static_cast<double>(sample_count);
  }
  return DistributionTable(n, std::move(cdf));
}

SampleBatch sample_batch(std::uint64_t n, std::size_t sample_count, std::uint64_t seed,
                         std::size_t worker_count, Precision bits) {
  const SaddleParams params = saddle_params(n, bits);
  SampleBatch batch{n, seed, worker_count, params.w.to_double(), params.r.to_double(),
                    UrnCountTable(n).truncation_bias(), {}, {}};
  batch.maxima = draw_maxima(n, sample_count, seed, worker_count);
  const double root = std::sqrt(batch.r);
  batch.samples.reserve(sample_count);
  for (std::uint64_t m : batch.maxima) {
    batch.samples.push_back((static_cast<double>(m) - batch.r) / root);
  }
  return batch;
}

double tv_distance(const DistributionTable& a, const DistributionTable& b) {
  if (a.n() != b.n()) {
    fail(ErrorKind::kMismatchedTables, "tables have different n");
  }
  double sum = 0.0;
  for (std::size_t m = 0; m <= a.n(); ++m) sum += std::abs(a.pmf(m) - b.pmf(m));
  return std::min(1.0, 0.5 * sum);
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf,
                   const std::function<double(double)>& cdf_left) {
  if (samples.empty()) fail(ErrorKind::kInvalidArgument, "KS distance needs samples");
  std::sort(samples.begin(), samples.end());
  const auto total = static_cast<double>(samples.size());
  double sup = 0.0;
  std::size_t i = 0;
  while (i < samples.size()) {
    std::size_t j = i;
    while (j < samples.size() && samples[j] == samples[i]) ++j;
    const double x = samples[i];
    const double before = static_cast<double>(i) / total;
    const double after = static_cast<double>(j) / total;
    sup = std::max({sup, std::abs(after - cdf(x)), std::abs(before - cdf_left(x))});
    i = j;
  }
  return sup;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  return ks_distance(std::move(samples), cdf, cdf);
}

double ks_to_limit(const SampleBatch& batch, double u) {
  if (batch.count() < 100) fail(ErrorKind::kInvalidArgument, "KS to limit needs >= 100 samples");
  return ks_distance(batch.samples, [u](double c) { return limit_cdf(c, u); });
}

double chi_square_survival(double statistic, std::size_t degrees_of_freedom) {
  if (degrees_of_freedom == 0) return 1.0;
  return boost::math::gamma_q(static_cast<double>(degrees_of_freedom) / 2.0, statistic / 2.0);
}

ChiSquareResult chi_square_uniformity(std::uint64_t n, std::size_t sample_count,
                                      std::uint64_t seed, std::size_t worker_count) {
  std::map<MultiplicityVector, std::size_t> cell_of;
  std::vector<double> expected;
  const ExactInteger total = bell(n);
  for_each_multiplicity_vector(n, [&](const MultiplicityVector& v) {
    cell_of.emplace(v, expected.size());
    expected.push_back(ExactRational(partitions_with_shape(v), total).get_d() *
                       static_cast<double>(sample_count));
  });

  const PartitionSampler prototype(n);
  std::vector<std::vector<std::size_t>> partial(worker_count,
                                                std::vector<std::size_t>(expected.size(), 0));
  run_partitioned(sample_count, worker_count,
                  [&](std::size_t worker, std::size_t begin, std::size_t end) {
                    PartitionSampler sampler = prototype;
                    Rng rng(seed, worker);
                    for (std::size_t s = begin; s < end; ++s) {
                      ++partial[worker][cell_of.at(sampler.sample(rng))];
                    }
                  });
  double statistic = 0.0;
  for (std::size_t cell = 0; cell < expected.size(); ++cell) {
    std::size_t observed = 0;
    for (const auto& counts : partial) observed += counts[cell];
    const double diff = static_cast<double>(observed) - expected[cell];
    statistic += diff * diff / expected[cell];
  }
  const std::size_t dof = expected.size() - 1;
  return ChiSquareResult{statistic, dof, chi_square_survival(statistic, dof)};
}

}  // namespace setpart
