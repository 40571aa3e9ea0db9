#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string_view>

namespace setpart {

inline constexpr std::string_view kRngAlgorithm = "mt19937_64/seed_seq(seed_lo,seed_hi,worker)";

/// 64-bit Mersenne Twister with portable derived streams and samplers.
/// Output depends only on (seed, worker) on every platform.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t worker);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on {0, ..., bound - 1}; bound >= 1.
  std::uint64_t below(std::uint64_t bound);
  /// Poisson(mean) by inversion for mean < 10, otherwise transformed
  /// rejection with squeeze (PTRS); exact in both regimes.
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

/// Splits [0, total) into `workers` contiguous blocks and runs
/// task(worker, begin, end) for each, on separate threads when workers > 1.
void run_partitioned(std::size_t total, std::size_t workers,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& task);

}  // namespace setpart
