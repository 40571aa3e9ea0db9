#include "setpart/error.hpp"
#include "setpart/exact.hpp"

#include <doctest.h>

#include <map>

using namespace setpart;

namespace {

// Set partitions of [n] built explicitly as restricted growth strings, with
// the block-size multiplicities tallied directly.
std::map<std::uint64_t, ExactInteger> enumerate_by_max_mult(std::uint64_t n) {
  std::map<std::uint64_t, ExactInteger> counts;
  std::vector<std::uint64_t> labels(n, 0);
  std::function<void(std::uint64_t, std::uint64_t)> rec = [&](std::uint64_t pos,
                                                              std::uint64_t blocks) {
    if (pos == n) {
      std::vector<std::uint64_t> sizes(blocks, 0);
      for (auto label : labels) ++sizes[label];
      std::map<std::uint64_t, std::uint64_t> mult;
      for (auto s : sizes) ++mult[s];
      std::uint64_t best = 0;
      for (const auto& [size, count] : mult) best = std::max(best, count);
      counts[best] += 1;
      return;
    }
    for (std::uint64_t b = 0; b <= blocks; ++b) {
      labels[pos] = b;
      rec(pos + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return counts;
}

}  // namespace

TEST_CASE("bell numbers") {
  CHECK(bell(0) == 1);
  CHECK(bell(1) == 1);
  CHECK(bell(5) == 52);
  CHECK(bell(10) == 115975);
  CHECK(bell(20) == ExactInteger("51724158235372"));
  const auto seq = bell_sequence(25);
  for (std::uint64_t n = 0; n <= 25; ++n) CHECK(seq[n] == bell(n));
  for (std::uint64_t n = 0; n <= 40; ++n) CHECK(bell_by_extraction(n) == bell(n));
}

TEST_CASE("restricted counts match brute-force enumeration of set partitions") {
  for (std::uint64_t n = 1; n <= 9; ++n) {
    const auto by_max = enumerate_by_max_mult(n);
    ExactInteger running = 0;
    for (std::uint64_t m = 0; m <= n; ++m) {
      if (by_max.count(m)) running += by_max.at(m);
      CHECK(count_restricted(n, m) == running);
    }
    CHECK(running == bell(n));
  }
}

TEST_CASE("restricted counts match the multiplicity-vector oracle") {
  for (std::uint64_t n = 1; n <= 16; ++n) {
    for (std::uint64_t m = 0; m <= n; ++m) CHECK(count_restricted(n, m) == oracle_count(n, m));
  }
}

TEST_CASE("oracle scale guard") {
  CHECK_THROWS_AS(oracle_count(31, 2), Error);
  try {
    oracle_count(31, 2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kOracleScaleExceeded);
  }
  CHECK_NOTHROW(oracle_count(20, 2, 20));
}

TEST_CASE("small exact distributions") {
  const auto d3 = exact_distribution(3);
  CHECK(d3.exact_cdf() ==
        std::vector<ExactRational>{0, ExactRational(4, 5), ExactRational(4, 5), 1});
  const auto d4 = exact_distribution(4);
  CHECK(d4.exact_cdf() == std::vector<ExactRational>{0, ExactRational(1, 3), ExactRational(14, 15),
                                                     ExactRational(14, 15), 1});
  const auto d1 = exact_distribution(1);
  CHECK(d1.exact_cdf() == std::vector<ExactRational>{0, 1});
  // Partitions of [50] into blocks of pairwise distinct sizes are rare.
  CHECK(exact_distribution(50).cdf(1) == doctest::Approx(1.10e-8).epsilon(0.01));
}

TEST_CASE("distribution invariants") {
  for (std::uint64_t n : {2u, 7u, 15u, 30u}) {
    const auto d = exact_distribution(n);
    CHECK(d.size() == n + 1);
    CHECK(d.exact_cdf().front() == 0);
    CHECK(d.exact_cdf().back() == 1);
    double pmf_sum = 0;
    for (std::size_t m = 1; m <= n; ++m) {
      CHECK(d.exact_cdf()[m - 1] <= d.exact_cdf()[m]);
      pmf_sum += d.pmf(m);
    }
    CHECK(pmf_sum == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(DistributionTable(2, std::vector<ExactRational>{0, ExactRational(1, 2), 0}),
                  Error);
  CHECK_THROWS_AS(DistributionTable(2, std::vector<double>{0, 0.5}), Error);
}

TEST_CASE("truncating the product at block size n does not change the count") {
  for (std::uint64_t n : {5u, 12u, 20u}) {
    for (std::uint64_t m : {1u, 2u, 3u}) {
      CHECK(count_restricted(n, m, n) == count_restricted(n, m, n + 7));
      CHECK(count_restricted(n, m, 2 * n) == count_restricted(n, m));
    }
  }
  // m above n is clamped.
  CHECK(count_restricted(6, 100) == bell(6));
}

TEST_CASE("multiplicity vectors") {
  CHECK_THROWS_AS(MultiplicityVector(5, {{2, 1}, {1, 2}, {3, 1}}), Error);
  const MultiplicityVector v(5, {{2, 1}, {1, 3}});
  CHECK(v[1] == 3);
  CHECK(v[4] == 0);
  CHECK(max_mult(v) == 3);
  CHECK(partitions_with_shape(v) == 10);

  std::size_t shapes = 0;
  ExactInteger total = 0;
  for_each_multiplicity_vector(12, [&](const MultiplicityVector& shape) {
    ++shapes;
    total += partitions_with_shape(shape);
  });
  CHECK(shapes == 77);  // p(12)
  CHECK(total == bell(12));
}

TEST_CASE("truncated series") {
  const auto a = restricted_factor(2, 1, 6);  // 1 + x^2/2
  CHECK(a[0] == 1);
  CHECK(a[2] == ExactRational(1, 2));
  CHECK(a[4] == 0);
  const auto sq = a * a;
  CHECK(sq[4] == ExactRational(1, 4));
  CHECK_THROWS_AS(TruncatedSeries(3) *= TruncatedSeries(4), Error);
}

TEST_CASE("shared-suffix distribution agrees with the direct series product") {
  for (std::uint64_t n : {1u, 2u, 13u, 41u, 64u}) {
    const auto d = exact_distribution(n);
    const ExactInteger total = bell(n);
    for (std::uint64_t m = 0; m <= n; ++m) {
      CHECK(d.exact_cdf()[m] * total == count_restricted(n, m));
    }
  }
}
