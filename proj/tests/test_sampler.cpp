#include "setpart/error.hpp"
#include "setpart/sampler.hpp"

#include <doctest.h>

#include <cmath>

using namespace setpart;

TEST_CASE("urn weights reproduce bell numbers exactly") {
  for (std::uint64_t n : {1u, 2u, 5u, 17u, 30u}) CHECK(verify_urn_weights_exact(n));
}

TEST_CASE("urn count table") {
  const UrnCountTable t(20);
  double total = 0;
  for (auto k = t.first(); k <= t.last(); ++k) total += t.probability(k);
  CHECK(total == doctest::Approx(1.0));
  // P(K = k) = k^n / (k! e B_n); B_20 = 51724158235372.
  const double p5 = std::exp(20 * std::log(5.0) - std::lgamma(6.0) - 1.0) / 51724158235372.0;
  CHECK(t.probability(5) == doctest::Approx(p5).epsilon(1e-9));
  CHECK(t.truncation_bias() < 1e-25);
}

TEST_CASE("degenerate sizes") {
  Rng rng(0, 0);
  for (int i = 0; i < 100; ++i) {
    const auto one = sample_partition(1, rng);
    CHECK(one.mu() == std::map<std::uint64_t, std::uint64_t>{{1, 1}});
  }
  // n = 2: {1,2} and {1},{2}, each with probability 1/2.
  int singletons = 0;
  PartitionSampler sampler(2);
  for (int i = 0; i < 20000; ++i) singletons += sampler.sample(rng)[1] == 2;
  CHECK(std::abs(singletons / 20000.0 - 0.5) < 0.02);
}

TEST_CASE("samples are valid and reproducible") {
  PartitionSampler s(40);
  Rng a(11, 3), b(11, 3);
  for (int i = 0; i < 200; ++i) {
    const auto va = s.sample(a);
    CHECK(va == s.sample(b));
    std::uint64_t total = 0;
    for (const auto& [j, mu] : va.mu()) total += j * mu;
    CHECK(total == 40);
  }
  const auto x = sample_batch(500, 2000, 5, 3);
  const auto y = sample_batch(500, 2000, 5, 3);
  CHECK(x.maxima == y.maxima);
  const auto z = sample_batch(500, 2000, 6, 3);
  CHECK(x.maxima != z.maxima);
}

TEST_CASE("empirical distribution of M matches the exact law") {
  const auto exact = exact_distribution(12);
  const auto emp = empirical_m_distribution(12, 50000, 1, 2);
  CHECK(tv_distance(exact, emp) < 0.02);
  CHECK(tv_distance(exact, exact) == 0.0);
  CHECK_THROWS_AS(tv_distance(exact, exact_distribution(11)), Error);
}

TEST_CASE("chi-square uniformity over shapes") {
  const auto r = chi_square_uniformity(6, 100000, 2, 2);
  CHECK(r.degrees_of_freedom == 10);  // p(6) - 1
  CHECK(r.p_value > 1e-3);
  CHECK(chi_square_survival(0.0, 3) == doctest::Approx(1.0));
  // Survival of chi-square(2) is exp(-x/2).
  CHECK(chi_square_survival(3.0, 2) == doctest::Approx(std::exp(-1.5)));
}

TEST_CASE("kolmogorov-smirnov distance") {
  const auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(ks_distance({0.5}, uniform) == doctest::Approx(0.5));
  CHECK(ks_distance({0.1, 0.2, 0.3, 0.4}, uniform) == doctest::Approx(0.6));
  // A step CDF at 0 against samples all at 0 is an exact match.
  const auto step = [](double x) { return x >= 0 ? 1.0 : 0.0; };
  const auto step_left = [](double x) { return x > 0 ? 1.0 : 0.0; };
  CHECK(ks_distance({0.0, 0.0, 0.0}, step, step_left) == 0.0);

  SampleBatch tiny{10, 0, 1, 0, 0, 0, {}, std::vector<double>(50, 0.0)};
  CHECK_THROWS_AS(ks_to_limit(tiny, 0.0), Error);
}
