#include "setpart/error.hpp"
#include "setpart/report.hpp"

#include <doctest.h>

using namespace setpart;

TEST_CASE("distribution json round-trips") {
  const auto exact = exact_distribution(9);
  const Json doc = to_json(exact);
  CHECK(doc["kind"] == "exact");
  CHECK(doc["cdf"][0] == "0");
  CHECK(distribution_from_json(doc) == exact);
  CHECK(to_json(distribution_from_json(Json::parse(doc.dump()))).dump() == doc.dump());

  const auto emp = empirical_m_distribution(9, 1000, 4);
  CHECK(distribution_from_json(Json::parse(to_json(emp).dump())) == emp);

  CHECK_THROWS_AS(distribution_from_json(Json{{"n", 2}, {"kind", "other"}, {"cdf", {}}}), Error);
  CHECK_THROWS_AS(distribution_from_json(Json{{"n", 2}, {"kind", "exact"}, {"cdf", {"0", "x", "1"}}}),
                  Error);
}

TEST_CASE("csv round-trips") {
  const auto batch = sample_batch(300, 50, 9);
  const auto table = batch_csv(batch);
  const std::string text = to_csv(table);
  CHECK(text.rfind("# n=300\n", 0) == 0);
  const auto back = csv_from_text(text);
  CHECK(back.meta == table.meta);
  CHECK(back.columns == std::vector<std::string>{"sample_index", "M", "normalized"});
  CHECK(back.rows == table.rows);
  CHECK(to_csv(back) == text);
  for (std::size_t i = 0; i < batch.count(); ++i) {
    CHECK(std::stod(back.rows[i][2]) == batch.samples[i]);
  }
  CHECK_THROWS_AS(csv_from_text("a,b\n1\n"), Error);
}

TEST_CASE("numeric text") {
  CHECK(double_text(0.1) == "0.1");
  CHECK(double_text(std::numeric_limits<double>::infinity()) == "inf");
  const Real x = solve_w(100.0, 256);
  CHECK(abs(Real(real_text(x), 256) - x).to_double() < 1e-74);
}
