#pragma once

// Machine-readable serialisation of results: JSON documents and plot-ready
// CSV with a commented metadata header. High-precision reals are written as
// decimal strings so that files round-trip without loss.

#include "setpart/asymptotics.hpp"
#include "setpart/exact.hpp"
#include "setpart/poisson.hpp"
#include "setpart/saddle.hpp"
#include "setpart/sampler.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace setpart {

using Json = nlohmann::ordered_json;

/// Decimal string with enough digits to reproduce the value at its precision.
std::string real_text(const Real& x);

Json to_json(const DistributionTable& table);
/// Inverse of to_json for exact and empirical tables.
DistributionTable distribution_from_json(const Json& doc);

Json to_json(const SaddleParams& params);
Json to_json(const ScenarioU& u);
Json to_json(const FullProduct& product);
Json to_json(const QuadResult& result);
Json to_json(const CauchyValidation& validation);
Json to_json(const PhiDiagnostics& diagnostics);
Json to_json(const RePhiReport& report);
Json to_json(const ChiSquareResult& result);

/// Key/value pairs written as "# key=value" lines above a CSV table.
using CsvMeta = std::vector<std::pair<std::string, std::string>>;

struct CsvTable {
  CsvMeta meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const CsvTable& table);
/// Inverse of to_csv; throws kInvalidArgument on malformed input.
CsvTable csv_from_text(const std::string& text);

/// Exact table as CSV: m, cdf (as num/den), cdf_double.
CsvTable distribution_csv(const DistributionTable& table);
/// c, empirical_cdf, product_cdf, abs_gap; header records n, seed, workers, RNG.
CsvTable vbar_csv(const VbarTable& table);
/// sample_index, M, normalized; header records n, W, R, seed, workers, RNG, bias.
CsvTable batch_csv(const SampleBatch& batch);

/// Shortest round-trip text for a double.
std::string double_text(double x);

}  // namespace setpart
