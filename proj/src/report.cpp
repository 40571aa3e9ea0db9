#include "setpart/report.hpp"

#include "setpart/error.hpp"
#include "setpart/random.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace setpart {

std::string real_text(const Real& x) { return x.to_string(0); }

std::string double_text(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

Json number_or_text(double x) {
  if (std::isfinite(x)) return x;
  return double_text(x);
}

Json complex_json(const Complex& z) { return {{"re", real_text(z.re)}, {"im", real_text(z.im)}}; }

}  // namespace

Json to_json(const DistributionTable& table) {
  Json doc;
  doc["n"] = table.n();
  if (table.kind() == DistributionKind::kExact) {
    doc["kind"] = "exact";
    Json cdf = Json::array();
    for (const auto& q : table.exact_cdf()) cdf.push_back(q.get_str());
    doc["cdf"] = std::move(cdf);
  } else {
    doc["kind"] = "empirical";
    doc["cdf"] = table.empirical_cdf();
  }
  return doc;
}

DistributionTable distribution_from_json(const Json& doc) {
  try {
    const auto n = doc.at("n").get<std::uint64_t>();
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "exact") {
      std::vector<ExactRational> cdf;
      for (const auto& entry : doc.at("cdf")) {
        ExactRational q(entry.get<std::string>());
        q.canonicalize();
        cdf.push_back(std::move(q));
      }
      return DistributionTable(n, std::move(cdf));
    }
    if (kind == "empirical") return DistributionTable(n, doc.at("cdf").get<std::vector<double>>());
  } catch (const Json::exception& e) {
    fail(ErrorKind::kInvalidArgument, std::string("malformed distribution: ") + e.what());
  } catch (const std::invalid_argument& e) {
    fail(ErrorKind::kInvalidArgument, std::string("malformed rational: ") + e.what());
  }
  fail(ErrorKind::kInvalidArgument, "unknown distribution kind");
}

Json to_json(const SaddleParams& p) {
  return {{"n", p.n},
          {"precision", p.precision},
          {"W", real_text(p.w)},
          {"d", p.d},
          {"f", real_text(p.f)},
          {"R", real_text(p.r)},
          {"theta", real_text(p.theta)},
          {"b", real_text(p.b)},
          {"residual", real_text(abs(p.w * exp(p.w) - Real(p.n, p.precision)) /
                                 Real(p.n, p.precision))}};
}

Json to_json(const ScenarioU& u) {
  return {{"u", real_text(u.u)},
          {"u_f", real_text(u.u_f)},
          {"u_one_minus_f", real_text(u.u_one_minus_f)},
          {"boundary_scale", real_text(u.boundary_scale)}};
}

Json to_json(const FullProduct& product) {
  return {{"value", real_text(product.value)},
          {"tail_bound", real_text(product.tail_bound)},
          {"j_max", product.j_max}};
}

Json to_json(const QuadResult& r) {
  const auto [mantissa, exponent] = r.value.re.to_mantissa_exponent(30);
  return {{"region", to_string(r.region)},
          {"scaled_value", complex_json(r.value)},
          {"log_offset", real_text(r.log_offset)},
          {"log_magnitude", real_text(r.log_magnitude())},
          {"mantissa", mantissa},
          {"exponent", exponent},
          {"abs_error_estimate", number_or_text(r.abs_error_estimate)},
          {"panel_count", r.panel_count},
          {"evaluations", r.evaluations}};
}

Json to_json(const CauchyValidation& v) {
  return {{"n", v.config.n},
          {"m", v.config.m},
          {"delta", v.config.delta},
          {"gamma", v.config.gamma},
          {"precision", v.config.precision},
          {"quad_tolerance", v.config.quad_tolerance},
          {"regions", Json::array({to_json(v.d1), to_json(v.d2), to_json(v.d3)})},
          {"total_scaled", complex_json(v.total)},
          {"total_error", number_or_text(v.total_error)},
          {"computed_log", real_text(v.computed_log)},
          {"exact_log", real_text(v.exact_log)},
          {"relative_deviation", number_or_text(v.relative_deviation)},
          {"outer_to_central", number_or_text(v.outer_to_central)}};
}

Json to_json(const PhiDiagnostics& d) {
  return {{"n", d.n},
          {"b", real_text(d.b)},
          {"phi_at_zero", real_text(d.phi_at_zero)},
          {"first_difference", real_text(d.first_difference)},
          {"second_difference", complex_json(d.second_difference)},
          {"step", d.step},
          {"second_over_minus_b", number_or_text(d.second_over_minus_b)}};
}

Json to_json(const RePhiReport& r) {
  return {{"n", r.n},
          {"gamma", r.gamma},
          {"grid_count", r.grid_count},
          {"max_scaled", number_or_text(r.max_scaled)},
          {"argmax_theta", r.argmax_theta},
          {"scaled_at_gamma", number_or_text(r.scaled_at_gamma)},
          {"scaled_at_pi", number_or_text(r.scaled_at_pi)},
          {"negative", r.negative}};
}

Json to_json(const ChiSquareResult& r) {
  return {{"statistic", r.statistic},
          {"degrees_of_freedom", r.degrees_of_freedom},
          {"p_value", r.p_value}};
}

std::string to_csv(const CsvTable& table) {
  std::ostringstream out;
  for (const auto& [key, value] : table.meta) out << "# " << key << '=' << value << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  return out.str();
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

CsvTable csv_from_text(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!header_seen && line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail(ErrorKind::kInvalidArgument, "malformed csv metadata");
      table.meta.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
    } else if (!header_seen) {
      table.columns = split_fields(line);
      header_seen = true;
    } else {
      auto row = split_fields(line);
      if (row.size() != table.columns.size()) {
        fail(ErrorKind::kInvalidArgument, "csv row width differs from header");
      }
      table.rows.push_back(std::move(row));
    }
  }
  if (!header_seen) fail(ErrorKind::kInvalidArgument, "csv has no header");
  return table;
}

CsvTable distribution_csv(const DistributionTable& table) {
  CsvTable csv{{{"n", std::to_string(table.n())},
                {"kind", table.kind() == DistributionKind::kExact ? "exact" : "empirical"}},
               {"m", "cdf", "cdf_double"},
               {}};
  for (std::size_t m = 0; m < table.size(); ++m) {
    const std::string exact = table.kind() == DistributionKind::kExact
                                  ? table.exact_cdf()[m].get_str()
                                  : double_text(table.cdf(m));
    csv.rows.push_back({std::to_string(m), exact, double_text(table.cdf(m))});
  }
  return csv;
}

CsvTable vbar_csv(const VbarTable& t) {
  CsvTable csv{{{"n", std::to_string(t.n)},
                {"seed", std::to_string(t.seed)},
                {"rng_algorithm", std::string(kRngAlgorithm)},
                {"sample_count", std::to_string(t.sample_count)},
                {"worker_count", std::to_string(t.worker_count)},
                {"j_max", std::to_string(t.j_max)},
                {"R", double_text(t.r)},
                {"omitted_tail_bound", double_text(t.omitted_tail_bound)}},
               {"c", "empirical_cdf", "product_cdf", "abs_gap"},
               {}};
  for (const auto& row : t.rows) {
    csv.rows.push_back({double_text(row.c), double_text(row.empirical_cdf),
                        double_text(row.product_cdf), double_text(row.abs_gap)});
  }
  return csv;
}

CsvTable batch_csv(const SampleBatch& b) {
  CsvTable csv{{{"n", std::to_string(b.n)},
                {"W", double_text(b.w)},
                {"R", double_text(b.r)},
                {"seed", std::to_string(b.seed)},
                {"rng_algorithm", std::string(kRngAlgorithm)},
                {"worker_count", std::to_string(b.worker_count)},
                {"truncation_bias", double_text(b.truncation_bias)}},
               {"sample_index", "M", "normalized"},
               {}};
  for (std::size_t i = 0; i < b.count(); ++i) {
    csv.rows.push_back({std::to_string(i), std::to_string(b.maxima[i]), double_text(b.samples[i])});
  }
  return csv;
}

}  // namespace setpart
