// setpart_lab: command-line front end for the set-partition multiplicity
// toolkit. Every run writes its effective configuration next to the result,
// and identical configurations produce byte-identical output.

#include "setpart/asymptotics.hpp"
#include "setpart/error.hpp"
#include "setpart/exact.hpp"
#include "setpart/poisson.hpp"
#include "setpart/report.hpp"
#include "setpart/saddle.hpp"
#include "setpart/sampler.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace setpart;

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInvalidRange = 3,
  kOracleScale = 4,
  kNumeric = 5,
  kIo = 6,
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kBelowRegime:
    case ErrorKind::kMismatchedTables:
      return kInvalidRange;
    case ErrorKind::kOracleScaleExceeded:
      return kOracleScale;
    case ErrorKind::kNonConvergence:
    case ErrorKind::kBoundInapplicable:
    case ErrorKind::kToleranceUnmet:
      return kNumeric;
  }
  return kNumeric;
}

int report_error(const std::string& kind, int code, const std::string& message) {
  const Json line{{"error", kind}, {"exit_code", code}, {"message", message}};
  std::cerr << line.dump() << '\n';
  return code;
}

struct Config {
  std::string command;
  std::vector<std::uint64_t> n;
  std::uint64_t m = 0;
  std::uint64_t count = 10;
  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
  double target_f = 0.5;
  double tolerance = 0.01;
  std::string c_grid = "-3:3:0.1";
  std::int64_t j_max = 0;
  Precision precision = kDefaultPrecision;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t workers = 1;
  double rel_tol = 1e-11;
  bool exact_reference = true;
  bool oracle = false;
  std::uint64_t exact_cap = 400;
  std::string output;
  std::string format = "json";

  Json to_json() const {
    return {{"command", command},   {"n", n},
            {"m", m},               {"count", count},
            {"n_lo", n_lo},         {"n_hi", n_hi},
            {"target_f", target_f}, {"tolerance", tolerance},
            {"c_grid", c_grid},     {"j_max", j_max},
            {"precision", precision}, {"seed", seed},
            {"samples", samples},   {"workers", workers},
            {"rel_tol", rel_tol},   {"exact_reference", exact_reference},
            {"oracle", oracle},     {"exact_cap", exact_cap},
            {"format", format}};
  }

  CsvMeta meta() const {
    CsvMeta out;
    const Json doc = to_json();
    for (const auto& [key, value] : doc.items()) {
      out.emplace_back("config." + key, value.is_string() ? value.get<std::string>() : value.dump());
    }
    return out;
  }
};

// "lo:hi:step" with an integral number of steps.
std::vector<double> parse_grid(const std::string& spec) {
  if (spec == "-3:3:0.1") return default_c_grid();
  double lo = 0, hi = 0, step = 0;
  char colon1 = 0, colon2 = 0;
  std::istringstream in(spec);
  if (!(in >> lo >> colon1 >> hi >> colon2 >> step) || colon1 != ':' || colon2 != ':' ||
      !(step > 0) || !(hi >= lo)) {
    fail(ErrorKind::kInvalidArgument, "c-grid must be lo:hi:step with step > 0 and hi >= lo");
  }
  const double steps = (hi - lo) / step;
  const auto count = static_cast<std::size_t>(std::llround(steps));
  if (std::abs(steps - static_cast<double>(count)) > 1e-9 || count > 100000) {
    fail(ErrorKind::kInvalidArgument, "c-grid range is not a whole number of steps");
  }
  std::vector<double> grid;
  for (std::size_t i = 0; i <= count; ++i) {
    grid.push_back(std::round((lo + step * static_cast<double>(i)) * 1e9) / 1e9);
  }
  return grid;
}

std::uint64_t single_n(const Config& cfg) {
  if (cfg.n.size() != 1) fail(ErrorKind::kInvalidArgument, "this command takes exactly one --n");
  return cfg.n.front();
}

void require_n(const Config& cfg) {
  if (cfg.n.empty()) fail(ErrorKind::kInvalidArgument, "--n is required");
  for (auto n : cfg.n) {
    if (n == 0) fail(ErrorKind::kInvalidArgument, "n must be positive");
  }
}

// A command produces either a JSON result or a CSV table.
struct Output {
  Json result;
  std::optional<CsvTable> table;
};

void prepend_config(const Config& cfg, CsvTable& csv) {
  CsvMeta meta = cfg.meta();
  meta.insert(meta.end(), csv.meta.begin(), csv.meta.end());
  csv.meta = std::move(meta);
}

CsvTable rows_table(const Config& cfg, std::vector<std::string> columns) {
  return CsvTable{cfg.meta(), std::move(columns), {}};
}

Output run_bell(const Config& cfg) {
  Output out{Json::array(), rows_table(cfg, {"n", "bell"})};
  for (auto n : cfg.n) {
    const std::string value = bell(n).get_str();
    out.result.push_back({{"n", n}, {"bell", value}});
    out.table->rows.push_back({std::to_string(n), value});
  }
  return out;
}

Output run_dist(const Config& cfg) {
  const auto n = single_n(cfg);
  const auto table = exact_distribution(n);
  Output out{to_json(table), std::nullopt};
  if (cfg.oracle) {
    bool agrees = true;
    for (std::uint64_t m = 0; m <= n; ++m) {
      agrees = agrees && oracle_count(n, m) == count_restricted(n, m);
    }
    out.result["oracle_agrees"] = agrees;
  }
  CsvTable csv = distribution_csv(table);
  prepend_config(cfg, csv);
  out.table = std::move(csv);
  return out;
}

Output run_params(const Config& cfg) {
  Output out{Json::array(), rows_table(cfg, {"n", "W", "d", "f", "R", "theta", "b"})};
  for (auto n : cfg.n) {
    const auto p = saddle_params(n, cfg.precision);
    out.result.push_back(to_json(p));
    out.table->rows.push_back({std::to_string(n), real_text(p.w), std::to_string(p.d),
                               real_text(p.f), real_text(p.r), real_text(p.theta),
                               real_text(p.b)});
  }
  return out;
}

Output run_classify(const Config& cfg) {
  Output out{Json::array(),
             rows_table(cfg, {"n", "f", "u", "u_f", "u_one_minus_f", "boundary_scale"})};
  for (auto n : cfg.n) {
    const auto p = saddle_params(n, cfg.precision);
    const auto u = scenario_u(n, cfg.precision);
    Json row = to_json(u);
    row["n"] = n;
    row["f"] = real_text(p.f);
    out.result.push_back(std::move(row));
    out.table->rows.push_back({std::to_string(n), real_text(p.f), real_text(u.u),
                               real_text(u.u_f), real_text(u.u_one_minus_f),
                               real_text(u.boundary_scale)});
  }
  return out;
}

Output run_subseq(const Config& cfg) {
  Output out{Json::array(), rows_table(cfg, {"index", "n", "W", "one_minus_f", "u_one_minus_f"})};
  const auto members = subsequence_case_i(cfg.count);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto n = members[i];
    const auto p = saddle_params(n, cfg.precision);
    const auto u = scenario_u(n, cfg.precision);
    const Real gap = 1 - p.f;
    out.result.push_back({{"index", i + 1},
                          {"n", n},
                          {"W", real_text(p.w)},
                          {"one_minus_f", real_text(gap)},
                          {"u_one_minus_f", real_text(u.u_one_minus_f)}});
    out.table->rows.push_back({std::to_string(i + 1), std::to_string(n), real_text(p.w),
                               real_text(gap), real_text(u.u_one_minus_f)});
  }
  return out;
}

Output run_scan_f(const Config& cfg) {
  if (cfg.n_lo < 3 || cfg.n_hi < cfg.n_lo) {
    fail(ErrorKind::kInvalidArgument, "scan-f needs 3 <= n-lo <= n-hi");
  }
  Output out{Json::array(), rows_table(cfg, {"n", "f"})};
  for (auto n : scan_f(cfg.n_lo, cfg.n_hi, cfg.target_f, cfg.tolerance, cfg.precision)) {
    const std::string f = real_text(saddle_params(n, cfg.precision).f);
    out.result.push_back({{"n", n}, {"f", f}});
    out.table->rows.push_back({std::to_string(n), f});
  }
  return out;
}

Output run_poisson(const Config& cfg) {
  const auto n = single_n(cfg);
  const auto params = saddle_params(n, cfg.precision);
  const auto grid = parse_grid(cfg.c_grid);
  Output out{Json::object(), std::nullopt};
  out.result["params"] = to_json(params);

  if (cfg.samples > 0) {
    const auto vbar =
        sample_vbar(n, grid, cfg.samples, cfg.seed, cfg.j_max, cfg.workers, cfg.precision);
    CsvTable csv = vbar_csv(vbar);
    prepend_config(cfg, csv);
    Json rows = Json::array();
    double worst = 0;
    for (const auto& row : vbar.rows) {
      rows.push_back({{"c", row.c},
                      {"empirical_cdf", row.empirical_cdf},
                      {"product_cdf", row.product_cdf},
                      {"abs_gap", row.abs_gap}});
      worst = std::max(worst, row.abs_gap);
    }
    out.result["vbar"] = {{"j_max", vbar.j_max},
                          {"omitted_tail_bound", vbar.omitted_tail_bound},
                          {"dkw_half_width_1e-3", dkw_half_width(cfg.samples, 1e-3)},
                          {"max_abs_gap", worst},
                          {"rows", std::move(rows)}};
    out.table = std::move(csv);
    return out;
  }

  CsvTable csv = rows_table(cfg, {"c", "window_product", "full_product", "tail_bound", "j_max",
                                  "abs_gap"});
  Json rows = Json::array();
  for (double c : grid) {
    const Real window = window_product_cdf(params, c);
    const std::int64_t j_max = cfg.j_max > 0 ? cfg.j_max : default_j_max(params, c);
    const auto full = full_product_cdf(params, c, j_max);
    const Real gap = abs(full.value - window);
    Json chernoff = Json::array();
    const Real h = threshold(params, c);
    for (std::int64_t j = params.d + 2; j <= params.d + 4; ++j) {
      const Real lambda = lambda_at(j, params);
      if (lambda >= h) continue;
      const Real bound = chernoff_tail(j, params, c);
      const Real exact = poisson_tails(lambda, h, cfg.precision).survival;
      chernoff.push_back({{"j", j},
                          {"bound", real_text(bound)},
                          {"exact_survival", real_text(exact)},
                          {"dominates", exact <= bound}});
    }
    rows.push_back({{"c", c},
                    {"window_product", real_text(window)},
                    {"full_product", to_json(full)},
                    {"abs_gap", real_text(gap)},
                    {"chernoff", std::move(chernoff)}});
    csv.rows.push_back({double_text(c), real_text(window), real_text(full.value),
                        real_text(full.tail_bound), std::to_string(full.j_max), real_text(gap)});
  }
  out.result["rows"] = std::move(rows);
  out.table = std::move(csv);
  return out;
}

Output run_sample(const Config& cfg) {
  const auto n = single_n(cfg);
  if (cfg.samples == 0) fail(ErrorKind::kInvalidArgument, "--samples must be positive");
  Output out{Json::object(), std::nullopt};
  if (n < 3) {
    const auto emp = empirical_m_distribution(n, cfg.samples, cfg.seed, cfg.workers);
    out.result["empirical"] = to_json(emp);
    out.result["tv_to_exact"] = tv_distance(emp, exact_distribution(n));
    CsvTable csv = distribution_csv(emp);
    prepend_config(cfg, csv);
    out.table = std::move(csv);
    return out;
  }
  const auto batch = sample_batch(n, cfg.samples, cfg.seed, cfg.workers, cfg.precision);
  const double u = scenario_u(n, cfg.precision).u.to_double();
  out.result["W"] = batch.w;
  out.result["R"] = batch.r;
  out.result["truncation_bias"] = batch.truncation_bias;
  out.result["u"] = u;
  if (batch.count() >= 100) out.result["ks_to_limit"] = ks_to_limit(batch, u);
  if (n <= cfg.exact_cap) {
    std::vector<double> cdf(n + 1, 0.0);
    for (auto m : batch.maxima) cdf[m] += 1.0;
    double running = 0;
    for (auto& v : cdf) {
      running += v;
      v = running / static_cast<double>(batch.count());
    }
    out.result["tv_to_exact"] =
        tv_distance(DistributionTable(n, std::move(cdf)), exact_distribution(n));
  }
  if (n <= 8) out.result["chi_square"] = to_json(chi_square_uniformity(n, cfg.samples, cfg.seed, cfg.workers));
  out.result["maxima"] = batch.maxima;
  CsvTable csv = batch_csv(batch);
  prepend_config(cfg, csv);
  out.table = std::move(csv);
  return out;
}

Output run_validate_saddle(const Config& cfg) {
  const auto n = single_n(cfg);
  const auto m = cfg.m == 0 ? n : cfg.m;
  const auto validation = cfg.exact_reference
                              ? validate_cauchy(n, m, cfg.precision, cfg.rel_tol)
                              : integrate_regions(make_contour(n, m, cfg.precision), cfg.rel_tol);
  Output out{to_json(validation), rows_table(cfg, {"region", "log_magnitude", "abs_error_estimate",
                                                   "panel_count"})};
  for (const auto* r : {&validation.d1, &validation.d2, &validation.d3}) {
    out.table->rows.push_back({to_string(r->region), real_text(r->log_magnitude()),
                               double_text(r->abs_error_estimate), std::to_string(r->panel_count)});
  }
  return out;
}

// Finite-n trend of P(M_n <= R - c sqrt R) against the window product and of
// the sampled normalised maximum against the limit law. Reported, not judged.
Output run_limit_check(const Config& cfg) {
  const auto grid = parse_grid(cfg.c_grid == "-3:3:0.1" ? "-2:2:0.5" : cfg.c_grid);
  Output out{Json::array(),
             rows_table(cfg, {"n", "c", "threshold", "reference_cdf", "reference_kind",
                              "window_product", "abs_gap"})};
  for (auto n : cfg.n) {
    const auto params = saddle_params(n, cfg.precision);
    std::optional<DistributionTable> exact;
    std::optional<SampleBatch> batch;
    if (n <= cfg.exact_cap) exact = exact_distribution(n);
    if (cfg.samples > 0) batch = sample_batch(n, cfg.samples, cfg.seed, cfg.workers, cfg.precision);
    if (!exact && !batch) {
      fail(ErrorKind::kInvalidArgument, "n above --exact-cap needs --samples for a reference");
    }
    Json rows = Json::array();
    double worst = 0;
    for (double c : grid) {
      const Real h = threshold(params, c);
      const double window = window_product_cdf(params, c).to_double();
      double reference = 0;
      std::string kind;
      if (h.sign() < 0) {
        reference = 0;
        kind = "empty";
      } else if (exact) {
        reference = exact->cdf(std::min<std::size_t>(n, h.to_long_floor()));
        kind = "exact";
      } else {
        const auto below = std::count_if(batch->maxima.begin(), batch->maxima.end(),
                                         [&](std::uint64_t m) { return Real(m, 64) <= h; });
        reference = static_cast<double>(below) / static_cast<double>(batch->count());
        kind = "empirical";
      }
      const double gap = std::abs(reference - window);
      worst = std::max(worst, gap);
      rows.push_back({{"c", c},
                      {"threshold", real_text(h)},
                      {"reference_cdf", reference},
                      {"reference_kind", kind},
                      {"window_product", window},
                      {"abs_gap", gap}});
      out.table->rows.push_back({std::to_string(n), double_text(c), real_text(h),
                                 double_text(reference), kind, double_text(window),
                                 double_text(gap)});
    }
    Json entry{{"n", n}, {"f", real_text(params.f)}, {"max_abs_gap", worst}, {"rows", rows}};
    if (batch && batch->count() >= 100) {
      const double u = scenario_u(n, cfg.precision).u.to_double();
      entry["u"] = u;
      entry["ks_to_limit"] = ks_to_limit(*batch, u);
    }
    out.result.push_back(std::move(entry));
  }
  return out;
}

Precision default_precision() {
  if (const char* env = std::getenv("SETPART_PRECISION")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || value < 32 || value > 1 << 20) {
      fail(ErrorKind::kInvalidArgument, "SETPART_PRECISION must be an integer in [32, 1048576]");
    }
    return static_cast<Precision>(value);
  }
  return kDefaultPrecision;
}

void write_output(const Config& cfg, const Output& out) {
  std::string text;
  if (cfg.format == "csv") {
    if (!out.table) fail(ErrorKind::kInvalidArgument, "command has no csv form");
    text = to_csv(*out.table);
  } else {
    const Json doc{{"config", cfg.to_json()}, {"result", out.result}};
    text = doc.dump(2) + "\n";
  }
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  file << text;
  if (!file) throw std::ios_base::failure("cannot write " + cfg.output);
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  try {
    cfg.precision = default_precision();
  } catch (const Error& e) {
    return report_error(to_string(e.kind()), exit_code_for(e.kind()), e.what());
  }

  CLI::App app{"Exact, asymptotic and Monte Carlo tools for block-size multiplicities of set partitions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--precision", cfg.precision, "working precision in bits (env SETPART_PRECISION)")
      ->check(CLI::Range(32, 1 << 20));
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--output,-o", cfg.output, "write to this file instead of stdout");
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  const auto add_n = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--n", cfg.n, "problem size(s)");
    if (required) opt->required();
  };

  auto* bell_cmd = app.add_subcommand("bell", "Bell numbers B_n");
  add_n(bell_cmd, true);
  auto* dist_cmd = app.add_subcommand("dist", "exact distribution of M_n");
  add_n(dist_cmd, true);
  dist_cmd->add_flag("--oracle", cfg.oracle, "cross-check against partition enumeration");
  auto* params_cmd = app.add_subcommand("params", "saddle parameters W, d, f, R, theta, b");
  add_n(params_cmd, true);
  auto* classify_cmd = app.add_subcommand("classify", "limit-law shift u_n and one-sided variants");
  add_n(classify_cmd, true);
  auto* subseq_cmd = app.add_subcommand("subseq", "subsequence floor((m+1) e^(m+1))");
  subseq_cmd->add_option("--count", cfg.count, "number of members")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{kMaxSubsequenceCount}));
  auto* scan_cmd = app.add_subcommand("scan-f", "sizes whose fractional part f_n is near a target");
  scan_cmd->add_option("--n-lo", cfg.n_lo)->required();
  scan_cmd->add_option("--n-hi", cfg.n_hi)->required();
  scan_cmd->add_option("--target", cfg.target_f)->check(CLI::Range(0.0, 1.0));
  scan_cmd->add_option("--tol", cfg.tolerance)->check(CLI::PositiveNumber);
  auto* poisson_cmd = app.add_subcommand("poisson", "Poisson window/full products and Chernoff bounds");
  add_n(poisson_cmd, true);
  poisson_cmd->add_option("--c-grid", cfg.c_grid, "lo:hi:step");
  poisson_cmd->add_option("--j-max", cfg.j_max, "product cutoff (0 = automatic)");
  poisson_cmd->add_option("--samples", cfg.samples, "simulate max_j V_j with this many draws");
  auto* sample_cmd = app.add_subcommand("sample", "uniform random partitions and fit reports");
  add_n(sample_cmd, true);
  sample_cmd->add_option("--samples", cfg.samples)->required();
  sample_cmd->add_option("--exact-cap", cfg.exact_cap, "largest n compared with the exact law");
  auto* saddle_cmd = app.add_subcommand("validate-saddle", "Cauchy integral by region vs exact count");
  add_n(saddle_cmd, true);
  saddle_cmd->add_option("--m", cfg.m, "multiplicity bound (0 = n)");
  saddle_cmd->add_option("--rel-tol", cfg.rel_tol)->check(CLI::PositiveNumber);
  saddle_cmd->add_flag("!--no-exact", cfg.exact_reference, "skip the exact reference");
  auto* limit_cmd = app.add_subcommand("limit-check", "finite-n trend towards the limit law");
  add_n(limit_cmd, true);
  limit_cmd->add_option("--c-grid", cfg.c_grid, "lo:hi:step (default -2:2:0.5)");
  limit_cmd->add_option("--samples", cfg.samples);
  limit_cmd->add_option("--exact-cap", cfg.exact_cap);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", kUsage, e.what());
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (cfg.command != "subseq" && cfg.command != "scan-f") require_n(cfg);
    Output out;
    if (cfg.command == "bell") out = run_bell(cfg);
    else if (cfg.command == "dist") out = run_dist(cfg);
    else if (cfg.command == "params") out = run_params(cfg);
    else if (cfg.command == "classify") out = run_classify(cfg);
    else if (cfg.command == "subseq") out = run_subseq(cfg);
    else if (cfg.command == "scan-f") out = run_scan_f(cfg);
    else if (cfg.command == "poisson") out = run_poisson(cfg);
    else if (cfg.command == "sample") out = run_sample(cfg);
    else if (cfg.command == "validate-saddle") out = run_validate_saddle(cfg);
    else out = run_limit_check(cfg);
    write_output(cfg, out);
  } catch (const Error& e) {
    return report_error(to_string(e.kind()), exit_code_for(e.kind()), e.what());
  } catch (const std::ios_base::failure& e) {
    return report_error("io", kIo, e.what());
  } catch (const std::exception& e) {
    return report_error("internal", kNumeric, e.what());
  }
  return kOk;
}
