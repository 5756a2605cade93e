// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli/commands.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cli/reproduce.hpp"
#include "cli/version.hpp"
#include "photomux/errors.hpp"
#include "photomux/monte_carlo.hpp"

namespace photomux::cli {
namespace {

std::string scheme_description(const RunConfig& cfg) {
  std::string out = cfg.scheme;
  for (const auto& [key, value] : cfg.scheme_params) out += fmt::format(" {}={}", key, value);
  return out;
}

}  // namespace

void add_common_metadata(CsvReport& report, const std::string& command, const RunConfig& cfg) {
  report.add_metadata("tool", fmt::format("photomux {}", kToolVersion));
  report.add_metadata("command", command);
  report.add_metadata("tolerance", fmt::format("{}", cfg.tolerance));
}

std::vector<std::string> optimum_columns() {
  return {"N[units]",           "m[levels]",    "lambda_opt[pairs/period]",
          "lambda_opt/N[pairs/unit]", "P1_max[prob]", "P0[prob]", "flags"};
}

std::vector<CsvCell> optimum_cells(const OptimizationResult& r) {
  std::vector<CsvCell> cells;
  cells.emplace_back(static_cast<std::int64_t>(r.units));
  if (r.levels) {
    cells.emplace_back(static_cast<std::int64_t>(*r.levels));
  } else {
    cells.emplace_back(std::monostate{});
  }
  cells.emplace_back(r.lambda_opt);
  cells.emplace_back(r.lambda_opt / static_cast<double>(r.units));
  cells.emplace_back(r.p1_max);
  cells.emplace_back(r.p0_at_opt);
  return cells;
}

std::string optimum_flags(const OptimizationResult& r, bool range_edge) {
  std::string flags;
  if (r.at_boundary) flags = "lambda_at_bound";
  if (range_edge) flags += flags.empty() ? "N_at_range_edge" : ";N_at_range_edge";
  return flags;
}

CommandResult cmd_dist(const RunConfig& cfg) {
  validate(cfg);
  const MultiplexerSpec spec = cfg.fixed_spec();
  const OutputDistribution dist = output_distribution(spec, cfg.tolerance);

  CommandResult result;
  CsvReport& r = result.report;
  add_common_metadata(r, "dist", cfg);
  r.add_metadata("spec", fingerprint(spec));
  r.add_metadata("residual_mass", format_real(dist.residual_mass));
  r.columns = {"i[photons]", "P_i[prob]"};
  for (std::size_t i = 0; i < dist.probabilities.size(); ++i) {
    r.rows.push_back({static_cast<std::int64_t>(i), dist.probabilities[i]});
  }
  return result;
}

CommandResult cmd_optimize(const RunConfig& cfg) {
  validate(cfg);
  const LossModel model = cfg.loss_model();
  const std::vector<std::uint64_t> scan = cfg.unit_scan();
  const LambdaSearchConfig search = cfg.search_config();
  const UnitsOptimizationResult opt =
      optimize_units(model, cfg.detector_efficiency, scan, search, cfg.law);

  CommandResult result;
  CsvReport& r = result.report;
  add_common_metadata(r, "optimize", cfg);
  r.add_metadata("scheme", scheme_description(cfg));
  r.add_metadata("detector_efficiency", fmt::format("{}", cfg.detector_efficiency));
  r.add_metadata("law", std::string(to_string(cfg.law)));
  r.add_metadata("units_scanned", fmt::format("{}..{} ({} values)", scan.front(), scan.back(),
                                              scan.size()));
  r.add_metadata("lambda_search",
                 fmt::format("[{}, {}] grid={} refine={} multimodal_guard={}", search.lambda_min,
                             search.resolved_lambda_max(cfg.detector_efficiency),
                             search.coarse_grid_points, search.refine_tolerance,
                             search.multimodal_guard));
  std::size_t pinned = 0;
  for (const auto& row : opt.per_unit) pinned += row.at_boundary ? 1 : 0;
  if (pinned) {
    r.add_metadata("warning", fmt::format("lambda optimum pinned to the search bound for {} N", pinned));
  }
  if (opt.at_range_edge) {
    r.add_metadata("warning", "best N lies at the edge of the scanned range");
  }

  r.columns = {"row"};
  for (auto& c : optimum_columns()) r.columns.push_back(c);
  for (const auto& row : opt.per_unit) {
    std::vector<CsvCell> cells{std::string("scan")};
    for (auto& c : optimum_cells(row)) cells.push_back(std::move(c));
    cells.emplace_back(optimum_flags(row, false));
    r.rows.push_back(std::move(cells));
  }
  std::vector<CsvCell> best{std::string("optimum")};
  for (auto& c : optimum_cells(opt.best)) best.push_back(std::move(c));
  best.emplace_back(optimum_flags(opt.best, opt.at_range_edge));
  r.rows.push_back(std::move(best));
  return result;
}

CommandResult cmd_reproduce(const std::string& target, const RunConfig& cfg) {
  CommandResult result;
  result.report = reproduce(target, cfg);
  return result;
}

CommandResult cmd_verify(const RunConfig& cfg) {
  validate(cfg);
  const MultiplexerSpec spec = cfg.fixed_spec();
  OutputDistribution analytic = output_distribution(spec, cfg.tolerance);

  SimulationConfig sim;
  sim.spec = spec;
  sim.trials = cfg.trials;
  sim.seed = cfg.seed;
  sim.max_recorded_photons = cfg.max_recorded_photons;
  const EmpiricalDistribution empirical = simulate(sim);

  const auto trials = static_cast<double>(cfg.trials);
  if (cfg.perturb) {
    // Self-test: shift P_1 by ten standard errors so the check must fail.
    const double p1 = analytic.at(1);
    if (analytic.probabilities.size() < 2) analytic.probabilities.resize(2, 0.0);
    analytic.probabilities[1] = p1 + 10.0 * std::sqrt(std::max(p1 * (1.0 - p1), 1.0 / trials) / trials);
  }
  const ComparisonReport cmp = compare_to_analytic(empirical, analytic, cfg.z);

  CommandResult result;
  CsvReport& r = result.report;
  add_common_metadata(r, "verify", cfg);
  r.add_metadata("spec", fingerprint(spec));
  r.add_metadata("trials", std::to_string(cfg.trials));
  r.add_metadata("seed", std::to_string(cfg.seed));
  r.add_metadata("z", fmt::format("{}", cfg.z));
  if (cfg.perturb) r.add_metadata("perturbed", "P_1 shifted by +10 standard errors");
  r.add_metadata("result", cmp.pass ? "pass" : "fail");
  if (!cmp.bins.empty()) {
    const BinComparison& worst = cmp.bins[cmp.worst_bin];
    r.add_metadata("worst_bin", fmt::format("{}{} z={}", worst.pooled ? ">=" : "",
                                            worst.first_photons, format_real(worst.z_score)));
  }
  r.columns = {"photons", "P_i[prob]", "P_hat_i[prob]", "SE_i[prob]", "z", "pass"};
  for (const auto& bin : cmp.bins) {
    r.rows.push_back({fmt::format("{}{}", bin.pooled ? ">=" : "", bin.first_photons), bin.analytic,
                      bin.empirical, bin.standard_error, bin.z_score,
                      std::string(bin.pass ? "yes" : "no")});
  }
  result.exit_code = cmp.pass ? kExitOk : kExitVerificationFailed;
  return result;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Photon-number statistics and optimisation of multiplexed single-photon sources"};
  app.footer(
      "Exit codes: 0 success, 1 unexpected failure, 2 configuration or usage error,\n"
      "            3 Monte Carlo verification failed, 4 numerical error.");
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<double> tolerance;
  std::optional<std::string> out_path;
  std::optional<std::uint64_t> seed;
  bool paper_precision = false;
  bool print_config = false;
  std::optional<std::string> scheme;
  std::optional<double> detector;
  std::optional<std::uint64_t> units;
  std::optional<unsigned> levels;
  std::optional<double> lambda;
  std::optional<std::uint64_t> trials;
  bool perturb = false;

  app.add_option("--config", config_path, "INI configuration file");
  app.add_option("--tolerance", tolerance, "Series truncation tolerance");
  app.add_option("--out", out_path, "Write the CSV here instead of standard output");
  app.add_option("--seed", seed, "Monte Carlo seed");
  app.add_flag("--paper-precision", paper_precision, "Print 4 significant digits");
  app.add_flag("--print-config", print_config, "Print the resolved configuration and exit");
  app.add_option("--set", overrides, "Override a key: section.key=value (repeatable)");
  app.add_option("--scheme", scheme, "ideal | spatial | cavity | bulk");
  app.add_option("--detector", detector, "Detector efficiency V_D");
  app.add_option("-N,--units", units, "Number of multiplexed units");
  app.add_option("-m,--levels", levels, "log2 of the number of units");
  app.add_option("--lambda", lambda, "Total mean pair number per period");
  app.add_option("--trials", trials, "Monte Carlo trials");
  app.add_flag("--perturb", perturb, "verify: shift P_1 by 10 standard errors (self-test)");

  auto* dist = app.add_subcommand("dist", "Output photon-number distribution P_i");
  auto* optimize = app.add_subcommand("optimize", "Optimise lambda for each N and pick the best N");
  auto* reproduce_cmd = app.add_subcommand("reproduce", "Emit a table or figure data set");
  app.add_subcommand("verify", "Compare P_i against a Monte Carlo simulation");
  std::string target;
  const auto targets = reproduce_targets();
  reproduce_cmd->add_option("target", target, "Table or figure")
      ->required()
      ->check(CLI::IsMember(targets));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfigError;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) load_config_file(cfg, config_path);
    if (tolerance) cfg.tolerance = *tolerance;
    if (seed) cfg.seed = *seed;
    if (out_path) cfg.output_path = *out_path;
    if (paper_precision) cfg.paper_precision = true;
    if (scheme) apply_setting(cfg, "scheme", "type", *scheme);
    if (detector) cfg.detector_efficiency = *detector;
    if (units) cfg.units = *units;
    if (levels) cfg.levels = *levels;
    if (lambda) cfg.lambda = *lambda;
    if (trials) cfg.trials = *trials;
    if (perturb) cfg.perturb = true;
    for (const auto& o : overrides) apply_override(cfg, o);

    if (print_config) {
      out << to_ini(cfg);
      return kExitOk;
    }

    CommandResult result;
    if (*dist) {
      result = cmd_dist(cfg);
    } else if (*optimize) {
      result = cmd_optimize(cfg);
    } else if (*reproduce_cmd) {
      result = cmd_reproduce(target, cfg);
    } else {
      result = cmd_verify(cfg);
    }

    if (cfg.output_path.empty()) {
      result.report.write(out, cfg.paper_precision);
    } else {
      std::ofstream file(cfg.output_path);
      if (!file) throw ConfigurationError("cannot write output file '" + cfg.output_path + "'");
      result.report.write(file, cfg.paper_precision);
    }
    if (result.exit_code == kExitVerificationFailed) {
      err << "verification failed: analytic and simulated distributions disagree\n";
    }
    return result.exit_code;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumericalError;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace photomux::cli
