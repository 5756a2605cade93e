// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli/reproduce.hpp"

#include <cmath>
#include <functional>
#include <map>

#include <fmt/format.h>

#include "cli/commands.hpp"
#include "photomux/errors.hpp"
#include "photomux/optimizer.hpp"

namespace photomux::cli {
namespace {

// Per-unit mean grid for the P_1(lambda/N) curves.
constexpr double kCurveMin = 1e-3;
constexpr double kCurveMax = 10.0;
constexpr std::size_t kCurvePoints = 241;

struct Series {
  std::string label;
  LossModel loss;
};

std::vector<Series> ideal_series() {
  std::vector<Series> out;
  for (double vb : {1.0, 0.95, 0.9, 0.8, 0.7}) out.push_back({fmt::format("V_b={}", vb), IdealLoss{vb}});
  return out;
}

std::vector<Series> spatial_series() {
  std::vector<Series> out;
  for (double vr : table1_router_transmissions()) {
    out.push_back({fmt::format("V_R={}", vr), SpatialLoss{vr, 1.0}});
  }
  return out;
}

std::vector<Series> cavity_series() {
  std::vector<Series> out;
  for (double vc : {0.97, 0.95, 0.9, 0.85, 0.8, 0.7, 0.6}) {
    out.push_back({fmt::format("V_c={}", vc), CavityLoss{vc, 1.0}});
  }
  return out;
}

std::string bulk_label(const BulkTimeLoss& b) {
  return fmt::format("V_r={};V_r0={};V_t={}", b.branch_used, b.branch_bypassed, b.propagation);
}

std::vector<Series> bulk_series() {
  std::vector<Series> out;
  for (const auto& b : table2_parameter_sets()) out.push_back({bulk_label(b), b});
  return out;
}

struct Figure {
  std::string title;
  std::function<std::vector<Series>()> series;
  bool curve = false;           // P_1 against lambda/N at fixed N
  std::uint64_t curve_units = 0;
  std::vector<std::uint64_t> scan;  // optimum per N otherwise
};

const std::map<std::string, Figure>& figures() {
  static const std::map<std::string, Figure> figs{
      {"fig5", {"ideal: P_1 vs lambda/N, N=256", ideal_series, true, 256, {}}},
      {"fig6", {"ideal: lambda_opt/N vs N", ideal_series, false, 0, power_of_two_range(0, 14)}},
      {"fig7", {"ideal: lambda_opt vs N", ideal_series, false, 0, power_of_two_range(0, 14)}},
      {"fig8", {"ideal: P_1,max vs N", ideal_series, false, 0, power_of_two_range(0, 14)}},
      {"fig9", {"spatial: P_1 vs lambda/N, N=8", spatial_series, true, 8, {}}},
      {"fig10", {"spatial: lambda_opt/N vs N", spatial_series, false, 0, power_of_two_range(1, 15)}},
      {"fig11", {"spatial: P_1,max vs N", spatial_series, false, 0, power_of_two_range(1, 15)}},
      {"fig12", {"cavity: P_1 vs lambda/N, N=8", cavity_series, true, 8, {}}},
      {"fig13", {"cavity: lambda_opt/N vs N", cavity_series, false, 0, linear_range(1, 64)}},
      {"fig14", {"cavity: lambda_opt vs N", cavity_series, false, 0, linear_range(1, 64)}},
      {"fig15", {"cavity: P_1,max vs N", cavity_series, false, 0, linear_range(1, 64)}},
      {"fig16", {"bulk: P_1 vs lambda/N, N=256", bulk_series, true, 256, {}}},
      {"fig17", {"bulk: lambda_opt vs N", bulk_series, false, 0, power_of_two_range(1, 15)}},
      {"fig18", {"bulk: P_1,max vs N", bulk_series, false, 0, power_of_two_range(1, 15)}},
  };
  return figs;
}

CsvReport figure_report(const std::string& target, const Figure& fig, const RunConfig& cfg) {
  CsvReport r;
  add_common_metadata(r, "reproduce " + target, cfg);
  r.add_metadata("figure", fig.title);
  r.add_metadata("detector_efficiency", "1");
  const std::vector<Series> series = fig.series();

  if (fig.curve) {
    r.add_metadata("grid", fmt::format("lambda/N log-spaced in [{}, {}], {} points", kCurveMin,
                                       kCurveMax, kCurvePoints));
    r.columns = {"series", "parameters", "N[units]", "lambda/N[pairs/unit]",
                 "lambda[pairs/period]", "P1[prob]"};
    const double step = std::log(kCurveMax / kCurveMin) / static_cast<double>(kCurvePoints - 1);
    for (std::size_t s = 0; s < series.size(); ++s) {
      const DistributionEvaluator eval(series[s].loss, 1.0, fig.curve_units);
      const auto n = static_cast<double>(fig.curve_units);
      for (std::size_t k = 0; k < kCurvePoints; ++k) {
        const double per_unit = kCurveMin * std::exp(step * static_cast<double>(k));
        r.rows.push_back({static_cast<std::int64_t>(s + 1), series[s].label,
                          static_cast<std::int64_t>(fig.curve_units), per_unit, per_unit * n,
                          eval.single_photon(per_unit * n, cfg.tolerance)});
      }
    }
    return r;
  }

  const LambdaSearchConfig search = cfg.search_config();
  r.add_metadata("units_scanned", fmt::format("{}..{} ({} values)", fig.scan.front(),
                                              fig.scan.back(), fig.scan.size()));
  r.columns = {"series", "parameters"};
  for (auto& c : optimum_columns()) r.columns.push_back(c);
  for (std::size_t s = 0; s < series.size(); ++s) {
    const UnitsOptimizationResult opt = optimize_units(series[s].loss, 1.0, fig.scan, search);
    for (const auto& row : opt.per_unit) {
      std::vector<CsvCell> cells{static_cast<std::int64_t>(s + 1), series[s].label};
      for (auto& c : optimum_cells(row)) cells.push_back(std::move(c));
      cells.emplace_back(optimum_flags(row, false));
      r.rows.push_back(std::move(cells));
    }
  }
  return r;
}

CsvReport table1_report(const RunConfig& cfg) {
  CsvReport r;
  add_common_metadata(r, "reproduce table1", cfg);
  r.add_metadata("scheme", "spatial V_b=1");
  r.add_metadata("units_scanned", "m = 1..10");
  r.columns = {"row", "V_R", "V_D"};
  for (auto& c : optimum_columns()) r.columns.push_back(c);
  const auto scan = power_of_two_range(1, 10);
  const LambdaSearchConfig search = cfg.search_config();
  const auto& routers = table1_router_transmissions();
  for (std::size_t row = 0; row < routers.size(); ++row) {
    for (double vd : table1_detector_efficiencies()) {
      const UnitsOptimizationResult opt =
          optimize_units(SpatialLoss{routers[row], 1.0}, vd, scan, search);
      std::vector<CsvCell> cells{fmt::format("{}", row + 1), routers[row], vd};
      for (auto& c : optimum_cells(opt.best)) cells.push_back(std::move(c));
      cells.emplace_back(optimum_flags(opt.best, opt.at_range_edge));
      r.rows.push_back(std::move(cells));
    }
  }
  return r;
}

CsvReport table2_report(const RunConfig& cfg) {
  CsvReport r;
  add_common_metadata(r, "reproduce table2", cfg);
  r.add_metadata("scheme", "bulk V_b=1");
  r.add_metadata("units_scanned", "m = 1..15");
  r.add_metadata("note", "row 4* repeats row 4 with V_D=0.9");
  r.columns = {"row", "V_r", "V_r0", "V_t", "V_D"};
  for (auto& c : optimum_columns()) r.columns.push_back(c);
  const auto scan = power_of_two_range(1, 15);
  const LambdaSearchConfig search = cfg.search_config();
  const auto& sets = table2_parameter_sets();

  auto emit = [&](const std::string& label, const BulkTimeLoss& b, double vd) {
    const UnitsOptimizationResult opt = optimize_units(b, vd, scan, search);
    std::vector<CsvCell> cells{label, b.branch_used, b.branch_bypassed, b.propagation, vd};
    for (auto& c : optimum_cells(opt.best)) cells.push_back(std::move(c));
    cells.emplace_back(optimum_flags(opt.best, opt.at_range_edge));
    r.rows.push_back(std::move(cells));
  };
  for (std::size_t row = 0; row < sets.size(); ++row) {
    for (double vd : table2_detector_efficiencies()) emit(fmt::format("{}", row + 1), sets[row], vd);
  }
  emit("4*", sets[3], 0.9);
  return r;
}

}  // namespace

const std::vector<double>& table1_router_transmissions() {
  static const std::vector<double> v{0.3, 0.5, 0.6, 0.8, 0.85, 0.9, 0.95};
  return v;
}

const std::vector<double>& table1_detector_efficiencies() {
  static const std::vector<double> v{1.0, 0.9, 0.2};
  return v;
}

const std::vector<BulkTimeLoss>& table2_parameter_sets() {
  static const std::vector<BulkTimeLoss> v{
      {1.0, 1.0, 1.0, 1.0},     {1.0, 1.0, 0.95, 1.0},   {0.996, 0.97, 0.99, 1.0},
      {0.996, 0.97, 0.95, 1.0}, {0.996, 0.97, 0.9, 1.0}, {0.98, 0.97, 0.95, 1.0},
      {0.97, 0.97, 0.95, 1.0},  {0.96, 0.97, 0.95, 1.0},
  };
  return v;
}

const std::vector<double>& table2_detector_efficiencies() {
  static const std::vector<double> v{1.0, 0.2};
  return v;
}

std::vector<std::string> reproduce_targets() {
  std::vector<std::string> out{"table1", "table2"};
  for (int f = 5; f <= 18; ++f) out.push_back(fmt::format("fig{}", f));
  return out;
}

CsvReport reproduce(const std::string& target, const RunConfig& base) {
  if (target == "table1") return table1_report(base);
  if (target == "table2") return table2_report(base);
  const auto& figs = figures();
  const auto it = figs.find(target);
  if (it == figs.end()) {
    std::string valid;
    for (const auto& t : reproduce_targets()) valid += (valid.empty() ? "" : ", ") + t;
    throw UsageError(fmt::format("unknown reproduce target '{}' (valid: {})", target, valid));
  }
  return figure_report(target, it->second, base);
}

}  // namespace photomux::cli
