// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli/config.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "photomux/errors.hpp"

namespace photomux::cli {
namespace {

const std::map<std::string, std::set<std::string>>& scheme_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"ideal", {"V_b"}},
      {"spatial", {"V_R", "V_b"}},
      {"cavity", {"V_c", "V_b"}},
      {"bulk", {"V_r", "V_r0", "V_t", "V_b"}},
  };
  return keys;
}

std::string qualified(const std::string& section, const std::string& key) {
  return section.empty() ? key : section + "." + key;
}

double parse_real(const std::string& name, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigurationError(fmt::format("{}: expected a real number, got '{}'", name, text));
}

std::uint64_t parse_count(const std::string& name, const std::string& text) {
  try {
    std::size_t used = 0;
    if (!text.empty() && text.front() != '-') {
      const unsigned long long v = std::stoull(text, &used);
      if (used == text.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw ConfigurationError(
      fmt::format("{}: expected a non-negative integer, got '{}'", name, text));
}

unsigned parse_level(const std::string& name, const std::string& text) {
  const std::uint64_t v = parse_count(name, text);
  if (v > 30) throw ConfigurationError(fmt::format("{}: at most 30 levels, got {}", name, v));
  return static_cast<unsigned>(v);
}

bool parse_flag(const std::string& name, const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigurationError(fmt::format("{}: expected true/false, got '{}'", name, text));
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::string real(double v) { return fmt::format("{}", v); }

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& section, const std::string& key,
                   const std::string& raw) {
  const std::string name = qualified(section, key);
  const std::string value = trim(raw);

  if (section.empty()) {
    if (key == "tolerance") {
      cfg.tolerance = parse_real(name, value);
      return;
    }
  } else if (section == "scheme") {
    if (key == "type") {
      if (!scheme_keys().contains(value)) {
        throw ConfigurationError(fmt::format(
            "{}: unknown scheme '{}' (expected ideal, spatial, cavity or bulk)", name, value));
      }
      cfg.scheme = value;
      return;
    }
    static const std::set<std::string> params{"V_b", "V_R", "V_c", "V_r", "V_r0", "V_t"};
    if (params.contains(key)) {
      cfg.scheme_params[key] = parse_real(name, value);
      return;
    }
  } else if (section == "detector") {
    if (key == "efficiency" || key == "V_D") {
      cfg.detector_efficiency = parse_real(name, value);
      return;
    }
    if (key == "law") {
      if (value == "poisson") {
        cfg.law = PairLaw::Poisson;
      } else if (value == "thermal") {
        cfg.law = PairLaw::Thermal;
      } else {
        throw ConfigurationError(
            fmt::format("{}: expected poisson or thermal, got '{}'", name, value));
      }
      return;
    }
  } else if (section == "units") {
    if (key == "N") {
      cfg.units = parse_count(name, value);
      return;
    }
    if (key == "m") {
      cfg.levels = parse_level(name, value);
      return;
    }
    if (key == "m_min") {
      cfg.levels_min = parse_level(name, value);
      return;
    }
    if (key == "m_max") {
      cfg.levels_max = parse_level(name, value);
      return;
    }
    if (key == "N_min") {
      cfg.units_min = parse_count(name, value);
      return;
    }
    if (key == "N_max") {
      cfg.units_max = parse_count(name, value);
      return;
    }
  } else if (section == "lambda") {
    if (key == "value") {
      cfg.lambda = parse_real(name, value);
      return;
    }
    if (key == "min") {
      cfg.search.lambda_min = parse_real(name, value);
      return;
    }
    if (key == "max") {
      cfg.search.lambda_max = parse_real(name, value);
      return;
    }
    if (key == "grid_points") {
      cfg.search.coarse_grid_points = parse_count(name, value);
      return;
    }
    if (key == "refine_tolerance") {
      cfg.search.refine_tolerance = parse_real(name, value);
      return;
    }
    if (key == "multimodal_guard") {
      cfg.search.multimodal_guard = parse_flag(name, value);
      return;
    }
  } else if (section == "output") {
    if (key == "path") {
      cfg.output_path = value;
      return;
    }
    if (key == "format") {
      if (value != "csv") throw ConfigurationError(name + ": only 'csv' is supported");
      cfg.output_format = value;
      return;
    }
    if (key == "paper_precision") {
      cfg.paper_precision = parse_flag(name, value);
      return;
    }
  } else if (section == "simulation") {
    if (key == "trials") {
      cfg.trials = parse_count(name, value);
      return;
    }
    if (key == "seed") {
      cfg.seed = parse_count(name, value);
      return;
    }
    if (key == "z") {
      cfg.z = parse_real(name, value);
      return;
    }
    if (key == "perturb") {
      cfg.perturb = parse_flag(name, value);
      return;
    }
    if (key == "max_recorded_photons") {
      cfg.max_recorded_photons = parse_count(name, value);
      return;
    }
  }
  throw ConfigurationError(fmt::format("unknown configuration key '{}'", name));
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigurationError(fmt::format("override '{}' is not of the form key=value", assignment));
  }
  const std::string lhs = trim(assignment.substr(0, eq));
  const auto dot = lhs.find('.');
  if (dot == std::string::npos) {
    apply_setting(cfg, "", lhs, assignment.substr(eq + 1));
  } else {
    apply_setting(cfg, lhs.substr(0, dot), lhs.substr(dot + 1), assignment.substr(eq + 1));
  }
}

void load_config(RunConfig& cfg, std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigurationError(fmt::format("malformed configuration: {}", e.message()));
  }
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      apply_setting(cfg, "", name, node.data());
      continue;
    }
    for (const auto& [key, leaf] : node) apply_setting(cfg, name, key, leaf.data());
  }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError(fmt::format("cannot open configuration file '{}'", path));
  load_config(cfg, in);
}

LossModel RunConfig::loss_model() const {
  const auto& allowed = scheme_keys().at(scheme);
  for (const auto& [key, _] : scheme_params) {
    if (!allowed.contains(key)) {
      throw ConfigurationError(
          fmt::format("unknown configuration key 'scheme.{}' for scheme '{}'", key, scheme));
    }
  }
  auto get = [&](const std::string& key) {
    const auto it = scheme_params.find(key);
    return it == scheme_params.end() ? 1.0 : it->second;
  };
  LossModel model;
  if (scheme == "ideal") {
    model = IdealLoss{get("V_b")};
  } else if (scheme == "spatial") {
    model = SpatialLoss{get("V_R"), get("V_b")};
  } else if (scheme == "cavity") {
    model = CavityLoss{get("V_c"), get("V_b")};
  } else {
    model = BulkTimeLoss{get("V_r"), get("V_r0"), get("V_t"), get("V_b")};
  }
  try {
    photomux::validate(model);
  } catch (const DomainError& e) {
    throw ConfigurationError(fmt::format("scheme: {}", e.what()));
  }
  return model;
}

std::optional<std::uint64_t> RunConfig::fixed_units() const {
  if (units && levels && *units != (std::uint64_t{1} << *levels)) {
    throw ConfigurationError("units.N and units.m disagree");
  }
  if (units) return units;
  if (levels) return std::uint64_t{1} << *levels;
  return std::nullopt;
}

std::vector<std::uint64_t> RunConfig::unit_scan() const {
  const bool level_range = levels_min || levels_max;
  const bool unit_range = units_min || units_max;
  if (level_range && unit_range) {
    throw ConfigurationError("units: give either m_min/m_max or N_min/N_max, not both");
  }
  // A missing bound falls back to the scheme default.
  const std::uint64_t first = scheme == "spatial" || scheme == "bulk" ? 2 : 1;
  const std::uint64_t last = scheme == "spatial" || scheme == "bulk" ? std::uint64_t{1} << 15
                             : scheme == "cavity"                    ? 64
                                                                     : std::uint64_t{1} << 14;
  if (level_range) {
    const unsigned lo = levels_min.value_or(static_cast<unsigned>(std::bit_width(first) - 1));
    const unsigned hi = levels_max.value_or(static_cast<unsigned>(std::bit_width(last) - 1));
    if (lo > hi) throw ConfigurationError("units.m_min exceeds units.m_max");
    return power_of_two_range(lo, hi);
  }
  if (unit_range) {
    const std::uint64_t lo = units_min.value_or(first);
    const std::uint64_t hi = units_max.value_or(last);
    if (lo == 0 || lo > hi) throw ConfigurationError("units.N_min must be in [1, units.N_max]");
    return linear_range(lo, hi);
  }
  if (auto n = fixed_units()) return {*n};
  if (scheme == "cavity") return linear_range(first, last);
  return power_of_two_range(static_cast<unsigned>(std::bit_width(first) - 1),
                            static_cast<unsigned>(std::bit_width(last) - 1));
}

MultiplexerSpec RunConfig::fixed_spec() const {
  const auto n = fixed_units();
  if (!n) throw ConfigurationError("units.N or units.m is required");
  if (!lambda) throw ConfigurationError("lambda.value is required");
  MultiplexerSpec spec{loss_model(), detector_efficiency, *n, *lambda, law};
  try {
    photomux::validate(spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigurationError(e.what());
  }
  return spec;
}

LambdaSearchConfig RunConfig::search_config() const {
  LambdaSearchConfig s = search;
  s.tolerance = tolerance;
  return s;
}

void validate(const RunConfig& cfg) {
  if (!(cfg.tolerance > 0.0)) throw ConfigurationError("tolerance must be positive");
  if (!(cfg.detector_efficiency >= 0.0 && cfg.detector_efficiency <= 1.0)) {
    throw ConfigurationError("detector.efficiency must lie in [0, 1]");
  }
  if (cfg.lambda && !(*cfg.lambda >= 0.0)) throw ConfigurationError("lambda.value must be >= 0");
  if (cfg.trials == 0) throw ConfigurationError("simulation.trials must be at least 1");
  if (!(cfg.z > 0.0)) throw ConfigurationError("simulation.z must be positive");
  const LossModel model = cfg.loss_model();
  for (std::uint64_t n : cfg.unit_scan()) {
    try {
      validate_units(model, n);
    } catch (const std::invalid_argument& e) {
      throw ConfigurationError(fmt::format("units: {}", e.what()));
    }
  }
  try {
    photomux::validate(cfg.search_config(), cfg.detector_efficiency);
  } catch (const DomainError& e) {
    throw ConfigurationError(fmt::format("lambda: {}", e.what()));
  }
}

std::string to_ini(const RunConfig& cfg) {
  std::ostringstream out;
  out << "tolerance = " << real(cfg.tolerance) << "\n\n[scheme]\ntype = " << cfg.scheme << "\n";
  for (const auto& [key, value] : cfg.scheme_params) out << key << " = " << real(value) << "\n";
  out << "\n[detector]\nefficiency = " << real(cfg.detector_efficiency)
      << "\nlaw = " << to_string(cfg.law) << "\n\n[units]\n";
  if (cfg.units) out << "N = " << *cfg.units << "\n";
  if (cfg.levels) out << "m = " << *cfg.levels << "\n";
  if (cfg.levels_min) out << "m_min = " << *cfg.levels_min << "\n";
  if (cfg.levels_max) out << "m_max = " << *cfg.levels_max << "\n";
  if (cfg.units_min) out << "N_min = " << *cfg.units_min << "\n";
  if (cfg.units_max) out << "N_max = " << *cfg.units_max << "\n";
  out << "\n[lambda]\n";
  if (cfg.lambda) out << "value = " << real(*cfg.lambda) << "\n";
  out << "min = " << real(cfg.search.lambda_min) << "\n";
  if (cfg.search.lambda_max) out << "max = " << real(*cfg.search.lambda_max) << "\n";
  out << "grid_points = " << cfg.search.coarse_grid_points
      << "\nrefine_tolerance = " << real(cfg.search.refine_tolerance)
      << "\nmultimodal_guard = " << (cfg.search.multimodal_guard ? "true" : "false") << "\n";
  out << "\n[output]\n";
  if (!cfg.output_path.empty()) out << "path = " << cfg.output_path << "\n";
  out << "format = " << cfg.output_format
      << "\npaper_precision = " << (cfg.paper_precision ? "true" : "false") << "\n";
  out << "\n[simulation]\ntrials = " << cfg.trials << "\nseed = " << cfg.seed
      << "\nz = " << real(cfg.z) << "\nperturb = " << (cfg.perturb ? "true" : "false")
      << "\nmax_recorded_photons = " << cfg.max_recorded_photons << "\n";
  return out.str();
}

}  // namespace photomux::cli
