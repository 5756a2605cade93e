// Copyright 2026 The photomux Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/csv.hpp"
#include "photomux/loss_models.hpp"

namespace photomux::cli {

/// Router transmissions of the spatial optimum table, in row order.
const std::vector<double>& table1_router_transmissions();
const std::vector<double>& table1_detector_efficiencies();

/// Delay-line parameter sets of the bulk optimum table, in row order.
const std::vector<BulkTimeLoss>& table2_parameter_sets();
const std::vector<double>& table2_detector_efficiencies();

/// table1, table2, fig5 .. fig18
std::vector<std::string> reproduce_targets();

/// Throws UsageError for an unknown target.  Scheme, units and lambda of
/// `base` are ignored; tolerance and lambda search settings are honoured.
CsvReport reproduce(const std::string& target, const RunConfig& base);

}  // namespace photomux::cli
