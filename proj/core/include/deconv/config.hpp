// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "deconv/harness.hpp"

namespace deconv {

/// Experiment configuration files.
///
///   file    := { line }
///   line    := blank | comment | section | entry
///   comment := ('#' | ';') text            (whole lines only)
///   section := '[' ( "experiment" | "selector" ) ']'
///   entry   := key '=' value               (inside a section)
///   list    := value { ',' value }
///
/// [experiment]
///   signals       list of laplace5 | gamma | shifted:<offset>
///   noise_indices list of reals on the grid
///   ns            list of sample sizes
///   m             replications per cell
///   master_seed   unsigned 64-bit integer
///   pre_scale     signal scale factor (default 0.1)
///   gamma         noise scale (default 1)
///   workers       threads, 0 = all hardware threads
/// [selector]
///   grid          list of reals in (0, 2], increasing
///   eval_points   list of reals > 1, one per grid value
///   delta         use formula points with this delta instead
///   A, beta_prime envelope A u^{-beta_prime}
///   c             grid-spacing constant
///
/// Omitted keys keep ExperimentConfig::simulation_default() values. Unknown
/// sections or keys, duplicates, and setting both eval_points and delta are
/// errors (InvalidArgument, with line numbers where available).
ExperimentConfig parse_experiment_config(std::istream& in,
                                         std::string_view source = "<config>");
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Parses "laplace5", "gamma" or "shifted:<offset>".
SignalModel parse_signal(std::string_view name, double pre_scale = 0.1);

} // namespace deconv
