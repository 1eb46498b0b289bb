// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "deconv/models.hpp"
#include "deconv/selector.hpp"

namespace deconv {

struct ExperimentConfig
{
  std::vector<SignalModel> signals;
  std::vector<double> noise_indices;
  std::vector<std::size_t> ns;
  std::size_t m = 100;
  SelectorConfig selector = SelectorConfig::simulation_default();
  std::uint64_t master_seed = 2008;
  /// Noise scale (known).
  double gamma = 1.0;
  /// Worker threads; 0 = one per hardware thread.
  unsigned workers = 0;

  /// m >= 1, nonempty signals and ns, n >= 2, every s on the selector grid.
  void validate() const;

  /// Laplace and Gamma signals at scale 0.1, s in {0.5, 1, 1.5, 2},
  /// n in {500, 1000, 2000, 5000}, m = 100.
  static ExperimentConfig simulation_default();
};

struct CellReport
{
  std::string signal;
  double s = 0.0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t success_count = 0;
  std::size_t fallback_count = 0;
  /// Mean wall-clock seconds per replication; not deterministic.
  double mean_runtime = 0.0;
  /// Empty unless the cell failed as a whole.
  std::string error;

  /// Every field except the runtime.
  bool same_outcome(const CellReport& other) const;
  bool operator==(const CellReport&) const = default;
};

struct MCReport
{
  std::vector<CellReport> cells;

  bool same_outcome(const MCReport& other) const;
  bool operator==(const MCReport&) const = default;
};

/// Seed of replication r in a cell.
std::uint64_t replication_seed(std::uint64_t master_seed,
                               const std::string& signal,
                               double s,
                               std::size_t n,
                               std::size_t r);

/// One cell on its own; gives the same counts as inside run_experiment.
CellReport run_cell(const ExperimentConfig& config,
                    const SignalModel& signal,
                    double s,
                    std::size_t n);

/// Rows ordered by signal (config order), then s, then n ascending.
MCReport run_experiment(const ExperimentConfig& config);

struct OffGridCell
{
  std::string signal;
  double true_s = 0.0;
  std::size_t n = 0;
  std::size_t m = 0;
  /// Selected grid value -> count.
  std::map<double, std::size_t> counts;
  std::size_t fallback_count = 0;
  std::string error;

  /// Most frequent selected value (smallest on ties); NaN if no counts.
  double mode() const;
  double modal_share() const;
};

/// Selection tallies when the true index is true_s (any value in (0, 2]),
/// one cell per (signal, n). config.noise_indices is ignored.
std::vector<OffGridCell> run_offgrid_probe(const ExperimentConfig& config,
                                           double true_s);

/// CSV: signal,s,n,m,success_count,fallback_count,mean_runtime_s,error
void write_report(std::ostream& out, const MCReport& report);
void emit_report(const MCReport& report, const std::filesystem::path& path);
MCReport parse_report(std::istream& in);
MCReport read_report(const std::filesystem::path& path);

} // namespace deconv
