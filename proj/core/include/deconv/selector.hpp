// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "deconv/sample.hpp"

namespace deconv {

/// Candidate self-similarity indices s_1 < ... < s_N, all in (0, 2].
class Grid
{
public:
  explicit Grid(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  /// 0-based access.
  double operator[](std::size_t k) const { return values_[k]; }
  double lowest() const noexcept { return values_.front(); }
  double highest() const noexcept { return values_.back(); }
  /// Smallest gap between neighbours; +infinity for a single point.
  double min_spacing() const noexcept;
  /// Index of an exact grid value, or size() if absent.
  std::size_t index_of(double s) const noexcept;

private:
  std::vector<double> values_;
};

/// Evaluation frequencies fixed in advance, one per grid point.
struct ExplicitPoints
{
  std::vector<double> u;
};

/// u_k = (log n / 2 - (delta / s_k) log log n)^{1 / s_k}
struct FormulaPoints
{
  double delta = 1.0;
};

struct SelectorConfig
{
  Grid grid;
  /// Lower envelope q(u) = A u^{-beta_prime} on the signal cf modulus.
  double A = 0.88;
  double beta_prime = 0.1;
  std::variant<ExplicitPoints, FormulaPoints> eval_points;
  /// Grid-spacing constant; only feeds grid_spacing_check.
  double c = 2.0;

  /// Throws InvalidArgument on A <= 0, beta_prime <= 0, an explicit point
  /// count that differs from the grid size, or an explicit point <= 1.
  void validate() const;

  /// Grid {0.5, 1, 1.5, 2} with frequencies (2.5, 1.7, 1.5, 1.45).
  static SelectorConfig simulation_default();
};

struct IndexDiagnostics
{
  double s;
  double u;
  double ecf_mod;
  /// 1/2 (q Phi^[k] + Phi^[k+1])(u); NaN for the last index.
  double lower_mid;
  /// 1/2 (q Phi^[k-1] + Phi^[k])(u); NaN for the first index.
  double upper_mid;
  bool member;

  /// Field-wise, with NaN equal to NaN.
  friend bool operator==(const IndexDiagnostics& a, const IndexDiagnostics& b);
};

struct SelectionResult
{
  double s_hat;
  /// 0-based indices of every grid point that met its membership test.
  std::vector<std::size_t> selected;
  bool fallback_used;
  std::vector<IndexDiagnostics> diagnostics;

  friend bool operator==(const SelectionResult&, const SelectionResult&) =
    default;
};

/// exp(-|u|^{s_k}), k 0-based.
double reference_cf(const Grid& grid, std::size_t k, double u);

/// A u^{-beta'} exp(-|u|^{s_k}); requires u > 0.
double envelope(const SelectorConfig& config, std::size_t k, double u);

/// Throws SampleSizeError when log n <= 1 or a base is nonpositive, and
/// NumericalError when a point falls at or below 1.
std::vector<double> eval_points_formula(const Grid& grid,
                                        std::size_t n,
                                        double delta);
/// Same with log n given directly (n need not be an integer).
std::vector<double> eval_points_formula_log_n(const Grid& grid,
                                              double log_n,
                                              double delta);

/// Evaluation frequencies for a sample of size n under `config`.
std::vector<double> resolve_eval_points(const SelectorConfig& config,
                                        std::size_t n);

/// Membership tests and min-selection given |ecf| at each frequency.
/// Lower comparisons are non-strict, upper ones strict.
SelectionResult select_from_moduli(const SelectorConfig& config,
                                   std::span<const double> points,
                                   std::span<const double> moduli);

/// Estimates s on the grid from a sample whose noise has unit scale.
SelectionResult select_index(const Sample& sample, const SelectorConfig& config);

struct SpacingDiagnostic
{
  double min_spacing;
  double required; ///< c / log n
  bool spacing_ok;
  double max_intervals; ///< (s_N - s_1) / d_n
  bool count_ok;
  bool passed() const noexcept { return spacing_ok && count_ok; }
};

/// Compares the grid against d_n = c / log n. Informational only.
SpacingDiagnostic grid_spacing_check(const Grid& grid, std::size_t n, double c);

/// Human-readable warnings about a configuration at sample size n: failed
/// spacing check, envelope not below the reference cf at a frequency, or a
/// Formula delta below beta' + s_N^2 / (2 s_1).
std::vector<std::string> selector_warnings(const SelectorConfig& config,
                                           std::size_t n);

} // namespace deconv
