// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#include "deconv/selector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "deconv/ecf.hpp"
#include "deconv/error.hpp"

namespace deconv {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

double
log_sum_exp(double a, double b)
{
  double hi = std::max(a, b);
  if (hi == -std::numeric_limits<double>::infinity())
    return hi;
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// log of 1/2 (q Phi^[i] + Phi^[j])(u)
double
log_midpoint(const SelectorConfig& cfg, std::size_t i, std::size_t j, double u)
{
  double log_q = std::log(cfg.A) - cfg.beta_prime * std::log(u);
  double a = log_q - std::pow(u, cfg.grid[i]);
  double b = -std::pow(u, cfg.grid[j]);
  return std::log(0.5) + log_sum_exp(a, b);
}

// Compare in linear scale whenever the midpoint is a normal double so that
// a modulus equal to the reported midpoint hits the boundary exactly.
bool
at_least(double modulus, double log_mid)
{
  double mid = std::exp(log_mid);
  if (std::isnormal(mid))
    return modulus >= mid;
  return std::log(modulus) >= log_mid;
}

bool
strictly_below(double modulus, double log_mid)
{
  double mid = std::exp(log_mid);
  if (std::isnormal(mid))
    return modulus < mid;
  return std::log(modulus) < log_mid;
}

void
check_index(const Grid& grid, std::size_t k)
{
  if (k >= grid.size())
    throw InvalidArgument(
      fmt::format("grid index {} out of range (grid has {} points)", k,
                  grid.size()));
}

} // namespace

bool
operator==(const IndexDiagnostics& a, const IndexDiagnostics& b)
{
  auto same = [](double x, double y) {
    return x == y || (std::isnan(x) && std::isnan(y));
  };
  return same(a.s, b.s) && same(a.u, b.u) && same(a.ecf_mod, b.ecf_mod) &&
         same(a.lower_mid, b.lower_mid) && same(a.upper_mid, b.upper_mid) &&
         a.member == b.member;
}

Grid::Grid(std::vector<double> values)
  : values_(std::move(values))
{
  if (values_.empty())
    throw InvalidArgument("grid needs at least one value");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!(values_[k] > 0.0 && values_[k] <= 2.0))
      throw InvalidArgument(
        fmt::format("grid value {} outside (0, 2]", values_[k]));
    if (k > 0 && !(values_[k] > values_[k - 1]))
      throw InvalidArgument("grid values must be strictly increasing");
  }
}

double
Grid::min_spacing() const noexcept
{
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < values_.size(); ++k)
    gap = std::min(gap, values_[k] - values_[k - 1]);
  return gap;
}

std::size_t
Grid::index_of(double s) const noexcept
{
  auto it = std::find(values_.begin(), values_.end(), s);
  return static_cast<std::size_t>(it - values_.begin());
}

void
SelectorConfig::validate() const
{
  if (!(A > 0.0) || !std::isfinite(A))
    throw InvalidArgument(fmt::format("envelope constant A = {} must be > 0", A));
  if (!(beta_prime > 0.0) || !std::isfinite(beta_prime))
    throw InvalidArgument(
      fmt::format("envelope exponent beta' = {} must be > 0", beta_prime));
  if (!(c > 0.0))
    throw InvalidArgument("grid-spacing constant c must be > 0");
  if (const auto* pts = std::get_if<ExplicitPoints>(&eval_points)) {
    if (pts->u.size() != grid.size())
      throw InvalidArgument(fmt::format(
        "{} evaluation points given for a grid of {} values", pts->u.size(),
        grid.size()));
    for (double u : pts->u)
      if (!(u > 1.0) || !std::isfinite(u))
        throw InvalidArgument(
          fmt::format("evaluation point {} must be finite and > 1", u));
  } else {
    double delta = std::get<FormulaPoints>(eval_points).delta;
    if (!std::isfinite(delta))
      throw InvalidArgument("formula delta must be finite");
  }
}

SelectorConfig
SelectorConfig::simulation_default()
{
  return SelectorConfig{ Grid({ 0.5, 1.0, 1.5, 2.0 }),
                         0.88,
                         0.1,
                         ExplicitPoints{ { 2.5, 1.7, 1.5, 1.45 } },
                         2.0 };
}

double
reference_cf(const Grid& grid, std::size_t k, double u)
{
  check_index(grid, k);
  return std::exp(-std::pow(std::abs(u), grid[k]));
}

double
envelope(const SelectorConfig& config, std::size_t k, double u)
{
  check_index(config.grid, k);
  if (!(u > 0.0))
    throw InvalidArgument(fmt::format("envelope needs u > 0, got {}", u));
  return config.A * std::pow(u, -config.beta_prime) *
    std::exp(-std::pow(u, config.grid[k]));
}

std::vector<double>
eval_points_formula(const Grid& grid, std::size_t n, double delta)
{
  return eval_points_formula_log_n(grid, std::log(static_cast<double>(n)), delta);
}

std::vector<double>
eval_points_formula_log_n(const Grid& grid, double log_n, double delta)
{
  const double n = std::exp(log_n);
  if (!(log_n > 1.0))
    throw SampleSizeError(
      fmt::format("n = {:.6g} too small: log log n is undefined", n));
  double loglog = std::log(log_n);
  std::vector<double> u(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double s = grid[k];
    double base = log_n / 2.0 - (delta / s) * loglog;
    if (!(base > 0.0))
      throw SampleSizeError(fmt::format(
        "n = {:.6g} too small for delta = {} at s = {} (base {:.4g} <= 0)", n,
        delta, s, base));
    u[k] = std::pow(base, 1.0 / s);
    if (!(u[k] > 1.0))
      throw NumericalError(fmt::format(
        "evaluation point {:.4g} for s = {} is not above 1 (n = {:.6g}, delta = "
        "{}); the envelope regime needs u > 1",
        u[k], s, n, delta));
  }
  return u;
}

std::vector<double>
resolve_eval_points(const SelectorConfig& config, std::size_t n)
{
  if (const auto* pts = std::get_if<ExplicitPoints>(&config.eval_points))
    return pts->u;
  return eval_points_formula(
    config.grid, n, std::get<FormulaPoints>(config.eval_points).delta);
}

SelectionResult
select_from_moduli(const SelectorConfig& config,
                   std::span<const double> points,
                   std::span<const double> moduli)
{
  config.validate();
  const std::size_t count = config.grid.size();
  if (points.size() != count || moduli.size() != count)
    throw InvalidArgument("one point and one modulus per grid value expected");

  SelectionResult result{ config.grid.lowest(), {}, false, {} };
  result.diagnostics.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    double u = points[k];
    double m = moduli[k];
    IndexDiagnostics d{ config.grid[k], u, m, nan, nan, true };
    // the first index has no upper test, the last no lower test
    if (k + 1 < count) {
      double lm = log_midpoint(config, k, k + 1, u);
      d.lower_mid = std::exp(lm);
      d.member = d.member && at_least(m, lm);
    }
    if (k > 0) {
      double um = log_midpoint(config, k - 1, k, u);
      d.upper_mid = std::exp(um);
      d.member = d.member && strictly_below(m, um);
    }
    if (d.member)
      result.selected.push_back(k);
    result.diagnostics.push_back(d);
  }
  if (result.selected.empty()) {
    result.fallback_used = true;
  } else {
    result.s_hat = config.grid[result.selected.front()];
  }
  return result;
}

SelectionResult
select_index(const Sample& sample, const SelectorConfig& config)
{
  config.validate();
  auto points = resolve_eval_points(config, sample.size());
  auto values = ecf_batch(sample, points);
  std::vector<double> moduli(values.size());
  for (std::size_t k = 0; k < values.size(); ++k)
    moduli[k] = std::min(1.0, std::abs(values[k]));
  return select_from_moduli(config, points, moduli);
}

SpacingDiagnostic
grid_spacing_check(const Grid& grid, std::size_t n, double c)
{
  double log_n = std::log(static_cast<double>(n));
  double required = log_n > 0.0 ? c / log_n
                                 : std::numeric_limits<double>::infinity();
  SpacingDiagnostic d{};
  d.min_spacing = grid.min_spacing();
  d.required = required;
  if (grid.size() < 2) {
    d.spacing_ok = true;
    d.count_ok = true;
    d.max_intervals = std::numeric_limits<double>::infinity();
    return d;
  }
  d.spacing_ok = d.min_spacing >= required;
  d.max_intervals = (grid.highest() - grid.lowest()) / required;
  d.count_ok = static_cast<double>(grid.size() - 1) <= d.max_intervals;
  return d;
}

std::vector<std::string>
selector_warnings(const SelectorConfig& config, std::size_t n)
{
  std::vector<std::string> out;
  auto spacing = grid_spacing_check(config.grid, n, config.c);
  if (!spacing.spacing_ok)
    out.push_back(fmt::format(
      "grid spacing {:.4g} is below c / log n = {:.4g}", spacing.min_spacing,
      spacing.required));
  if (!spacing.count_ok)
    out.push_back(fmt::format(
      "grid has {} intervals, more than (s_N - s_1) / d_n = {:.4g}",
      config.grid.size() - 1, spacing.max_intervals));
  if (config.c <= 2.0 * config.beta_prime)
    out.push_back(fmt::format("c = {} is not above 2 beta' = {}", config.c,
                              2.0 * config.beta_prime));
  if (const auto* f = std::get_if<FormulaPoints>(&config.eval_points)) {
    double need = config.beta_prime +
      config.grid.highest() * config.grid.highest() / (2.0 * config.grid.lowest());
    if (f->delta <= need)
      out.push_back(fmt::format(
        "delta = {} does not exceed beta' + s_N^2 / (2 s_1) = {:.4g}", f->delta,
        need));
  }
  std::vector<double> points;
  try {
    points = resolve_eval_points(config, n);
  } catch (const NumericalError& e) {
    out.push_back(e.what());
    return out;
  }
  for (std::size_t k = 0; k < points.size(); ++k) {
    double u = points[k];
    if (envelope(config, k, u) >= reference_cf(config.grid, k, u))
      out.push_back(fmt::format(
        "envelope at u = {:.4g} (s = {}) is not below the reference cf", u,
        config.grid[k]));
  }
  return out;
}

} // namespace deconv
