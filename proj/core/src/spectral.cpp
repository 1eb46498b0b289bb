// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "deconv/ecf.hpp"
#include "deconv/error.hpp"

namespace deconv::detail {

namespace {

constexpr std::size_t core_order = 6;
constexpr std::size_t coarse_order = 8;
constexpr std::size_t graded_levels = 16;

std::size_t
graded_for(double s)
{
  return (s == 1.0 || s == 2.0) ? 0 : graded_levels;
}

std::size_t
min_panels(const QuadratureSpec& quad, std::size_t order)
{
  return std::max<std::size_t>(2, (quad.nodes + order - 1) / order);
}

// Width that keeps the phase change of e^{iud}, |d| <= 2 radius, under
// pi/4 per panel.
double
resolving_width(double radius, double upper)
{
  if (radius <= 0.0)
    return upper;
  return std::numbers::pi / (8.0 * radius);
}

} // namespace

PointSplit
split_points(std::span<const double> values,
             double upper,
             const QuadratureSpec& quad)
{
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  PointSplit split;
  split.center = sorted[(n - 1) / 2];

  std::vector<double> dist(n);
  for (std::size_t j = 0; j < n; ++j)
    dist[j] = std::abs(sorted[j] - split.center);
  std::sort(dist.begin(), dist.end(), std::greater<>());

  // Work model in units of one complex exponential: every core point costs
  // one per Gauss node, a far point about four per core panel for its Filon
  // transform plus four per coarse panel for each far partner.
  const double core_min = static_cast<double>(min_panels(quad, core_order));
  const double coarse_panels = static_cast<double>(min_panels(quad, coarse_order));
  auto nodes_for = [&](double radius) {
    double panels =
      std::max(core_min, std::ceil(upper / resolving_width(radius, upper)));
    return panels * static_cast<double>(core_order);
  };
  std::size_t best_far = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f <= n / 2; f = (f == 0 ? 1 : 2 * f)) {
    double radius = dist[f];
    double nodes = nodes_for(radius);
    double fd = static_cast<double>(f);
    double cost = static_cast<double>(n - f) * nodes +
      fd * nodes / static_cast<double>(core_order) * 4.0 +
      0.5 * fd * fd * coarse_panels * 4.0;
    if (cost < best_cost) {
      best_cost = cost;
      best_far = f;
    }
    if (n < 2)
      break;
  }
  split.radius = dist[best_far];
  for (double v : sorted) {
    if (std::abs(v - split.center) > split.radius)
      split.far.push_back(v);
    else
      split.core.push_back(v);
  }
  return split;
}

PanelRule
coarse_rule(double upper, double s, const QuadratureSpec& quad, int level)
{
  std::size_t panels = min_panels(quad, coarse_order) << level;
  return PanelRule(make_panels(upper, panels, upper, graded_for(s)),
                   coarse_order);
}

PanelRule
core_rule(double upper,
          double s,
          double radius,
          const QuadratureSpec& quad,
          int level)
{
  std::size_t panels = min_panels(quad, core_order) << level;
  double width = resolving_width(radius, upper) / std::ldexp(1.0, level);
  return PanelRule(make_panels(upper, panels, width, graded_for(s)),
                   core_order);
}

void
check_magnitude(double a, double s, double upper, std::size_t n)
{
  double log_mag = a * std::pow(upper, s) + 2.0 * std::log(static_cast<double>(n));
  if (!(log_mag < 700.0))
    throw OverflowError(fmt::format(
      "kernel weight e^({} * {:.4g}^{}) overflows at n = {}; the bandwidth "
      "is too small for double precision",
      a, upper, s, n));
}

Spectrum::Spectrum(const PointSplit& split,
                   double s,
                   double upper,
                   const QuadratureSpec& quad,
                   int level)
  : split_(split)
  , s_(s)
  , core_(core_rule(upper, s, split.radius, quad, level))
  , coarse_(coarse_rule(upper, s, quad, level))
  , core_sums_(exponential_sums(split.core, core_.nodes(), split.center))
{
}

Integral
Spectrum::pair_sum() const
{
  auto nodes = core_.nodes();
  auto weights = core_.weights();
  const double n_core = static_cast<double>(split_.core.size());

  double squares = 0.0;
  double diagonal = 0.0;
  std::vector<std::complex<double>> weighted(nodes.size());
  for (std::size_t m = 0; m < nodes.size(); ++m) {
    double w = std::exp(2.0 * std::pow(nodes[m], s_));
    squares += weights[m] * w * std::norm(core_sums_[m]);
    diagonal += weights[m] * w;
    weighted[m] = w * core_sums_[m];
  }
  Integral out;
  out.value = squares - n_core * diagonal;
  out.scale = squares + n_core * diagonal;
  if (split_.far.empty())
    return out;

  PanelSeries cross(core_, weighted);
  for (double y : split_.far)
    out.value += 2.0 * cross.transform(-(y - split_.center)).real();
  out.scale += 2.0 * static_cast<double>(split_.far.size()) * cross.l1_norm();

  auto cnodes = coarse_.nodes();
  std::vector<std::complex<double>> kernel(cnodes.size());
  for (std::size_t m = 0; m < cnodes.size(); ++m)
    kernel[m] = std::exp(2.0 * std::pow(cnodes[m], s_));
  PanelSeries pair(coarse_, kernel);
  const auto& far = split_.far;
  for (std::size_t k = 0; k < far.size(); ++k)
    for (std::size_t l = k + 1; l < far.size(); ++l)
      out.value += 2.0 * pair.transform(far[k] - far[l]).real();
  double nf = static_cast<double>(far.size());
  out.scale += nf * (nf - 1.0) * pair.l1_norm();
  return out;
}

std::vector<Integral>
Spectrum::linear_sums(
  std::span<const double> shifts,
  const std::function<std::complex<double>(double)>& g) const
{
  auto nodes = core_.nodes();
  std::vector<std::complex<double>> weighted(nodes.size());
  for (std::size_t m = 0; m < nodes.size(); ++m) {
    std::complex<double> w = std::exp(std::pow(nodes[m], s_));
    if (g)
      w *= g(nodes[m]);
    weighted[m] = w * core_sums_[m];
  }
  PanelSeries core(core_, weighted);

  std::vector<Integral> out(shifts.size());
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    out[i].value = core.transform(split_.center - shifts[i]).real();
    out[i].scale = core.l1_norm();
  }
  if (split_.far.empty())
    return out;

  auto cnodes = coarse_.nodes();
  std::vector<std::complex<double>> kernel(cnodes.size());
  for (std::size_t m = 0; m < cnodes.size(); ++m) {
    std::complex<double> w = std::exp(std::pow(cnodes[m], s_));
    if (g)
      w *= g(cnodes[m]);
    kernel[m] = w;
  }
  PanelSeries single(coarse_, kernel);
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    for (double y : split_.far)
      out[i].value += single.transform(y - shifts[i]).real();
    out[i].scale +=
      static_cast<double>(split_.far.size()) * single.l1_norm();
  }
  return out;
}

Refined
refine(const std::function<std::vector<Integral>(int)>& eval,
       const QuadratureSpec& quad)
{
  Refined result;
  std::vector<Integral> previous = eval(0);
  result.converged.assign(previous.size(), false);
  for (int level = 1; level <= quad.max_refinements; ++level) {
    std::vector<Integral> current = eval(level);
    bool all = true;
    for (std::size_t i = 0; i < current.size(); ++i) {
      double change = std::abs(current[i].value - previous[i].value);
      double scale = std::max(std::abs(current[i].value), current[i].scale);
      if (change <= quad.refine_tol * scale)
        result.converged[i] = true;
      all = all && result.converged[i];
    }
    previous = std::move(current);
    if (all)
      break;
  }
  result.values = std::move(previous);
  return result;
}

} // namespace deconv::detail
