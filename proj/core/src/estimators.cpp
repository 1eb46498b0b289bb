// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#include "deconv/estimators.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "deconv/error.hpp"
#include "spectral.hpp"

namespace deconv {

namespace {

constexpr double pi = std::numbers::pi;

void
check_index_and_bandwidth(double s, double h)
{
  if (!(s > 0.0 && s <= 2.0))
    throw InvalidArgument(fmt::format("s = {} outside (0, 2]", s));
  if (!(h > 0.0) || !std::isfinite(h))
    throw InvalidArgument(fmt::format("bandwidth h = {} must be > 0", h));
}

std::vector<detail::Integral>
series_transforms(const PanelRule& rule,
                  const std::function<std::complex<double>(double)>& p,
                  std::span<const double> omegas)
{
  auto nodes = rule.nodes();
  std::vector<std::complex<double>> values(nodes.size());
  for (std::size_t m = 0; m < nodes.size(); ++m)
    values[m] = p(nodes[m]);
  PanelSeries series(rule, values);
  std::vector<detail::Integral> out(omegas.size());
  for (std::size_t i = 0; i < omegas.size(); ++i)
    out[i] = { series.transform(omegas[i]).real(), series.l1_norm() };
  return out;
}

} // namespace

void
BandwidthSpec::validate() const
{
  if (!(beta_bar > 0.0) || !std::isfinite(beta_bar))
    throw InvalidArgument(fmt::format("beta_bar = {} must be > 0", beta_bar));
  if (!(beta_lower > 0.0) || !(beta_bar > beta_lower))
    throw InvalidArgument(fmt::format(
      "need beta_bar > beta_lower > 0 (got {} and {})", beta_bar, beta_lower));
}

void
QuadratureSpec::validate() const
{
  if (nodes < 16)
    throw InvalidArgument(
      fmt::format("quadrature needs at least 16 nodes (got {})", nodes));
  if (!(refine_tol > 0.0))
    throw InvalidArgument("refine_tol must be > 0");
  if (max_refinements < 1 || max_refinements > 12)
    throw InvalidArgument("max_refinements must be in 1..12");
}

double
bandwidth(const BandwidthSpec& spec, std::size_t n, double s)
{
  return bandwidth_log_n(spec, std::log(static_cast<double>(n)), s);
}

double
bandwidth_log_n(const BandwidthSpec& spec, double log_n, double s)
{
  spec.validate();
  if (!(s > 0.0 && s <= 2.0))
    throw InvalidArgument(fmt::format("s = {} outside (0, 2]", s));
  const double n = std::exp(log_n);
  if (!(log_n > 1.0))
    throw SampleSizeError(
      fmt::format("n = {:.6g} too small: log log n is undefined", n));
  double exponent = spec.variant == BandwidthVariant::Density
    ? (spec.beta_bar - s + 0.5) / s
    : 2.0 * spec.beta_bar / s;
  double base = log_n / 2.0 - exponent * std::log(log_n);
  if (!(base > 0.0))
    throw SampleSizeError(fmt::format(
      "n = {:.6g} too small for the {} bandwidth at s = {}, beta_bar = {} (base "
      "{:.4g} <= 0)",
      n, spec.variant == BandwidthVariant::Density ? "density" : "test", s,
      spec.beta_bar, base));
  return std::pow(base, -1.0 / s);
}

double
deconv_kernel_cf(double u, double s, double h)
{
  double a = std::abs(u);
  if (a > 1.0)
    return 0.0;
  return std::exp(std::pow(a / h, s));
}

DensityEstimate
density_with_bandwidth(const Sample& sample,
                       double s,
                       double h,
                       const QuadratureSpec& quad,
                       std::span<const double> xs)
{
  check_index_and_bandwidth(s, h);
  quad.validate();
  const double upper = 1.0 / h;
  detail::check_magnitude(1.0, s, upper, sample.size());
  auto split = detail::split_points(sample.values(), upper, quad);
  auto refined = detail::refine(
    [&](int level) {
      return detail::Spectrum(split, s, upper, quad, level).linear_sums(xs);
    },
    quad);

  DensityEstimate est;
  est.xs.assign(xs.begin(), xs.end());
  est.h = h;
  est.s_hat = s;
  est.converged = refined.converged;
  const double norm = pi * static_cast<double>(sample.size());
  for (const auto& v : refined.values)
    est.values.push_back(v.value / norm);
  return est;
}

DensityEstimate
estimate_density(const Sample& sample,
                 double s_hat,
                 const BandwidthSpec& spec,
                 const QuadratureSpec& quad,
                 std::span<const double> xs)
{
  double h = bandwidth(spec, sample.size(), s_hat);
  return density_with_bandwidth(sample, s_hat, h, quad, xs);
}

DensityEstimate
density_from_cf(const CharFn& observation_cf,
                double s,
                double h,
                const QuadratureSpec& quad,
                std::span<const double> xs)
{
  check_index_and_bandwidth(s, h);
  quad.validate();
  const double upper = 1.0 / h;
  detail::check_magnitude(1.0, s, upper, 1);
  std::vector<double> omegas(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    omegas[i] = -xs[i];
  auto integrand = [&](double u) {
    return std::exp(std::pow(u, s)) * observation_cf(u);
  };
  auto refined = detail::refine(
    [&](int level) {
      return series_transforms(detail::coarse_rule(upper, s, quad, level),
                               integrand, omegas);
    },
    quad);

  DensityEstimate est;
  est.xs.assign(xs.begin(), xs.end());
  est.h = h;
  est.s_hat = s;
  est.converged = refined.converged;
  for (const auto& v : refined.values)
    est.values.push_back(v.value / pi);
  return est;
}

double
pair_kernel(double d, double s, double h, const QuadratureSpec& quad)
{
  check_index_and_bandwidth(s, h);
  quad.validate();
  const double upper = 1.0 / h;
  detail::check_magnitude(2.0, s, upper, 1);
  const double omega[1] = { std::abs(d) };
  auto integrand = [s](double u) {
    return std::complex<double>(std::exp(2.0 * std::pow(u, s)));
  };
  auto refined = detail::refine(
    [&](int level) {
      return series_transforms(detail::coarse_rule(upper, s, quad, level),
                               integrand, omega);
    },
    quad);
  if (!refined.converged[0])
    throw QuadratureError(fmt::format(
      "pair kernel at d = {} did not converge to {}", d, quad.refine_tol));
  return refined.values[0].value / pi;
}

double
quad_functional_with_bandwidth(const Sample& sample,
                               double s,
                               double h,
                               const QuadratureSpec& quad)
{
  check_index_and_bandwidth(s, h);
  quad.validate();
  const std::size_t n = sample.size();
  if (n < 2)
    throw InvalidArgument("the U-statistic needs at least two observations");
  const double upper = 1.0 / h;
  detail::check_magnitude(2.0, s, upper, n);
  auto split = detail::split_points(sample.values(), upper, quad);
  auto refined = detail::refine(
    [&](int level) {
      return std::vector<detail::Integral>{
        detail::Spectrum(split, s, upper, quad, level).pair_sum()
      };
    },
    quad);
  if (!refined.converged[0])
    throw QuadratureError(fmt::format(
      "quadratic functional did not converge to {} after {} doublings",
      quad.refine_tol, quad.max_refinements));
  const double nn = static_cast<double>(n);
  return refined.values[0].value / (pi * nn * (nn - 1.0));
}

double
quad_functional(const Sample& sample,
                double s_hat,
                const BandwidthSpec& spec,
                const QuadratureSpec& quad)
{
  double h = bandwidth(spec, sample.size(), s_hat);
  return quad_functional_with_bandwidth(sample, s_hat, h, quad);
}

} // namespace deconv
