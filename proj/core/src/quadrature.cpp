// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#include "deconv/quadrature.hpp"

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include <fmt/format.h>

#include "deconv/error.hpp"

namespace deconv {

namespace {

// Legendre P_n and its derivative at t.
std::pair<double, double>
legendre_with_derivative(std::size_t n, double t)
{
  double p0 = 1.0;
  double p1 = t;
  if (n == 0)
    return { 1.0, 0.0 };
  for (std::size_t k = 2; k <= n; ++k) {
    double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  double dp = n * (t * p1 - p0) / (t * t - 1.0);
  return { p1, dp };
}

std::unique_ptr<GaussLegendre>
build_rule(std::size_t n)
{
  auto rule = std::make_unique<GaussLegendre>();
  rule->nodes.resize(n);
  rule->weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = legendre_with_derivative(n, t);
      double dt = p / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16)
        break;
    }
    auto [p, dp] = legendre_with_derivative(n, t);
    (void)p;
    double w = 2.0 / ((1.0 - t * t) * dp * dp);
    rule->nodes[i] = -t;
    rule->nodes[n - 1 - i] = t;
    rule->weights[i] = w;
    rule->weights[n - 1 - i] = w;
  }
  if (n % 2 == 1)
    rule->nodes[n / 2] = 0.0;

  rule->to_legendre.assign(n * n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    double t = rule->nodes[m];
    double p0 = 1.0;
    double p1 = t;
    for (std::size_t k = 0; k < n; ++k) {
      double pk;
      if (k == 0)
        pk = 1.0;
      else if (k == 1)
        pk = t;
      else {
        pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      rule->to_legendre[k * n + m] = (2.0 * k + 1.0) / 2.0 * rule->weights[m] * pk;
    }
  }
  return rule;
}

} // namespace

const GaussLegendre&
gauss_legendre(std::size_t order)
{
  if (order == 0 || order > 128)
    throw InvalidArgument(
      fmt::format("Gauss-Legendre order {} outside 1..128", order));
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<GaussLegendre>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot)
    slot = build_rule(order);
  return *slot;
}

void
spherical_bessel_j(double x, std::span<double> out)
{
  const std::size_t count = out.size();
  if (count == 0)
    return;
  const double ax = std::abs(x);
  // odd orders flip sign with x
  auto apply_parity = [&] {
    if (x < 0.0)
      for (std::size_t k = 1; k < count; k += 2)
        out[k] = -out[k];
  };

  if (ax < 1e-4) {
    // j_k(x) = x^k / (2k+1)!! * (1 - x^2 / (2(2k+3)) + ...)
    double term = 1.0;
    for (std::size_t k = 0; k < count; ++k) {
      if (k > 0)
        term *= ax / (2.0 * k + 1.0);
      out[k] = term * (1.0 - ax * ax / (2.0 * (2.0 * k + 3.0)));
    }
    apply_parity();
    return;
  }

  const double s = std::sin(ax);
  const double c = std::cos(ax);
  const double j0 = s / ax;
  const double j1 = s / (ax * ax) - c / ax;

  if (ax >= static_cast<double>(count)) {
    out[0] = j0;
    if (count > 1)
      out[1] = j1;
    for (std::size_t k = 1; k + 1 < count; ++k)
      out[k + 1] = (2.0 * k + 1.0) / ax * out[k] - out[k - 1];
    apply_parity();
    return;
  }

  // Miller's downward recurrence, normalised with sum (2k+1) j_k^2 = 1.
  const std::size_t start = count + 24 + static_cast<std::size_t>(ax);
  double next = 0.0;
  double cur = 1.0;
  double sumsq = (2.0 * start + 1.0) * cur * cur;
  for (std::size_t k = start; k >= 1; --k) {
    double prev = (2.0 * k + 1.0) / ax * cur - next;
    next = cur;
    cur = prev;
    if (k - 1 < count)
      out[k - 1] = cur;
    sumsq += (2.0 * (k - 1) + 1.0) * cur * cur;
    if (std::abs(cur) > 1e100) {
      constexpr double shrink = 1e-100;
      cur *= shrink;
      next *= shrink;
      sumsq *= shrink * shrink;
      for (std::size_t i = k - 1; i < count; ++i)
        out[i] *= shrink;
    }
  }
  double norm = 1.0 / std::sqrt(sumsq);
  // fix the overall sign with whichever of j0, j1 is better conditioned
  double ref = std::abs(j0) >= std::abs(j1) ? j0 : j1;
  double got = std::abs(j0) >= std::abs(j1) ? out[0] : out[1];
  if ((ref < 0.0) != (got < 0.0))
    norm = -norm;
  for (std::size_t k = 0; k < count; ++k)
    out[k] *= norm;
  apply_parity();
}

std::vector<Panel>
make_panels(double upper,
            std::size_t min_panels,
            double max_width,
            std::size_t graded)
{
  if (!(upper > 0.0) || !std::isfinite(upper))
    throw InvalidArgument("integration range must be positive and finite");
  if (!(max_width > 0.0))
    throw InvalidArgument("panel width must be positive");
  double needed = std::ceil(upper / max_width);
  if (needed > 5e7)
    throw QuadratureError(fmt::format(
      "panel count {:.3g} needed to resolve the integrand is too large",
      needed));
  std::size_t count = std::max<std::size_t>(
    std::max<std::size_t>(min_panels, 1), static_cast<std::size_t>(needed));
  double width = upper / static_cast<double>(count);

  std::vector<Panel> panels;
  panels.reserve(count + graded);
  if (graded > 0) {
    double lo = 0.0;
    double hi = width * std::ldexp(1.0, -static_cast<int>(graded - 1));
    for (std::size_t g = 0; g < graded; ++g) {
      panels.push_back({ lo, hi });
      lo = hi;
      hi *= 2.0;
    }
    panels.back().hi = width;
  } else {
    panels.push_back({ 0.0, width });
  }
  for (std::size_t i = 1; i < count; ++i) {
    double lo = width * static_cast<double>(i);
    double hi = (i + 1 == count) ? upper : width * static_cast<double>(i + 1);
    panels.push_back({ lo, hi });
  }
  return panels;
}

PanelRule::PanelRule(std::vector<Panel> panels, std::size_t order)
  : panels_(std::move(panels))
  , order_(order)
{
  if (panels_.empty())
    throw InvalidArgument("panel rule needs at least one panel");
  const auto& gl = gauss_legendre(order);
  nodes_.reserve(panels_.size() * order);
  weights_.reserve(panels_.size() * order);
  for (const auto& p : panels_) {
    double c = 0.5 * (p.lo + p.hi);
    double r = 0.5 * (p.hi - p.lo);
    for (std::size_t m = 0; m < order; ++m) {
      nodes_.push_back(c + r * gl.nodes[m]);
      weights_.push_back(r * gl.weights[m]);
    }
  }
}

double
PanelRule::integrate(std::span<const double> values) const
{
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    sum += weights_[i] * values[i];
  return sum;
}

std::complex<double>
PanelRule::integrate(std::span<const std::complex<double>> values) const
{
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    sum += weights_[i] * values[i];
  return sum;
}

PanelSeries::PanelSeries(const PanelRule& rule,
                         std::span<const std::complex<double>> values)
  : panels_(rule.panels().begin(), rule.panels().end())
  , order_(rule.order())
{
  if (values.size() != rule.size())
    throw InvalidArgument("sample count does not match the panel rule");
  const auto& gl = gauss_legendre(order_);
  coeffs_.assign(panels_.size() * order_, 0.0);
  for (std::size_t p = 0; p < panels_.size(); ++p) {
    auto v = values.subspan(p * order_, order_);
    for (std::size_t k = 0; k < order_; ++k) {
      std::complex<double> a = 0.0;
      for (std::size_t m = 0; m < order_; ++m)
        a += gl.to_legendre[k * order_ + m] * v[m];
      coeffs_[p * order_ + k] = a;
    }
  }
  auto w = rule.weights();
  for (std::size_t i = 0; i < values.size(); ++i)
    l1_ += w[i] * std::abs(values[i]);
}

std::complex<double>
PanelSeries::transform(double omega) const
{
  // \int_{-1}^{1} P_k(t) e^{i a t} dt = 2 i^k j_k(a)
  static constexpr std::array<std::complex<double>, 4> ipow = {
    std::complex<double>(1, 0), std::complex<double>(0, 1),
    std::complex<double>(-1, 0), std::complex<double>(0, -1)
  };
  std::array<double, 128> jk{};
  std::span<double> j(jk.data(), order_);
  std::complex<double> total = 0.0;
  for (std::size_t p = 0; p < panels_.size(); ++p) {
    double c = 0.5 * (panels_[p].lo + panels_[p].hi);
    double r = 0.5 * (panels_[p].hi - panels_[p].lo);
    std::complex<double> sum = 0.0;
    if (omega == 0.0) {
      sum = 2.0 * coeffs_[p * order_];
    } else {
      spherical_bessel_j(omega * r, j);
      for (std::size_t k = 0; k < order_; ++k)
        sum += coeffs_[p * order_ + k] * ipow[k % 4] * (2.0 * j[k]);
    }
    double phase = omega * c;
    total += r * std::complex<double>(std::cos(phase), std::sin(phase)) * sum;
  }
  return total;
}

} // namespace deconv
