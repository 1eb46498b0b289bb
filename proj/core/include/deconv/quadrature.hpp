// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace deconv {

/// Gauss-Legendre rule on [-1, 1] together with the matrix that maps
/// samples at the nodes to Legendre coefficients.
struct GaussLegendre
{
  std::vector<double> nodes;
  std::vector<double> weights;
  /// to_legendre[k * order + m] = (2k+1)/2 * w_m * P_k(t_m)
  std::vector<double> to_legendre;

  std::size_t order() const noexcept { return nodes.size(); }
};

/// Cached rule of the given order (1..128).
const GaussLegendre& gauss_legendre(std::size_t order);

/// j_0(x) .. j_{out.size()-1}(x), spherical Bessel functions of the first
/// kind. Accurate across the whole real line, including the region
/// x < order where upward recurrence is unstable.
void spherical_bessel_j(double x, std::span<double> out);

struct Panel
{
  double lo;
  double hi;
};

/// Splits [0, upper] into max(min_panels, ceil(upper / max_width)) equal
/// panels, then replaces the first one by `graded` geometrically shrinking
/// panels toward 0 (for integrands with a u^s singularity at the origin).
std::vector<Panel> make_panels(double upper,
                               std::size_t min_panels,
                               double max_width,
                               std::size_t graded);

/// Composite Gauss-Legendre rule over a panel list. Also serves as the
/// sampling grid for `PanelSeries`.
class PanelRule
{
public:
  PanelRule(std::vector<Panel> panels, std::size_t order);

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const Panel> panels() const noexcept { return panels_; }
  std::size_t order() const noexcept { return order_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double upper() const noexcept { return panels_.back().hi; }

  double integrate(std::span<const double> values) const;
  std::complex<double> integrate(
    std::span<const std::complex<double>> values) const;

private:
  std::vector<Panel> panels_;
  std::size_t order_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Piecewise Legendre expansion of a smooth complex function sampled on a
/// PanelRule. `transform(w)` integrates the expansion against e^{iwu}
/// exactly, so the cost and accuracy do not depend on the frequency w
/// (Filon-type quadrature).
class PanelSeries
{
public:
  PanelSeries(const PanelRule& rule,
              std::span<const std::complex<double>> values);

  /// \int_0^U p(u) e^{i w u} du
  std::complex<double> transform(double omega) const;

  /// \int_0^U |p(u)| du, the natural scale for absolute tolerances.
  double l1_norm() const noexcept { return l1_; }

private:
  std::vector<Panel> panels_;
  std::size_t order_;
  std::vector<std::complex<double>> coeffs_;
  double l1_ = 0.0;
};

} // namespace deconv
