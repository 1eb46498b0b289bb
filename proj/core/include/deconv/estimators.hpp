// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "deconv/models.hpp"
#include "deconv/sample.hpp"

namespace deconv {

enum class BandwidthVariant
{
  Density, ///< exponent (beta_bar - s + 1/2) / s on log log n
  Test     ///< exponent 2 beta_bar / s on log log n
};

struct BandwidthSpec
{
  BandwidthVariant variant = BandwidthVariant::Density;
  double beta_bar = 1.0;
  /// Informational lower smoothness bound.
  double beta_lower = 0.6;

  void validate() const;

  static BandwidthSpec density(double beta_bar = 1.0, double beta_lower = 0.6)
  {
    return { BandwidthVariant::Density, beta_bar, beta_lower };
  }
  static BandwidthSpec test(double beta_bar = 0.4, double beta_lower = 0.2)
  {
    return { BandwidthVariant::Test, beta_bar, beta_lower };
  }
};

/// Composite Gauss-Legendre panels on [0, 1/h]. `nodes` is the minimum
/// node count of the coarsest rule; panels are further narrowed to resolve
/// the spread of the data. Results are refined by doubling the panel count
/// until two successive levels agree to refine_tol, relative to the
/// absolute mass of the integrand.
struct QuadratureSpec
{
  std::size_t nodes = 512;
  double refine_tol = 1e-8;
  /// Maximum number of doublings before giving up.
  int max_refinements = 4;

  void validate() const;
};

/// Spectral cutoff scale: (log n / 2 - e log log n)^{-1/s}, with e from the
/// variant. Throws SampleSizeError when the base is not positive.
double bandwidth(const BandwidthSpec& spec, std::size_t n, double s);
/// Same with log n given directly.
double bandwidth_log_n(const BandwidthSpec& spec, double log_n, double s);

/// Fourier transform of the deconvolution kernel: exp((|u|/h)^s) on
/// |u| <= 1, zero outside.
double deconv_kernel_cf(double u, double s, double h);

struct DensityEstimate
{
  std::vector<double> xs;
  std::vector<double> values;
  /// false where node doubling never settled within refine_tol.
  std::vector<bool> converged;
  double h = 0.0;
  double s_hat = 0.0;
};

/// Spectral evaluation of the deconvolution estimator at each x:
/// (1/2pi) \int_{|u| <= 1/h} e^{|u|^s} conj(ecf(u)) e^{-iux} du.
/// Values are reported as computed, negative ones included.
DensityEstimate density_with_bandwidth(const Sample& sample,
                                       double s,
                                       double h,
                                       const QuadratureSpec& quad,
                                       std::span<const double> xs);

/// Plug-in estimator with the Density-variant bandwidth at this n.
DensityEstimate estimate_density(const Sample& sample,
                                 double s_hat,
                                 const BandwidthSpec& spec,
                                 const QuadratureSpec& quad,
                                 std::span<const double> xs);

/// Same estimator with an analytic observation cf E[e^{iuY}] in place of
/// the sample; isolates quadrature and truncation error from sampling.
DensityEstimate density_from_cf(const CharFn& observation_cf,
                                double s,
                                double h,
                                const QuadratureSpec& quad,
                                std::span<const double> xs);

/// <K_h(. - a), K_h(. - b)> for a - b = d:
/// (1/pi) \int_0^{1/h} e^{2 u^s} cos(u d) du.
double pair_kernel(double d, double s, double h, const QuadratureSpec& quad);

/// U-statistic 2/(n(n-1)) sum_{k<j} pair_kernel(Y_k - Y_j) at bandwidth h.
double quad_functional_with_bandwidth(const Sample& sample,
                                      double s,
                                      double h,
                                      const QuadratureSpec& quad);

/// Estimator of \int f^2 with the bandwidth of `spec` at this n.
double quad_functional(const Sample& sample,
                       double s_hat,
                       const BandwidthSpec& spec,
                       const QuadratureSpec& quad);

} // namespace deconv
