// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#pragma once

// Shared machinery for the kernel-weighted Fourier integrals of the
// estimators and the test statistic. Not part of the installed interface.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "deconv/estimators.hpp"
#include "deconv/quadrature.hpp"

namespace deconv::detail {

/// An integral together with the absolute mass it was computed from.
struct Integral
{
  double value = 0.0;
  double scale = 0.0;
};

/// Points sorted and split into a core around the median, whose pairwise
/// spread the Gauss panels resolve, and far outliers handled one by one with
/// frequency-independent Filon transforms.
struct PointSplit
{
  double center = 0.0;
  double radius = 0.0;
  std::vector<double> core;
  std::vector<double> far;
};

PointSplit split_points(std::span<const double> values,
                        double upper,
                        const QuadratureSpec& quad);

/// Panel layouts for [0, upper] at a refinement level.
PanelRule coarse_rule(double upper, double s, const QuadratureSpec& quad, int level);
PanelRule core_rule(double upper,
                    double s,
                    double radius,
                    const QuadratureSpec& quad,
                    int level);

/// Throws OverflowError when e^{a upper^s} n^2 leaves the double range.
void check_magnitude(double a, double s, double upper, std::size_t n);

/// One refinement level's view of a point set.
class Spectrum
{
public:
  Spectrum(const PointSplit& split,
           double s,
           double upper,
           const QuadratureSpec& quad,
           int level);

  /// sum_{k != j} \int_0^U e^{2u^s} cos(u (y_k - y_j)) du
  Integral pair_sum() const;

  /// For each shift x: Re sum_j \int_0^U e^{u^s} g(u) e^{iu(y_j - x)} du.
  /// g defaults to 1.
  std::vector<Integral> linear_sums(
    std::span<const double> shifts,
    const std::function<std::complex<double>(double)>& g = {}) const;

private:
  const PointSplit& split_;
  double s_;
  PanelRule core_;
  PanelRule coarse_;
  std::vector<std::complex<double>> core_sums_;
};

/// Runs `eval(level)` at increasing levels until two successive results
/// agree within tol * scale for every entry. Returns the finest results and
/// a convergence flag per entry.
struct Refined
{
  std::vector<Integral> values;
  std::vector<bool> converged;
};
Refined refine(const std::function<std::vector<Integral>(int)>& eval,
               const QuadratureSpec& quad);

} // namespace deconv::detail
