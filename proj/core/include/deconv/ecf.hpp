// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "deconv/sample.hpp"

namespace deconv {

/// (1/n) sum_j exp(-i u Y_j), accumulated with compensated summation.
/// Note the sign: this is the conjugate of E[e^{iuY}].
std::complex<double> ecf(const Sample& sample, double u);

/// |ecf(sample, u)|
double ecf_mod(const Sample& sample, double u);

/// ecf at every frequency of `us`, bit-identical to repeated ecf calls.
std::vector<std::complex<double>> ecf_batch(const Sample& sample,
                                            std::span<const double> us);

/// Unnormalised sums sum_j exp(i u (y_j - center)) over an arbitrary point
/// set, one per frequency. Same compensated accumulation as ecf.
std::vector<std::complex<double>> exponential_sums(
  std::span<const double> points,
  std::span<const double> us,
  double center = 0.0);

} // namespace deconv
