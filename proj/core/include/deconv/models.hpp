// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "deconv/sample.hpp"

namespace deconv {

using CharFn = std::function<std::complex<double>(double)>;

/// Symmetric stable noise with characteristic function exp(-|gamma u|^s).
class NoiseModel
{
public:
  /// Requires 0 < s <= 2 and gamma > 0.
  NoiseModel(double s, double gamma = 1.0);

  double s() const noexcept { return s_; }
  double gamma() const noexcept { return gamma_; }

private:
  double s_;
  double gamma_;
};

/// Sum of `count` i.i.d. standard Laplace variables, cf (1 + u^2)^{-count}.
struct LaplaceSum
{
  int count = 5;
};

/// Gamma(shape, scale), cf (1 - i scale u)^{-shape}.
struct GammaLaw
{
  double shape = 1.5;
  double scale = 2.0;
};

/// Any law given by its characteristic function and a seeded sampler.
struct CustomLaw
{
  std::string name;
  CharFn cf;
  std::function<std::vector<double>(std::size_t n, std::uint64_t seed)> sampler;
  /// Closed-form \int f^2 when known.
  std::optional<double> l2_norm_sq;
};

/// Signal density descriptor. The variable is pre_scale * X + shift where X
/// follows `kind`, so the cf is e^{i u shift} Phi_X(pre_scale u).
class SignalModel
{
public:
  using Kind = std::variant<LaplaceSum, GammaLaw, CustomLaw>;

  explicit SignalModel(Kind kind, double pre_scale = 1.0, double shift = 0.0);

  /// Sum of five standard Laplace variables (standard deviation sqrt(10)).
  static SignalModel laplace5(double pre_scale = 1.0, double shift = 0.0);
  /// Gamma(3/2, scale 2), i.e. chi-square with 3 degrees of freedom.
  static SignalModel chi3(double pre_scale = 1.0, double shift = 0.0);

  const Kind& kind() const noexcept { return kind_; }
  double pre_scale() const noexcept { return pre_scale_; }
  double shift() const noexcept { return shift_; }

  /// "laplace5", "gamma", or the custom name; shifted models get
  /// ":shift=<value>" appended.
  std::string name() const;

  /// (1/2pi) \int |cf|^2 = \int f^2 when a closed form exists.
  std::optional<double> l2_norm_sq() const;

  /// Standard deviation when finite and known in closed form.
  std::optional<double> stddev() const;

private:
  Kind kind_;
  double pre_scale_;
  double shift_;
};

/// exp(-|gamma u|^s)
double noise_cf(const NoiseModel& model, double u);

/// E[e^{iuX}] for the scaled (and shifted) signal.
std::complex<double> signal_cf(const SignalModel& model, double u);

/// i.i.d. symmetric stable draws (Chambers-Mallows-Stuck; exact Gaussian and
/// Cauchy branches at s = 2 and s = 1). Deterministic given seed.
Sample sample_stable(const NoiseModel& model, std::size_t n, std::uint64_t seed);

Sample sample_signal(const SignalModel& model, std::size_t n, std::uint64_t seed);

/// Y_j = X_j + eps_j. The signal uses stream 0 and the noise stream 1 of
/// `seed` (see derive_seed).
Sample simulate_observations(const SignalModel& signal,
                             const NoiseModel& noise,
                             std::size_t n,
                             std::uint64_t seed);

/// (1/2pi) \int_{|u| <= cutoff} |cf(u)|^2 |u|^{2 beta} du by composite
/// Gauss-Legendre quadrature with `nodes` points. cutoff may be +infinity;
/// then the range is extended by doubling until the contribution of the
/// newest slab is negligible, and QuadratureError is thrown if it never is.
double sobolev_seminorm(const CharFn& cf,
                        double beta,
                        double cutoff,
                        std::size_t nodes = 512);

/// (1/2pi) \int_R |cf(u)|^2 du, the squared L2 norm of the density, with
/// the same tail extension as sobolev_seminorm at infinite cutoff.
double l2_norm_sq(const CharFn& cf, std::size_t nodes = 512);

} // namespace deconv
