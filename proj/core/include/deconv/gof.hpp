// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "deconv/estimators.hpp"
#include "deconv/models.hpp"
#include "deconv/sample.hpp"
#include "deconv/selector.hpp"

namespace deconv {

/// Null hypothesis f = f0, described through the cf of f0.
struct NullSpec
{
  CharFn f0_cf;
  /// \int f0^2 when known in closed form; otherwise integrated from f0_cf.
  std::optional<double> f0_l2sq;
  /// Sampler for simulating H0 data (needed by calibrate_c_star).
  std::optional<SignalModel> model;
  /// Skips the cf(0) = 1 check; only for formal substitutions in tests.
  bool diagnostic = false;

  static NullSpec from_model(const SignalModel& model);

  /// "laplace5", "gamma", or "shifted:<offset>" (the Laplace signal moved
  /// by offset), all with the given pre_scale.
  static NullSpec parse(std::string_view name, double pre_scale = 0.1);

  /// f0_cf(0) must be 1 and |f0_cf| <= 1 at a few probe frequencies.
  void validate() const;
};

struct TestConfig
{
  SelectorConfig selector = SelectorConfig::simulation_default();
  BandwidthSpec bandwidth = BandwidthSpec::test();
  QuadratureSpec quad{};
  /// Known noise scale; observations are divided by it first.
  double gamma = 1.0;
};

struct TestOutcome
{
  double statistic = 0.0;
  double threshold_sq = 0.0;
  double c_star = 0.0;
  bool reject = false;
  double s_hat = 0.0;
  double h = 0.0;

  double ratio() const noexcept { return std::abs(statistic) / threshold_sq; }
};

/// (log n / 2)^{-2 beta_bar / s}
double threshold_sq(std::size_t n, double s_hat, double beta_bar);
double threshold_sq_log_n(double log_n, double s_hat, double beta_bar);

/// Centred U-statistic estimating ||f - f0||^2, computed as
/// T_n - (2/n) sum_j c_j + ||f0||^2 with the Test-variant bandwidth.
double test_statistic(const Sample& sample,
                      const NullSpec& null,
                      double s_hat,
                      const BandwidthSpec& spec,
                      const QuadratureSpec& quad);

/// Selects s, then rejects when |T0| / t^2 > c_star. c_star may be +inf.
/// With config.gamma != 1 the statistic refers to Y / gamma and the null
/// rescaled to match.
TestOutcome run_test(const Sample& sample,
                     const NullSpec& null,
                     const TestConfig& config,
                     double c_star);

/// Type-7 (linear interpolation) empirical quantile, p in [0, 1].
double empirical_quantile(std::vector<double> values, double p);

/// (1 - level) quantile of |T0| / t^2 over `reps` simulated H0 samples of
/// size n. Replication r uses derive_seed(seed, r). Replications that fail
/// numerically are skipped; NumericalError if fewer than half succeed.
double calibrate_c_star(const NullSpec& null,
                        const NoiseModel& noise,
                        std::size_t n,
                        double level,
                        std::size_t reps,
                        std::uint64_t seed,
                        const TestConfig& config = {},
                        unsigned workers = 0);

/// The null ratios themselves, in replication order (NaN for failures).
std::vector<double> null_ratios(const NullSpec& null,
                                const NoiseModel& noise,
                                std::size_t n,
                                std::size_t reps,
                                std::uint64_t seed,
                                const TestConfig& config = {},
                                unsigned workers = 0);

} // namespace deconv
