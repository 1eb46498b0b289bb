// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#include "deconv/gof.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "deconv/error.hpp"
#include "deconv/seed.hpp"
#include "parallel.hpp"
#include "spectral.hpp"

namespace deconv {

namespace {

constexpr double pi = std::numbers::pi;

double
parse_double(std::string_view text, std::string_view what)
{
  double v = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(v))
    throw InvalidArgument(fmt::format("bad {} '{}'", what, text));
  return v;
}

// Null for the standardized observations Y / gamma.
NullSpec
rescaled(const NullSpec& null, double gamma)
{
  if (gamma == 1.0)
    return null;
  NullSpec out = null;
  out.f0_cf = [cf = null.f0_cf, gamma](double u) { return cf(u / gamma); };
  if (null.f0_l2sq)
    out.f0_l2sq = *null.f0_l2sq * gamma;
  out.model.reset();
  return out;
}

} // namespace

NullSpec
NullSpec::from_model(const SignalModel& model)
{
  NullSpec null;
  null.f0_cf = [model](double u) { return signal_cf(model, u); };
  null.f0_l2sq = model.l2_norm_sq();
  null.model = model;
  return null;
}

NullSpec
NullSpec::parse(std::string_view name, double pre_scale)
{
  if (name == "laplace5")
    return from_model(SignalModel::laplace5(pre_scale));
  if (name == "gamma")
    return from_model(SignalModel::chi3(pre_scale));
  constexpr std::string_view prefix = "shifted:";
  if (name.starts_with(prefix)) {
    double offset = parse_double(name.substr(prefix.size()), "shift offset");
    return from_model(SignalModel::laplace5(pre_scale, offset));
  }
  throw InvalidArgument(fmt::format(
    "unknown null '{}' (expected laplace5, gamma or shifted:<offset>)", name));
}

void
NullSpec::validate() const
{
  if (!f0_cf)
    throw InvalidArgument("null characteristic function is empty");
  if (f0_l2sq && !(*f0_l2sq >= 0.0 && std::isfinite(*f0_l2sq)))
    throw InvalidArgument("null L2 norm must be finite and >= 0");
  if (diagnostic)
    return;
  auto at0 = f0_cf(0.0);
  if (std::abs(at0 - std::complex<double>(1.0, 0.0)) > 1e-9)
    throw InvalidArgument(fmt::format(
      "null cf at 0 is {}{:+}i, a characteristic function must equal 1 there",
      at0.real(), at0.imag()));
  for (double u : { 0.1, 1.0, 10.0, 100.0 }) {
    auto v = f0_cf(u);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) ||
        std::abs(v) > 1.0 + 1e-9)
      throw InvalidArgument(fmt::format("null cf has modulus > 1 at u = {}", u));
  }
}

double
threshold_sq(std::size_t n, double s_hat, double beta_bar)
{
  if (n < 2)
    throw SampleSizeError("threshold needs n >= 2");
  return threshold_sq_log_n(std::log(static_cast<double>(n)), s_hat, beta_bar);
}

double
threshold_sq_log_n(double log_n, double s_hat, double beta_bar)
{
  if (!(log_n > 0.0))
    throw SampleSizeError("threshold needs log n > 0");
  if (!(s_hat > 0.0 && s_hat <= 2.0))
    throw InvalidArgument(fmt::format("s = {} outside (0, 2]", s_hat));
  if (!(beta_bar > 0.0))
    throw InvalidArgument("beta_bar must be > 0");
  double half_log = log_n / 2.0;
  return std::pow(half_log, -2.0 * beta_bar / s_hat);
}

double
test_statistic(const Sample& sample,
               const NullSpec& null,
               double s_hat,
               const BandwidthSpec& spec,
               const QuadratureSpec& quad)
{
  null.validate();
  spec.validate();
  quad.validate();
  if (spec.variant != BandwidthVariant::Test)
    throw InvalidArgument("the test statistic uses the Test bandwidth variant");
  const std::size_t n = sample.size();
  if (n < 2)
    throw InvalidArgument("the test statistic needs at least two observations");
  const double h = bandwidth(spec, n, s_hat);
  const double upper = 1.0 / h;
  detail::check_magnitude(2.0, s_hat, upper, n);

  const double l2sq = null.f0_l2sq ? *null.f0_l2sq : l2_norm_sq(null.f0_cf);

  auto split = detail::split_points(sample.values(), upper, quad);
  const double zero = 0.0;
  auto conj_null = [&](double u) { return std::conj(null.f0_cf(u)); };
  auto refined = detail::refine(
    [&](int level) {
      detail::Spectrum spectrum(split, s_hat, upper, quad, level);
      auto lin = spectrum.linear_sums(std::span(&zero, 1), conj_null);
      return std::vector<detail::Integral>{ spectrum.pair_sum(), lin[0] };
    },
    quad);
  if (!refined.converged[0] || !refined.converged[1])
    throw QuadratureError(fmt::format(
      "test statistic did not converge to {} after {} doublings",
      quad.refine_tol, quad.max_refinements));

  const double nn = static_cast<double>(n);
  double t_hat = refined.values[0].value / (pi * nn * (nn - 1.0));
  double c_sum = refined.values[1].value / pi;
  return t_hat - 2.0 * c_sum / nn + l2sq;
}

TestOutcome
run_test(const Sample& sample,
         const NullSpec& null,
         const TestConfig& config,
         double c_star)
{
  if (!(c_star >= 0.0))
    throw InvalidArgument("c_star must be >= 0 (may be +inf)");
  if (!(config.gamma > 0.0) || !std::isfinite(config.gamma))
    throw InvalidArgument("noise scale gamma must be > 0");
  null.validate();
  const Sample standardized =
    config.gamma == 1.0 ? sample : sample.standardized(config.gamma);
  const NullSpec scaled_null = rescaled(null, config.gamma);

  TestOutcome out;
  out.c_star = c_star;
  out.s_hat = select_index(standardized, config.selector).s_hat;
  out.h = bandwidth(config.bandwidth, sample.size(), out.s_hat);
  out.statistic = test_statistic(
    standardized, scaled_null, out.s_hat, config.bandwidth, config.quad);
  out.threshold_sq =
    threshold_sq(sample.size(), out.s_hat, config.bandwidth.beta_bar);
  out.reject = std::isfinite(c_star) && out.ratio() > c_star;
  return out;
}

double
empirical_quantile(std::vector<double> values, double p)
{
  if (values.empty())
    throw InvalidArgument("quantile of an empty set");
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidArgument(fmt::format("quantile level {} outside [0, 1]", p));
  std::sort(values.begin(), values.end());
  double pos = p * static_cast<double>(values.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  std::size_t hi = std::min(lo + 1, values.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<double>
null_ratios(const NullSpec& null,
            const NoiseModel& noise,
            std::size_t n,
            std::size_t reps,
            std::uint64_t seed,
            const TestConfig& config,
            unsigned workers)
{
  null.validate();
  if (!null.model)
    throw InvalidArgument("calibration needs a null with a sampler");
  if (noise.gamma() != config.gamma)
    throw InvalidArgument("noise model gamma differs from the test config");
  std::vector<double> ratios(reps, std::numeric_limits<double>::quiet_NaN());
  detail::parallel_for(reps, workers, [&](std::size_t r) {
    try {
      Sample y = simulate_observations(*null.model, noise, n, derive_seed(seed, r));
      ratios[r] = run_test(y, null, config, std::numeric_limits<double>::infinity())
                    .ratio();
    } catch (const NumericalError&) {
    }
  });
  return ratios;
}

double
calibrate_c_star(const NullSpec& null,
                 const NoiseModel& noise,
                 std::size_t n,
                 double level,
                 std::size_t reps,
                 std::uint64_t seed,
                 const TestConfig& config,
                 unsigned workers)
{
  if (!(level > 0.0 && level < 1.0))
    throw InvalidArgument(fmt::format("level {} outside (0, 1)", level));
  if (reps < 50)
    throw InvalidArgument("calibration needs at least 50 replications");
  auto ratios = null_ratios(null, noise, n, reps, seed, config, workers);
  std::erase_if(ratios, [](double v) { return std::isnan(v); });
  if (ratios.size() * 2 < reps)
    throw NumericalError(fmt::format(
      "only {} of {} calibration replications succeeded", ratios.size(), reps));
  return empirical_quantile(std::move(ratios), 1.0 - level);
}

} // namespace deconv
