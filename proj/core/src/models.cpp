// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#include "deconv/models.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "deconv/error.hpp"
#include "deconv/quadrature.hpp"
#include "deconv/seed.hpp"

namespace deconv {

namespace {

constexpr double pi = std::numbers::pi;

// Open-interval uniform on (0, 1).
double
open_uniform(std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u;
  do {
    u = unif(rng);
  } while (u <= 0.0);
  return u;
}

double
positive_exponential(std::mt19937_64& rng)
{
  std::exponential_distribution<double> expo(1.0);
  double w;
  do {
    w = expo(rng);
  } while (w <= 0.0);
  return w;
}

std::complex<double>
base_cf(const SignalModel::Kind& kind, double v)
{
  return std::visit(
    [v](const auto& law) -> std::complex<double> {
      using T = std::decay_t<decltype(law)>;
      if constexpr (std::is_same_v<T, LaplaceSum>) {
        return std::pow(1.0 + v * v, -static_cast<double>(law.count));
      } else if constexpr (std::is_same_v<T, GammaLaw>) {
        return std::pow(std::complex<double>(1.0, -law.scale * v), -law.shape);
      } else {
        return law.cf(v);
      }
    },
    kind);
}

// (1/pi) \int_lo^hi |cf|^2 u^{2 beta} du on `panels` Gauss panels.
double
slab_fixed(const CharFn& cf,
              double beta,
              double lo,
              double hi,
              std::size_t panels,
              bool graded)
{
  constexpr std::size_t order = 8;
  auto layout = make_panels(hi - lo, panels, hi - lo, graded ? 20 : 0);
  PanelRule rule(std::move(layout), order);
  auto nodes = rule.nodes();
  auto weights = rule.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    double u = lo + nodes[i];
    double m = std::abs(cf(u));
    double f = m * m;
    if (beta != 0.0)
      f *= std::pow(u, 2.0 * beta);
    sum += weights[i] * f;
  }
  return sum / pi;
}

// slab_fixed with the panel count doubled until two levels agree closely
double
slab_integral(const CharFn& cf,
              double beta,
              double lo,
              double hi,
              std::size_t panels,
              bool graded)
{
  constexpr double tol = 1e-13;
  double v = slab_fixed(cf, beta, lo, hi, panels, graded);
  for (int level = 0; level < 10; ++level) {
    panels *= 2;
    double next = slab_fixed(cf, beta, lo, hi, panels, graded);
    bool done = std::abs(next - v) <= tol * std::abs(next);
    v = next;
    if (done)
      break;
  }
  return v;
}

double
weighted_l2(const CharFn& cf, double beta, double cutoff, std::size_t nodes)
{
  if (nodes < 16)
    throw InvalidArgument("quadrature needs at least 16 nodes");
  std::size_t panels = std::max<std::size_t>(nodes / 8, 2);
  bool graded = std::floor(2.0 * beta) != 2.0 * beta;
  if (std::isfinite(cutoff))
    return slab_integral(cf, beta, 0.0, cutoff, panels, graded);

  double upper = 8.0;
  double total = slab_integral(cf, beta, 0.0, upper, panels, graded);
  double previous = -1.0;
  int stagnant = 0;
  int settled = 0;
  for (int doubling = 0; doubling < 400; ++doubling) {
    double slab = slab_integral(cf, beta, upper, 2.0 * upper, panels, false);
    total += slab;
    upper *= 2.0;
    if (!std::isfinite(total))
      break;
    if (slab == 0.0) {
      if (++settled >= 2)
        return total;
      previous = slab;
      continue;
    }
    if (previous > 0.0) {
      double ratio = slab / previous;
      if (ratio >= 0.999) {
        if (++stagnant >= 5)
          break;
      } else {
        stagnant = 0;
        double tail = slab * ratio / (1.0 - ratio);
        if (tail <= 1e-10 * total) {
          if (++settled >= 2)
            return total;
        } else {
          settled = 0;
        }
      }
    }
    previous = slab;
  }
  throw QuadratureError(fmt::format(
    "weighted L2 integral does not converge (tail does not vanish by "
    "|u| = {:.3g}, beta = {})",
    upper, beta));
}

} // namespace

NoiseModel::NoiseModel(double s, double gamma)
  : s_(s)
  , gamma_(gamma)
{
  if (!(s > 0.0 && s <= 2.0))
    throw InvalidArgument(
      fmt::format("self-similarity index s = {} outside (0, 2]", s));
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw InvalidArgument(fmt::format("noise scale gamma = {} must be > 0", gamma));
}

SignalModel::SignalModel(Kind kind, double pre_scale, double shift)
  : kind_(std::move(kind))
  , pre_scale_(pre_scale)
  , shift_(shift)
{
  if (!(pre_scale > 0.0) || !std::isfinite(pre_scale))
    throw InvalidArgument(fmt::format("pre_scale = {} must be > 0", pre_scale));
  if (!std::isfinite(shift))
    throw InvalidArgument("signal shift must be finite");
  std::visit(
    [](const auto& law) {
      using T = std::decay_t<decltype(law)>;
      if constexpr (std::is_same_v<T, LaplaceSum>) {
        if (law.count < 1)
          throw InvalidArgument("Laplace sum needs a positive count");
      } else if constexpr (std::is_same_v<T, GammaLaw>) {
        if (!(law.shape > 0.0) || !(law.scale > 0.0))
          throw InvalidArgument("Gamma shape and scale must be positive");
      } else {
        if (!law.cf || !law.sampler)
          throw InvalidArgument("custom law needs both a cf and a sampler");
      }
    },
    kind_);
}

SignalModel
SignalModel::laplace5(double pre_scale, double shift)
{
  return SignalModel(LaplaceSum{ 5 }, pre_scale, shift);
}

SignalModel
SignalModel::chi3(double pre_scale, double shift)
{
  return SignalModel(GammaLaw{ 1.5, 2.0 }, pre_scale, shift);
}

std::string
SignalModel::name() const
{
  std::string base = std::visit(
    [](const auto& law) -> std::string {
      using T = std::decay_t<decltype(law)>;
      if constexpr (std::is_same_v<T, LaplaceSum>) {
        return fmt::format("laplace{}", law.count);
      } else if constexpr (std::is_same_v<T, GammaLaw>) {
        if (law.shape == 1.5 && law.scale == 2.0)
          return "gamma";
        return fmt::format("gamma({},{})", law.shape, law.scale);
      } else {
        return law.name;
      }
    },
    kind_);
  if (shift_ != 0.0)
    base += fmt::format(":shift={}", shift_);
  return base;
}

std::optional<double>
SignalModel::l2_norm_sq() const
{
  const double a = pre_scale_;
  return std::visit(
    [a](const auto& law) -> std::optional<double> {
      using T = std::decay_t<decltype(law)>;
      if constexpr (std::is_same_v<T, LaplaceSum>) {
        // \int (1+v^2)^{-p} dv = pi C(2p-2, p-1) / 4^{p-1}, p = 2 count
        double p = 2.0 * law.count;
        double log_binom =
          std::lgamma(2.0 * p - 1.0) - 2.0 * std::lgamma(p);
        return std::exp(log_binom - (p - 1.0) * std::log(4.0)) / (2.0 * a);
      } else if constexpr (std::is_same_v<T, GammaLaw>) {
        if (law.shape <= 0.5)
          return std::nullopt;
        // \int (1+v^2)^{-k} dv = sqrt(pi) Gamma(k - 1/2) / Gamma(k)
        double integral = std::sqrt(pi) *
          std::exp(std::lgamma(law.shape - 0.5) - std::lgamma(law.shape));
        return integral / (2.0 * pi * a * law.scale);
      } else {
        return law.l2_norm_sq;
      }
    },
    kind_);
}

std::optional<double>
SignalModel::stddev() const
{
  const double a = pre_scale_;
  return std::visit(
    [a](const auto& law) -> std::optional<double> {
      using T = std::decay_t<decltype(law)>;
      if constexpr (std::is_same_v<T, LaplaceSum>)
        return a * std::sqrt(2.0 * law.count);
      else if constexpr (std::is_same_v<T, GammaLaw>)
        return a * law.scale * std::sqrt(law.shape);
      else
        return std::nullopt;
    },
    kind_);
}

double
noise_cf(const NoiseModel& model, double u)
{
  return std::exp(-std::pow(std::abs(model.gamma() * u), model.s()));
}

std::complex<double>
signal_cf(const SignalModel& model, double u)
{
  double au = std::abs(u);
  std::complex<double> value = base_cf(model.kind(), model.pre_scale() * au);
  if (model.shift() != 0.0) {
    double phase = au * model.shift();
    value *= std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return u < 0.0 ? std::conj(value) : value;
}

Sample
sample_stable(const NoiseModel& model, std::size_t n, std::uint64_t seed)
{
  if (n == 0)
    throw InvalidArgument("sample size must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<double> out(n);
  const double s = model.s();
  const double g = model.gamma();
  if (s == 2.0) {
    // exp(-g^2 u^2) is the normal law with variance 2 g^2
    std::normal_distribution<double> normal(0.0, std::sqrt(2.0) * g);
    for (auto& v : out)
      v = normal(rng);
  } else if (std::abs(s - 1.0) < 1e-8) {
    for (auto& v : out)
      v = g * std::tan(pi * (open_uniform(rng) - 0.5));
  } else {
    for (auto& v : out) {
      double angle = pi * (open_uniform(rng) - 0.5);
      double w = positive_exponential(rng);
      double x = std::sin(s * angle) / std::pow(std::cos(angle), 1.0 / s) *
        std::pow(std::cos(angle - s * angle) / w, (1.0 - s) / s);
      v = g * x;
    }
  }
  return Sample(std::move(out));
}

Sample
sample_signal(const SignalModel& model, std::size_t n, std::uint64_t seed)
{
  if (n == 0)
    throw InvalidArgument("sample size must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<double> out = std::visit(
    [&](const auto& law) -> std::vector<double> {
      using T = std::decay_t<decltype(law)>;
      std::vector<double> raw(n);
      if constexpr (std::is_same_v<T, LaplaceSum>) {
        std::exponential_distribution<double> expo(1.0);
        for (auto& v : raw) {
          double sum = 0.0;
          for (int k = 0; k < law.count; ++k)
            sum += expo(rng) - expo(rng);
          v = sum;
        }
      } else if constexpr (std::is_same_v<T, GammaLaw>) {
        std::gamma_distribution<double> gamma(law.shape, law.scale);
        for (auto& v : raw)
          v = gamma(rng);
      } else {
        raw = law.sampler(n, seed);
        if (raw.size() != n)
          throw InvalidArgument(fmt::format(
            "custom sampler returned {} values, expected {}", raw.size(), n));
      }
      return raw;
    },
    model.kind());
  for (auto& v : out)
    v = model.pre_scale() * v + model.shift();
  return Sample(std::move(out));
}

Sample
simulate_observations(const SignalModel& signal,
                      const NoiseModel& noise,
                      std::size_t n,
                      std::uint64_t seed)
{
  Sample x = sample_signal(signal, n, derive_seed(seed, 0));
  Sample e = sample_stable(noise, n, derive_seed(seed, 1));
  std::vector<double> y(n);
  for (std::size_t j = 0; j < n; ++j)
    y[j] = x[j] + e[j];
  return Sample(std::move(y));
}

double
sobolev_seminorm(const CharFn& cf,
                 double beta,
                 double cutoff,
                 std::size_t nodes)
{
  if (!(beta > 0.0))
    throw InvalidArgument("Sobolev smoothness beta must be > 0");
  if (!(cutoff > 0.0))
    throw InvalidArgument("Sobolev cutoff must be > 0");
  return weighted_l2(cf, beta, cutoff, nodes);
}

double
l2_norm_sq(const CharFn& cf, std::size_t nodes)
{
  return weighted_l2(cf, 0.0, std::numeric_limits<double>::infinity(), nodes);
}

} // namespace deconv
