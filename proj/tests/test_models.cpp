// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "deconv/ecf.hpp"
#include "deconv/error.hpp"
#include "deconv/models.hpp"
#include "deconv/seed.hpp"
#include "oracle.hpp"

using namespace deconv;

namespace {

double
quantile(std::vector<double> v, double p)
{
  std::sort(v.begin(), v.end());
  double pos = p * static_cast<double>(v.size() - 1);
  auto lo = static_cast<std::size_t>(pos);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[lo + 1] - v[lo]);
}

} // namespace

TEST(NoiseModel, Validation)
{
  EXPECT_THROW(NoiseModel(0.0), InvalidArgument);
  EXPECT_THROW(NoiseModel(2.1), InvalidArgument);
  EXPECT_THROW(NoiseModel(1.0, 0.0), InvalidArgument);
  EXPECT_NO_THROW(NoiseModel(2.0, 3.0));
}

TEST(NoiseModel, CharacteristicFunction)
{
  EXPECT_EQ(noise_cf(NoiseModel(2.0), 0.0), 1.0);
  EXPECT_NEAR(noise_cf(NoiseModel(1.0), 1.0), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(noise_cf(NoiseModel(0.5), 4.0), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(noise_cf(NoiseModel(1.5, 2.0), -1.0), std::exp(-std::pow(2.0, 1.5)), 1e-15);
}

TEST(SignalModel, CharacteristicFunction)
{
  EXPECT_NEAR(std::abs(signal_cf(SignalModel::laplace5(1.0), 1.0) - 0.03125), 0.0, 1e-15);
  EXPECT_EQ(signal_cf(SignalModel::chi3(1.0), 0.0), std::complex<double>(1.0, 0.0));
  EXPECT_NEAR(std::abs(signal_cf(SignalModel::laplace5(0.1), 10.0) - 0.03125), 0.0, 1e-15);
  // Gamma(3/2, 2): (1 - 2iu)^{-3/2}
  auto g = signal_cf(SignalModel::chi3(1.0), 0.7);
  EXPECT_NEAR(std::abs(g - oracle::gamma_cf(1.0, 0.7)), 0.0, 1e-14);
  // shift multiplies by e^{iu shift}
  auto shifted = signal_cf(SignalModel::laplace5(0.1, 1.0), 2.0);
  auto plain = signal_cf(SignalModel::laplace5(0.1), 2.0);
  EXPECT_NEAR(std::abs(shifted - plain * std::polar(1.0, 2.0)), 0.0, 1e-15);
}

TEST(SignalModel, NamesAndValidation)
{
  EXPECT_EQ(SignalModel::laplace5().name(), "laplace5");
  EXPECT_EQ(SignalModel::chi3().name(), "gamma");
  EXPECT_NE(SignalModel::laplace5(0.1, 1.0).name(), "laplace5");
  EXPECT_THROW(SignalModel::laplace5(0.0), InvalidArgument);
  EXPECT_THROW(SignalModel(LaplaceSum{ 0 }), InvalidArgument);
  EXPECT_THROW(SignalModel(GammaLaw{ -1.0, 2.0 }), InvalidArgument);
}

TEST(SignalModel, ClosedFormL2MatchesPlancherel)
{
  double lap = oracle::plancherel([](double u) { return oracle::laplace5_cf(0.1, u); });
  EXPECT_NEAR(lap, 0.92741, 1e-4);
  EXPECT_NEAR(*SignalModel::laplace5(0.1).l2_norm_sq(), lap, 1e-10);
  double gam = oracle::plancherel([](double u) { return oracle::gamma_cf(0.1, u); });
  EXPECT_NEAR(*SignalModel::chi3(0.1).l2_norm_sq(), gam, 1e-9);
  // the library's own tail-extended quadrature
  EXPECT_NEAR(l2_norm_sq([](double u) { return signal_cf(SignalModel::laplace5(0.1), u); }),
              lap, 1e-8);
}

TEST(SignalModel, StandardDeviation)
{
  EXPECT_NEAR(*SignalModel::laplace5(0.1).stddev(), 0.1 * std::sqrt(10.0), 1e-15);
  EXPECT_NEAR(*SignalModel::chi3(0.1).stddev(), 0.1 * std::sqrt(6.0), 1e-15);
}

TEST(Sampling, StableGaussianBranch)
{
  auto y = sample_stable(NoiseModel(2.0), 100000, 1);
  EXPECT_NEAR(oracle::stddev(y.values()) / std::sqrt(2.0), 1.0, 0.02);
}

TEST(Sampling, StableCauchyInterquartileRange)
{
  auto y = sample_stable(NoiseModel(1.0), 100000, 2);
  std::vector<double> v(y.values().begin(), y.values().end());
  EXPECT_NEAR((quantile(v, 0.75) - quantile(v, 0.25)) / 2.0, 1.0, 0.03);
}

TEST(Sampling, StableEcfWithinHoeffdingBand)
{
  for (double s : { 0.5, 0.8, 1.0, 1.3, 1.5, 2.0 }) {
    auto y = sample_stable(NoiseModel(s), 100000, 3);
    for (double u : { 0.5, 1.0, 2.0 })
      EXPECT_LE(std::abs(ecf(y, u) - std::exp(-std::pow(u, s))),
                oracle::hoeffding(y.size(), 1e-3))
        << "s=" << s << " u=" << u;
  }
}

TEST(Sampling, SignalMoments)
{
  auto lap = sample_signal(SignalModel::laplace5(0.1), 100000, 4);
  EXPECT_NEAR(oracle::stddev(lap.values()) / (0.1 * std::sqrt(10.0)), 1.0, 0.02);
  auto gam = sample_signal(SignalModel::chi3(0.1), 100000, 5);
  EXPECT_NEAR(oracle::stddev(gam.values()) / (0.1 * std::sqrt(6.0)), 1.0, 0.02);
  auto unit = sample_signal(SignalModel::laplace5(1.0), 100000, 6);
  double mean = 0.0;
  for (double v : unit.values())
    mean += v;
  EXPECT_NEAR(mean / 100000.0, 0.0, 0.05);
}

TEST(Sampling, SignalToNoiseRatio)
{
  NoiseModel gauss(2.0);
  auto noise = sample_stable(gauss, 100000, 7);
  auto lap = sample_signal(SignalModel::laplace5(0.1), 100000, 7);
  auto gam = sample_signal(SignalModel::chi3(0.1), 100000, 7);
  double sd_noise = oracle::stddev(noise.values());
  EXPECT_NEAR(oracle::stddev(lap.values()) / sd_noise, 0.22, 0.01);
  EXPECT_NEAR(oracle::stddev(gam.values()) / sd_noise, 0.17, 0.01);
}

TEST(Sampling, ObservationsAreSignalPlusNoise)
{
  auto signal = SignalModel::chi3(0.1);
  NoiseModel noise(1.5);
  auto y = simulate_observations(signal, noise, 1, 42);
  auto x = sample_signal(signal, 1, derive_seed(42, 0));
  auto e = sample_stable(noise, 1, derive_seed(42, 1));
  EXPECT_EQ(y[0], x[0] + e[0]);
}

TEST(Sampling, DeterministicAndSeedSensitive)
{
  NoiseModel noise(0.7);
  EXPECT_EQ(sample_stable(noise, 50, 9), sample_stable(noise, 50, 9));
  EXPECT_NE(sample_stable(noise, 50, 9), sample_stable(noise, 50, 10));
  EXPECT_THROW(sample_stable(noise, 0, 1), InvalidArgument);
}

TEST(Sampling, CustomLawUsesItsSampler)
{
  CustomLaw law{ "atom", [](double) { return std::complex<double>(1.0, 0.0); },
                 [](std::size_t n, std::uint64_t) { return std::vector<double>(n, 1.0); },
                 std::nullopt };
  auto x = sample_signal(SignalModel(law, 2.0, 0.5), 3, 1);
  EXPECT_EQ(x, Sample({ 2.5, 2.5, 2.5 }));
}

TEST(Sobolev, Examples)
{
  CharFn zero = [](double) { return std::complex<double>(0.0, 0.0); };
  EXPECT_EQ(sobolev_seminorm(zero, 1.0, 10.0), 0.0);

  CharFn lap = [](double u) { return oracle::laplace5_cf(1.0, u); };
  double a = sobolev_seminorm(lap, 1.0, 50.0, 512);
  double b = sobolev_seminorm(lap, 1.0, 50.0, 1024);
  EXPECT_TRUE(std::isfinite(a));
  EXPECT_NEAR(a, b, 1e-4 * std::abs(b));
  double ref =
    oracle::integrate([&](double u) { return std::norm(lap(u)) * u * u; }, 0.0, 50.0) /
    oracle::pi;
  EXPECT_NEAR(a, ref, 1e-10 * ref);

  // |u|^20 (1+u^2)^-10 tends to 1: not integrable
  EXPECT_THROW(sobolev_seminorm(lap, 10.0, std::numeric_limits<double>::infinity()),
               QuadratureError);
  EXPECT_THROW(sobolev_seminorm(lap, 0.0, 1.0), InvalidArgument);
}
