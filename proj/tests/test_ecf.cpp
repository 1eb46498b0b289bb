// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "deconv/ecf.hpp"
#include "deconv/models.hpp"
#include "oracle.hpp"

using namespace deconv;
constexpr double pi = std::numbers::pi;

TEST(Ecf, Examples)
{
  Sample y({ 0.3, -4.0, 17.0 });
  EXPECT_EQ(ecf(y, 0.0), std::complex<double>(1.0, 0.0));
  EXPECT_NEAR(std::abs(ecf(Sample({ 0.0, pi }), 1.0)), 0.0, 1e-15);
  auto single = ecf(Sample({ 1.0 }), pi / 2);
  EXPECT_NEAR(single.real(), 0.0, 1e-15);
  EXPECT_NEAR(single.imag(), -1.0, 1e-15);
}

TEST(Ecf, Modulus)
{
  EXPECT_EQ(ecf_mod(Sample({ 2.0, 5.0 }), 0.0), 1.0);
  EXPECT_NEAR(ecf_mod(Sample({ 0.0, pi }), 1.0), 0.0, 1e-15);
  EXPECT_LE(ecf_mod(Sample({ 1e-17, 0.0, 2e-17 }), 0.3), 1.0);
}

TEST(Ecf, ConvolutionProductWithinBand)
{
  auto y = simulate_observations(SignalModel::laplace5(0.1), NoiseModel(1.0), 100000, 8);
  double exact = std::pow(1.0 + 0.01, -5.0) * std::exp(-1.0);
  EXPECT_LE(std::abs(ecf_mod(y, 1.0) - exact), oracle::hoeffding(y.size(), 1e-3));
}

TEST(Ecf, BatchMatchesSingleCallsBitForBit)
{
  auto y = sample_stable(NoiseModel(1.3), 1000, 12);
  std::vector<double> us;
  for (int i = 0; i < 150; ++i)
    us.push_back(0.037 * i - 1.0);
  auto batch = ecf_batch(y, us);
  ASSERT_EQ(batch.size(), us.size());
  for (std::size_t i = 0; i < us.size(); ++i)
    EXPECT_EQ(batch[i], ecf(y, us[i]));
  EXPECT_TRUE(ecf_batch(y, {}).empty());
  std::vector<double> zero{ 0.0 };
  EXPECT_EQ(ecf_batch(y, zero)[0], std::complex<double>(1.0, 0.0));
}

TEST(Ecf, MatchesNaiveSum)
{
  auto y = sample_stable(NoiseModel(0.9), 5000, 13);
  for (double u : { 0.1, 1.0, 3.7 })
    EXPECT_NEAR(std::abs(ecf(y, u) - oracle::ecf_naive(y.values(), u)), 0.0, 1e-12);
}

TEST(Ecf, ExponentialSums)
{
  std::vector<double> pts{ 1.0, 2.0, -0.5 };
  std::vector<double> us{ 0.0, 0.8 };
  auto sums = exponential_sums(pts, us, 0.5);
  EXPECT_NEAR(std::abs(sums[0] - 3.0), 0.0, 1e-15);
  std::complex<double> ref = 0.0;
  for (double p : pts)
    ref += std::polar(1.0, 0.8 * (p - 0.5));
  EXPECT_NEAR(std::abs(sums[1] - ref), 0.0, 1e-15);
}
