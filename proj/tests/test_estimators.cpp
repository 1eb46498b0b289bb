// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "deconv/error.hpp"
#include "deconv/estimators.hpp"
#include "deconv/models.hpp"
#include "oracle.hpp"

using namespace deconv;
constexpr double pi = std::numbers::pi;

TEST(Bandwidth, Examples)
{
  auto density = BandwidthSpec::density(1.0, 0.6);
  EXPECT_NEAR(bandwidth_log_n(density, 4.0, 1.0), 1.0 / (2.0 - 0.5 * std::log(4.0)), 1e-15);
  EXPECT_NEAR(bandwidth_log_n(density, 4.0, 1.0), 0.7652, 1e-4);
  auto test = BandwidthSpec::test(1.0, 0.5);
  EXPECT_THROW(bandwidth_log_n(test, 4.0, 1.0), SampleSizeError);
  EXPECT_NEAR(bandwidth_log_n(density, 100.0, 2.0),
              std::pow(50.0 + 0.25 * std::log(100.0), -0.5), 1e-15);
  EXPECT_EQ(bandwidth(density, 5000, 1.0),
            bandwidth_log_n(density, std::log(5000.0), 1.0));
  EXPECT_THROW(bandwidth(density, 2, 1.0), SampleSizeError);
  EXPECT_THROW(bandwidth(BandwidthSpec::density(0.5, 0.6), 100, 1.0), InvalidArgument);
}

TEST(KernelCf, Examples)
{
  EXPECT_EQ(deconv_kernel_cf(0.0, 1.3, 0.4), 1.0);
  EXPECT_NEAR(deconv_kernel_cf(1.0, 1.0, 0.5), std::exp(2.0), 1e-14);
  EXPECT_EQ(deconv_kernel_cf(1.001, 1.0, 0.5), 0.0);
  EXPECT_EQ(deconv_kernel_cf(-0.5, 2.0, 1.0), deconv_kernel_cf(0.5, 2.0, 1.0));
}

TEST(PairKernel, ClosedFormAndSymmetry)
{
  QuadratureSpec quad;
  EXPECT_NEAR(pair_kernel(0.0, 1.0, 1.0, quad), (std::exp(2.0) - 1.0) / (2.0 * pi), 1e-10);
  for (double s : { 0.5, 1.3, 2.0 }) {
    double v = pair_kernel(0.0, s, 1.0, quad);
    EXPECT_GT(v, 0.0);
    EXPECT_NEAR(v, oracle::pair_kernel(0.0, s, 1.0), 1e-9 * v);
  }
  for (double d : { 0.3, 7.0, 123.4 })
    EXPECT_EQ(pair_kernel(d, 1.5, 0.8, quad), pair_kernel(-d, 1.5, 0.8, quad));
}

TEST(PairKernel, LargeGapAgainstFineReference)
{
  QuadratureSpec quad;
  double v = pair_kernel(1e6, 1.0, 1.0, quad);
  // 10^6-node midpoint-free reference: Gauss-Legendre order 8 on 125000 panels
  std::vector<double> nodes{ -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                             -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                             0.7966664774136267,  0.9602898564975363 };
  std::vector<double> weights{ 0.1012285362903763, 0.2223810344533745, 0.3137066378665195,
                               0.3626837833783620, 0.3626837833783620, 0.3137066378665195,
                               0.2223810344533745, 0.1012285362903763 };
  const int panels = 125000;
  double ref = 0.0;
  for (int p = 0; p < panels; ++p) {
    double lo = static_cast<double>(p) / panels, half = 0.5 / panels;
    for (int m = 0; m < 8; ++m) {
      double u = lo + half * (1.0 + nodes[m]);
      ref += half * weights[m] * std::exp(2.0 * u) * std::cos(1e6 * u);
    }
  }
  ref /= pi;
  EXPECT_NEAR(v, ref, 1e-9);
  // oscillation bound: |(1/pi) int e^{2u} cos(ud)| <= (e^2 + 1 + 2 (e^2 - 1) / d) / (pi d)
  EXPECT_LE(std::abs(v), (std::exp(2.0) + 1.0) / (pi * 1e6) * 1.01);
}

TEST(Density, MatchesDirectKernelSum)
{
  Sample y({ -0.7, 0.1, 0.25, 1.9, -2.4 });
  QuadratureSpec quad;
  std::vector<double> xs{ 0.0, 0.3, -1.0 };
  auto est = density_with_bandwidth(y, 1.0, 1.0, quad, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ASSERT_TRUE(est.converged[i]);
    double ref = oracle::density_direct(y.values(), 1.0, 1.0, xs[i]);
    EXPECT_NEAR(est.values[i], ref, 10 * quad.refine_tol * std::max(1.0, std::abs(ref)));
  }
}

TEST(Density, SingleAtomIsEven)
{
  std::vector<double> xs{ -1.0, 1.0 };
  auto est = density_with_bandwidth(Sample({ 0.0 }), 1.0, 0.5, {}, xs);
  EXPECT_EQ(est.values[0], est.values[1]);
}

TEST(Density, NegativeValuesAreKept)
{
  // a single atom gives the sinc-like kernel itself, negative in its side lobes
  std::vector<double> xs;
  for (int i = 0; i < 40; ++i)
    xs.push_back(0.25 * i);
  auto est = density_with_bandwidth(Sample({ 0.0 }), 1.0, 0.5, {}, xs);
  EXPECT_LT(*std::min_element(est.values.begin(), est.values.end()), 0.0);
}

TEST(Density, ExactCfModeApproachesTrueDensity)
{
  // f(0) of 0.1 * (sum of five Laplace): (1/pi) int_0^inf (1 + 0.01 u^2)^-5 du
  double f0 = oracle::integrate(
                [](double t) {
                  if (t >= 1.0)
                    return 0.0;
                  double u = t / (1.0 - t);
                  return std::pow(1.0 + 0.01 * u * u, -5.0) / ((1.0 - t) * (1.0 - t));
                },
                0.0, 1.0) /
              pi;
  CharFn obs = [](double u) {
    return oracle::laplace5_cf(0.1, u) * std::exp(-std::abs(u));
  };
  std::vector<double> x0{ 0.0 };
  double previous = std::numeric_limits<double>::infinity();
  for (double h : { 0.2, 0.1, 0.05, 0.02 }) {
    auto est = density_from_cf(obs, 1.0, h, {}, x0);
    double err = std::abs(est.values[0] - f0);
    EXPECT_LT(err, previous) << "h=" << h;
    previous = err;
  }
  EXPECT_LT(previous, 5e-7);
}

TEST(QuadFunctional, PairOfAtoms)
{
  QuadratureSpec quad;
  Sample y({ 0.0, 0.0 });
  EXPECT_NEAR(quad_functional_with_bandwidth(y, 1.0, 1.0, quad),
              (std::exp(2.0) - 1.0) / (2.0 * pi), 1e-10);
  EXPECT_THROW(quad_functional_with_bandwidth(Sample({ 1.0 }), 1.0, 1.0, quad),
               InvalidArgument);
}

TEST(QuadFunctional, MatchesDirectPairSum)
{
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal(0.0, 2.0);
  for (double s : { 0.5, 1.0, 1.5, 2.0 }) {
    std::vector<double> v(8);
    for (auto& x : v)
      x = normal(rng);
    Sample y(v);
    double got = quad_functional_with_bandwidth(y, s, 0.7, {});
    double ref = oracle::quad_functional_direct(y.values(), s, 0.7);
    EXPECT_NEAR(got, ref, 1e-7 * std::max(1.0, std::abs(ref))) << "s=" << s;
  }
}

TEST(QuadFunctional, ReversedOrderIsIdentical)
{
  auto y = simulate_observations(SignalModel::laplace5(0.1), NoiseModel(1.0), 300, 3);
  std::vector<double> rev(y.values().rbegin(), y.values().rend());
  auto spec = BandwidthSpec::density();
  EXPECT_EQ(quad_functional(y, 1.0, spec, {}), quad_functional(Sample(rev), 1.0, spec, {}));
}

TEST(QuadFunctional, OverflowIsAnError)
{
  // e^{2 u^s} at u = 1/h = 400 leaves the double range
  EXPECT_THROW(quad_functional_with_bandwidth(Sample({ 0.0, 1.0 }), 1.0, 1.0 / 400.0, {}),
               OverflowError);
  EXPECT_THROW(pair_kernel(0.0, 2.0, 0.01, {}), OverflowError);
}

TEST(Quadrature, SpecValidation)
{
  QuadratureSpec q;
  q.nodes = 4;
  EXPECT_THROW(q.validate(), InvalidArgument);
  q = {};
  q.refine_tol = 0.0;
  EXPECT_THROW(q.validate(), InvalidArgument);
  q = {};
  q.max_refinements = 0;
  EXPECT_THROW(q.validate(), InvalidArgument);
}
