// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#include "deconv/ecf.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace deconv {

namespace {

// Neumaier compensated accumulator.
struct Compensated
{
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) noexcept
  {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }
  double value() const noexcept { return sum + carry; }
};

constexpr std::size_t block = 64;

// Sums exp(sign * i u (y - center)) over points for each u. The loop runs
// over the points once per block of frequencies; each frequency sees the
// points in order, so the result does not depend on the blocking.
std::vector<std::complex<double>>
sums(std::span<const double> points,
     std::span<const double> us,
     double center,
     double sign)
{
  std::vector<std::complex<double>> out(us.size());
  std::array<Compensated, block> re;
  std::array<Compensated, block> im;
  for (std::size_t b0 = 0; b0 < us.size(); b0 += block) {
    std::size_t len = std::min(block, us.size() - b0);
    re.fill({});
    im.fill({});
    for (double y : points) {
      double d = y - center;
      for (std::size_t k = 0; k < len; ++k) {
        double theta = us[b0 + k] * d;
        re[k].add(std::cos(theta));
        im[k].add(sign * std::sin(theta));
      }
    }
    for (std::size_t k = 0; k < len; ++k)
      out[b0 + k] = { re[k].value(), im[k].value() };
  }
  return out;
}

} // namespace

std::complex<double>
ecf(const Sample& sample, double u)
{
  double one[1] = { u };
  return sums(sample.values(), one, 0.0, -1.0)[0] /
    static_cast<double>(sample.size());
}

double
ecf_mod(const Sample& sample, double u)
{
  return std::min(1.0, std::abs(ecf(sample, u)));
}

std::vector<std::complex<double>>
ecf_batch(const Sample& sample, std::span<const double> us)
{
  auto out = sums(sample.values(), us, 0.0, -1.0);
  const double n = static_cast<double>(sample.size());
  for (auto& v : out)
    v /= n;
  return out;
}

std::vector<std::complex<double>>
exponential_sums(std::span<const double> points,
                 std::span<const double> us,
                 double center)
{
  return sums(points, us, center, 1.0);
}

} // namespace deconv
