// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "deconv/error.hpp"
#include "deconv/models.hpp"
#include "deconv/selector.hpp"
#include "oracle.hpp"

using namespace deconv;

namespace {

SelectorConfig
unit_envelope()
{
  auto c = SelectorConfig::simulation_default();
  c.A = 1.0;
  c.beta_prime = 1.0;
  return c;
}

// 1/2 (A u^-b e^{-u^{s_i}} + e^{-u^{s_j}}), computed directly
double
midpoint(const SelectorConfig& c, std::size_t i, std::size_t j, double u)
{
  return 0.5 * (c.A * std::pow(u, -c.beta_prime) * std::exp(-std::pow(u, c.grid[i])) +
                std::exp(-std::pow(u, c.grid[j])));
}

} // namespace

TEST(Grid, Validation)
{
  EXPECT_THROW(Grid({}), InvalidArgument);
  EXPECT_THROW(Grid({ 0.0, 1.0 }), InvalidArgument);
  EXPECT_THROW(Grid({ 1.0, 2.5 }), InvalidArgument);
  EXPECT_THROW(Grid({ 1.0, 1.0 }), InvalidArgument);
  EXPECT_THROW(Grid({ 1.5, 1.0 }), InvalidArgument);
  Grid g({ 0.5, 1.0, 2.0 });
  EXPECT_EQ(g.min_spacing(), 0.5);
  EXPECT_EQ(g.index_of(1.0), 1u);
  EXPECT_EQ(g.index_of(1.2), 3u);
}

TEST(SelectorConfig, Validation)
{
  auto c = SelectorConfig::simulation_default();
  EXPECT_NO_THROW(c.validate());
  c.A = 0.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = SelectorConfig::simulation_default();
  c.beta_prime = 0.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = SelectorConfig::simulation_default();
  c.eval_points = ExplicitPoints{ { 2.0, 1.5 } };
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.eval_points = ExplicitPoints{ { 2.0, 1.5, 1.0, 1.2 } };
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(ReferenceAndEnvelope, Examples)
{
  Grid g({ 0.5, 1.0, 1.5, 2.0 });
  EXPECT_NEAR(reference_cf(g, 1, 1.0), std::exp(-1.0), 1e-16);
  for (std::size_t k = 0; k < 4; ++k)
    EXPECT_EQ(reference_cf(g, k, 0.0), 1.0);
  EXPECT_NEAR(reference_cf(g, 3, 2.0), std::exp(-4.0), 1e-17);
  EXPECT_THROW(reference_cf(g, 4, 1.0), InvalidArgument);

  auto c = unit_envelope();
  EXPECT_NEAR(envelope(c, 1, 2.0), 0.5 * std::exp(-2.0), 1e-16);
  EXPECT_NEAR(envelope(c, 1, 1.0), std::exp(-1.0), 1e-16);
  c.A = 0.5;
  c.beta_prime = 2.0;
  EXPECT_NEAR(envelope(c, 0, 4.0), 0.03125 * std::exp(-2.0), 1e-17);
  EXPECT_THROW(envelope(c, 0, 0.0), InvalidArgument);
}

TEST(FormulaPoints, Examples)
{
  Grid one({ 1.0 });
  EXPECT_THROW(eval_points_formula_log_n(one, 4.0, 1.0), NumericalError);
  try {
    eval_points_formula_log_n(one, 4.0, 1.0);
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("0.6137"), std::string::npos) << e.what();
  }
  Grid two({ 2.0 });
  EXPECT_NEAR(eval_points_formula_log_n(two, 4.0, 1.0)[0],
              std::sqrt(2.0 - 0.5 * std::log(4.0)), 1e-15);
  EXPECT_NEAR(std::sqrt(2.0 - 0.5 * std::log(4.0)), 1.143, 1e-3);
  EXPECT_THROW(eval_points_formula_log_n(one, 2.0, 2.0), SampleSizeError);
  EXPECT_THROW(eval_points_formula(one, 2, 1.0), SampleSizeError);
  // the integer-n entry point agrees with the log form
  EXPECT_EQ(eval_points_formula(two, 5000, 1.0)[0],
            eval_points_formula_log_n(two, std::log(5000.0), 1.0)[0]);
}

TEST(SelectFromModuli, MidpointsMatchDirectFormula)
{
  auto c = SelectorConfig::simulation_default();
  auto& u = std::get<ExplicitPoints>(c.eval_points).u;
  std::vector<double> moduli(4, 0.1);
  auto r = select_from_moduli(c, u, moduli);
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& d = r.diagnostics[k];
    if (k + 1 < 4)
      EXPECT_NEAR(d.lower_mid, midpoint(c, k, k + 1, u[k]), 1e-15);
    else
      EXPECT_TRUE(std::isnan(d.lower_mid));
    if (k > 0)
      EXPECT_NEAR(d.upper_mid, midpoint(c, k - 1, k, u[k]), 1e-15);
    else
      EXPECT_TRUE(std::isnan(d.upper_mid));
  }
}

// For each index, place its modulus exactly on one boundary and every other
// modulus where it cannot be a member.
TEST(SelectFromModuli, BoundarySemanticsAtExactMidpoints)
{
  auto c = SelectorConfig::simulation_default();
  auto& u = std::get<ExplicitPoints>(c.eval_points).u;
  std::vector<double> probe(4, 0.1);
  auto diag = select_from_moduli(c, u, probe).diagnostics;
  for (std::size_t k = 0; k < 4; ++k) {
    std::vector<double> m(4, 1.0); // above every upper midpoint, below no lower
    // index 0 has no upper test, so 1.0 would make it a member
    if (k != 0)
      m[0] = 0.0;
    if (k + 1 < 4) {
      m[k] = diag[k].lower_mid;
      auto at_lower = select_from_moduli(c, u, m);
      EXPECT_TRUE(at_lower.diagnostics[k].member) << "k=" << k;
      EXPECT_EQ(at_lower.s_hat, c.grid[k]);
      m[k] = std::nextafter(diag[k].lower_mid, 0.0);
      EXPECT_FALSE(select_from_moduli(c, u, m).diagnostics[k].member) << "k=" << k;
    }
    if (k > 0) {
      m[k] = diag[k].upper_mid;
      EXPECT_FALSE(select_from_moduli(c, u, m).diagnostics[k].member) << "k=" << k;
      m[k] = std::nextafter(diag[k].upper_mid, 0.0);
      auto below_upper = select_from_moduli(c, u, m);
      EXPECT_TRUE(below_upper.diagnostics[k].member) << "k=" << k;
    }
  }
}

TEST(SelectFromModuli, MinimumOfMembersAndFallback)
{
  auto c = SelectorConfig::simulation_default();
  auto& u = std::get<ExplicitPoints>(c.eval_points).u;
  std::vector<double> probe(4, 0.1);
  auto d = select_from_moduli(c, u, probe).diagnostics;
  // indices 1 and 3 members, 0 and 2 not
  std::vector<double> m{ 0.0, d[1].lower_mid, 1.0, std::nextafter(d[3].upper_mid, 0.0) };
  auto r = select_from_moduli(c, u, m);
  EXPECT_EQ(r.selected, (std::vector<std::size_t>{ 1, 3 }));
  EXPECT_EQ(r.s_hat, 1.0);
  EXPECT_FALSE(r.fallback_used);

  std::vector<double> none{ 0.0, 1.0, 1.0, 1.0 };
  auto f = select_from_moduli(c, u, none);
  EXPECT_TRUE(f.selected.empty());
  EXPECT_TRUE(f.fallback_used);
  EXPECT_EQ(f.s_hat, 0.5);
}

TEST(SelectIndex, ConstantSampleKeepsSmallestIndex)
{
  // |ecf| == 1 everywhere: only the first index (lower test only) is a member
  auto r = select_index(Sample(std::vector<double>(50, 0.0)),
                        SelectorConfig::simulation_default());
  EXPECT_FALSE(r.fallback_used);
  EXPECT_EQ(r.selected, std::vector<std::size_t>{ 0 });
  EXPECT_EQ(r.s_hat, 0.5);
}

TEST(SelectIndex, ExactModuliRecoverTheIndex)
{
  auto c = SelectorConfig::simulation_default();
  auto& u = std::get<ExplicitPoints>(c.eval_points).u;
  for (double s : { 0.5, 1.0, 1.5, 2.0 }) {
    std::vector<double> m;
    for (double v : u)
      m.push_back(std::abs(oracle::laplace5_cf(0.1, v)) * std::exp(-std::pow(v, s)));
    EXPECT_EQ(select_from_moduli(c, u, m).s_hat, s);
  }
}

TEST(SelectIndex, LaplaceUnitCauchyNoiseAtLargeN)
{
  auto c = SelectorConfig::simulation_default();
  int hits = 0;
  for (std::uint64_t r = 0; r < 100; ++r)
    hits += select_index(simulate_observations(SignalModel::laplace5(0.1),
                                               NoiseModel(1.0), 5000, 1000 + r),
                         c)
              .s_hat == 1.0;
  EXPECT_GE(hits, 95);
}

TEST(SpacingCheck, Examples)
{
  auto ok = grid_spacing_check(Grid({ 0.5, 1.0, 1.5, 2.0 }), 5000, 2.0);
  EXPECT_TRUE(ok.spacing_ok);
  EXPECT_NEAR(ok.required, 2.0 / std::log(5000.0), 1e-15);
  auto bad = grid_spacing_check(Grid({ 0.5, 0.51 }), 100, 2.0);
  EXPECT_FALSE(bad.spacing_ok);
  EXPECT_NEAR(bad.required, 0.434, 1e-3);
  EXPECT_TRUE(grid_spacing_check(Grid({ 1.0 }), 10, 2.0).passed());
}

TEST(Warnings, FlagsInfeasibleFormulaDelta)
{
  auto c = SelectorConfig::simulation_default();
  EXPECT_TRUE(selector_warnings(c, 5000).empty());
  c.eval_points = FormulaPoints{ 1.0 };
  auto w = selector_warnings(c, 5000);
  ASSERT_FALSE(w.empty());
  EXPECT_NE(w.front().find("delta"), std::string::npos);
}
