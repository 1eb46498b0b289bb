// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

// deconv-adapt: command line front end. Results go to stdout as CSV,
// warnings and errors to stderr. Exit codes: 0 ok, 1 usage or input error,
// 2 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "deconv/config.hpp"
#include "deconv/error.hpp"
#include "deconv/estimators.hpp"
#include "deconv/gof.hpp"
#include "deconv/harness.hpp"
#include "deconv/models.hpp"
#include "deconv/sample.hpp"
#include "deconv/selector.hpp"

namespace {

using namespace deconv;

struct SelectorOptions
{
  std::vector<double> grid;
  std::vector<double> points;
  std::optional<double> delta;
  std::optional<double> A;
  std::optional<double> beta_prime;
  double gamma = 1.0;

  void attach(CLI::App* app)
  {
    app->add_option("--grid", grid, "Candidate indices (default 0.5,1,1.5,2)")
      ->delimiter(',');
    auto* p = app->add_option("--points", points, "Evaluation frequencies, one per grid value")
                ->delimiter(',');
    app->add_option("--delta", delta, "Use formula frequencies with this delta")
      ->excludes(p);
    app->add_option("--A", A, "Envelope constant A");
    app->add_option("--beta-prime", beta_prime, "Envelope exponent");
    app->add_option("--gamma", gamma, "Known noise scale")->check(CLI::PositiveNumber);
  }

  SelectorConfig build() const
  {
    SelectorConfig c = SelectorConfig::simulation_default();
    if (!grid.empty())
      c.grid = Grid(grid);
    if (!points.empty())
      c.eval_points = ExplicitPoints{ points };
    if (delta)
      c.eval_points = FormulaPoints{ *delta };
    if (A)
      c.A = *A;
    if (beta_prime)
      c.beta_prime = *beta_prime;
    c.validate();
    return c;
  }
};

Sample
load(const std::string& path)
{
  if (path == "-")
    return read_sample(std::cin);
  return read_sample(std::filesystem::path(path));
}

Sample
standardize(const Sample& y, double gamma)
{
  return gamma == 1.0 ? y : y.standardized(gamma);
}

void
print_warnings(const SelectorConfig& config, std::size_t n)
{
  for (const auto& w : selector_warnings(config, n))
    fmt::print(stderr, "warning: {}\n", w);
}

std::string
num(double v)
{
  return fmt::format("{:.17g}", v);
}

int
run(int argc, char** argv)
{
  CLI::App app{ "Adaptive deconvolution under stable noise of unknown index" };
  app.require_subcommand(1);

  // simulate
  std::string sim_signal = "laplace5";
  double sim_s = 1.0, sim_gamma = 1.0, sim_scale = 0.1;
  std::size_t sim_n = 500;
  std::uint64_t sim_seed = 1;
  std::string sim_out = "-";
  auto* sim = app.add_subcommand("simulate", "Draw Y = X + noise and write one value per line");
  sim->add_option("--signal", sim_signal, "laplace5 | gamma | shifted:<offset>");
  sim->add_option("--s", sim_s, "Noise index in (0, 2]")->required();
  sim->add_option("--n", sim_n, "Sample size")->required();
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_option("--gamma", sim_gamma, "Noise scale");
  sim->add_option("--pre-scale", sim_scale, "Signal scale factor");
  sim->add_option("--out", sim_out, "Output file ('-' for stdout)");

  // select
  std::string sel_in;
  SelectorOptions sel_opts;
  auto* sel = app.add_subcommand("select", "Estimate the noise index on a grid");
  sel->add_option("sample", sel_in, "Sample file ('-' for stdin)")->required();
  sel_opts.attach(sel);

  // density
  std::string den_in;
  SelectorOptions den_opts;
  double den_lo = -3.0, den_hi = 3.0;
  std::size_t den_count = 121;
  std::vector<double> den_xs;
  double den_beta = 1.0, den_beta_lo = 0.6;
  auto* den = app.add_subcommand("density", "Deconvolution density estimate as x,f_hat CSV");
  den->add_option("sample", den_in, "Sample file ('-' for stdin)")->required();
  den_opts.attach(den);
  den->add_option("--from", den_lo, "First evaluation point");
  den->add_option("--to", den_hi, "Last evaluation point");
  den->add_option("--count", den_count, "Number of evenly spaced points")
    ->check(CLI::Range(std::size_t{ 1 }, std::size_t{ 1000000 }));
  den->add_option("--x", den_xs, "Explicit evaluation points")->delimiter(',');
  den->add_option("--beta-bar", den_beta, "Upper smoothness bound");
  den->add_option("--beta-lower", den_beta_lo, "Lower smoothness bound");

  // quadfun
  std::string qf_in;
  SelectorOptions qf_opts;
  double qf_beta = 1.0, qf_beta_lo = 0.6;
  auto* qf = app.add_subcommand("quadfun", "Estimate the integral of f^2");
  qf->add_option("sample", qf_in, "Sample file ('-' for stdin)")->required();
  qf_opts.attach(qf);
  qf->add_option("--beta-bar", qf_beta, "Upper smoothness bound");
  qf->add_option("--beta-lower", qf_beta_lo, "Lower smoothness bound");

  // gof
  std::string gof_in, gof_null;
  SelectorOptions gof_opts;
  std::optional<double> gof_c;
  double gof_level = 0.05, gof_scale = 0.1;
  double gof_beta = 0.4, gof_beta_lo = 0.2;
  std::size_t gof_reps = 200;
  std::uint64_t gof_seed = 1;
  unsigned gof_workers = 0;
  auto* gof = app.add_subcommand("gof", "L2 goodness-of-fit test of a null density");
  gof->add_option("sample", gof_in, "Sample file ('-' for stdin)")->required();
  gof->add_option("--null", gof_null, "laplace5 | gamma | shifted:<offset>")->required();
  gof_opts.attach(gof);
  auto* copt = gof->add_option("--c-star", gof_c, "Critical constant (skips calibration)");
  gof->add_option("--level", gof_level, "Calibration level")->excludes(copt);
  gof->add_option("--reps", gof_reps, "Calibration replications")->excludes(copt);
  gof->add_option("--seed", gof_seed, "Calibration seed")->excludes(copt);
  gof->add_option("--workers", gof_workers, "Calibration threads (0 = all)");
  gof->add_option("--pre-scale", gof_scale, "Scale factor of the null signal");
  gof->add_option("--beta-bar", gof_beta, "Upper smoothness bound");
  gof->add_option("--beta-lower", gof_beta_lo, "Lower smoothness bound");

  // experiment
  std::string exp_config, exp_out = "-";
  bool exp_default = false;
  std::optional<unsigned> exp_workers;
  auto* exp = app.add_subcommand("experiment", "Monte Carlo selection study");
  auto* cfg = exp->add_option("--config", exp_config, "Configuration file")
                ->check(CLI::ExistingFile);
  exp->add_flag("--default", exp_default, "Run the built-in simulation protocol")
    ->excludes(cfg);
  exp->add_option("--out", exp_out, "Report CSV ('-' for stdout)");
  exp->add_option("--workers", exp_workers, "Threads (0 = all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*sim) {
    Sample y = simulate_observations(parse_signal(sim_signal, sim_scale),
                                     NoiseModel(sim_s, sim_gamma), sim_n, sim_seed);
    if (sim_out == "-")
      write_sample(std::cout, y);
    else
      write_sample(std::filesystem::path(sim_out), y);
    return 0;
  }

  if (*sel) {
    auto config = sel_opts.build();
    Sample y = standardize(load(sel_in), sel_opts.gamma);
    print_warnings(config, y.size());
    auto r = select_index(y, config);
    std::string members;
    for (auto k : r.selected)
      members += (members.empty() ? "" : ";") + num(config.grid[k]);
    fmt::print("s_hat,selected_set,fallback_used,n\n{},{},{},{}\n\n", num(r.s_hat),
               members, r.fallback_used ? "true" : "false", y.size());
    fmt::print("s,u,ecf_mod,lower_mid,upper_mid,member\n");
    for (const auto& d : r.diagnostics)
      fmt::print("{},{},{},{},{},{}\n", num(d.s), num(d.u), num(d.ecf_mod),
                 num(d.lower_mid), num(d.upper_mid), d.member ? "true" : "false");
    return 0;
  }

  if (*den) {
    auto config = den_opts.build();
    Sample y = standardize(load(den_in), den_opts.gamma);
    print_warnings(config, y.size());
    std::vector<double> xs = den_xs;
    if (xs.empty()) {
      for (std::size_t i = 0; i < den_count; ++i)
        xs.push_back(den_count == 1 ? den_lo
                                    : den_lo + (den_hi - den_lo) * static_cast<double>(i) /
                                                 static_cast<double>(den_count - 1));
    }
    // evaluate on the standardized scale and map back
    std::vector<double> scaled_xs;
    for (double x : xs)
      scaled_xs.push_back(x / den_opts.gamma);
    double s_hat = select_index(y, config).s_hat;
    auto est = estimate_density(y, s_hat, BandwidthSpec::density(den_beta, den_beta_lo),
                                {}, scaled_xs);
    fmt::print("x,f_hat\n");
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!est.converged[i])
        fmt::print(stderr, "warning: quadrature did not settle at x = {}\n", xs[i]);
      fmt::print("{},{}\n", num(xs[i]), num(est.values[i] / den_opts.gamma));
    }
    return 0;
  }

  if (*qf) {
    auto config = qf_opts.build();
    Sample y = standardize(load(qf_in), qf_opts.gamma);
    print_warnings(config, y.size());
    auto spec = BandwidthSpec::density(qf_beta, qf_beta_lo);
    double s_hat = select_index(y, config).s_hat;
    double h = bandwidth(spec, y.size(), s_hat);
    double t = quad_functional_with_bandwidth(y, s_hat, h, {});
    fmt::print("T_hat,h,s_hat,n\n{},{},{},{}\n", num(t / qf_opts.gamma), num(h),
               num(s_hat), y.size());
    return 0;
  }

  if (*gof) {
    TestConfig config;
    config.selector = gof_opts.build();
    config.bandwidth = BandwidthSpec::test(gof_beta, gof_beta_lo);
    config.gamma = gof_opts.gamma;
    Sample y = load(gof_in);
    print_warnings(config.selector, y.size());
    NullSpec null = NullSpec::parse(gof_null, gof_scale);
    double c_star = 0.0;
    if (gof_c) {
      c_star = *gof_c;
    } else {
      double s_hat =
        select_index(standardize(y, config.gamma), config.selector).s_hat;
      c_star = calibrate_c_star(null, NoiseModel(s_hat, config.gamma), y.size(),
                                gof_level, gof_reps, gof_seed, config, gof_workers);
    }
    auto out = run_test(y, null, config, c_star);
    fmt::print("statistic,threshold_sq,c_star,reject,s_hat,h\n{},{},{},{},{},{}\n",
               num(out.statistic), num(out.threshold_sq), num(out.c_star),
               out.reject ? "true" : "false", num(out.s_hat), num(out.h));
    return 0;
  }

  if (*exp) {
    if (exp_config.empty() && !exp_default)
      throw InvalidArgument("experiment needs --config <file> or --default");
    ExperimentConfig config = exp_default ? ExperimentConfig::simulation_default()
                                          : load_experiment_config(exp_config);
    if (exp_workers)
      config.workers = *exp_workers;
    for (auto n : config.ns)
      print_warnings(config.selector, n);
    auto report = run_experiment(config);
    if (exp_out == "-")
      write_report(std::cout, report);
    else
      emit_report(report, exp_out);
    return 0;
  }
  return 1;
}

} // namespace

int
main(int argc, char** argv)
{
  try {
    return run(argc, argv);
  } catch (const deconv::NumericalError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
}
