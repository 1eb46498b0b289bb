// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#include "deconv/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "deconv/error.hpp"
#include "deconv/seed.hpp"
#include "parallel.hpp"

namespace deconv {

namespace {

std::uint64_t
fnv1a(const std::string& text)
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

template<typename T>
std::vector<T>
sorted_unique(std::vector<T> v)
{
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

struct Replication
{
  double s_hat = 0.0;
  bool fallback = false;
  double seconds = 0.0;
  std::string error;
};

Replication
replicate(const ExperimentConfig& config,
          const SignalModel& signal,
          double s,
          std::size_t n,
          std::size_t r)
{
  Replication rep;
  auto start = std::chrono::steady_clock::now();
  try {
    NoiseModel noise(s, config.gamma);
    auto seed = replication_seed(config.master_seed, signal.name(), s, n, r);
    Sample y = simulate_observations(signal, noise, n, seed);
    if (config.gamma != 1.0)
      y = y.standardized(config.gamma);
    auto sel = select_index(y, config.selector);
    rep.s_hat = sel.s_hat;
    rep.fallback = sel.fallback_used;
  } catch (const std::exception& e) {
    rep.error = e.what();
  }
  rep.seconds =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

void
check_common(const ExperimentConfig& config)
{
  if (config.m < 1)
    throw InvalidArgument("m must be >= 1");
  if (config.signals.empty())
    throw InvalidArgument("no signals configured");
  if (config.ns.empty())
    throw InvalidArgument("no sample sizes configured");
  for (auto n : config.ns)
    if (n < 2)
      throw InvalidArgument(fmt::format("sample size {} must be >= 2", n));
  if (!(config.gamma > 0.0) || !std::isfinite(config.gamma))
    throw InvalidArgument("gamma must be > 0");
  config.selector.validate();
}

// Replications for every (cell, r) in one flat parallel loop.
template<typename Cell>
std::vector<std::vector<Replication>>
run_cells(const ExperimentConfig& config, const std::vector<Cell>& cells)
{
  std::vector<std::vector<Replication>> out(cells.size(),
                                            std::vector<Replication>(config.m));
  detail::parallel_for(cells.size() * config.m, config.workers, [&](std::size_t i) {
    const auto& c = cells[i / config.m];
    out[i / config.m][i % config.m] =
      replicate(config, *c.signal, c.s, c.n, i % config.m);
  });
  return out;
}

struct CellSpec
{
  const SignalModel* signal;
  double s;
  std::size_t n;
};

CellReport
tally(const ExperimentConfig& config,
      const CellSpec& cell,
      const std::vector<Replication>& reps)
{
  CellReport out;
  out.signal = cell.signal->name();
  out.s = cell.s;
  out.n = cell.n;
  out.m = config.m;
  double total = 0.0;
  for (const auto& rep : reps) {
    total += rep.seconds;
    if (!rep.error.empty()) {
      if (out.error.empty())
        out.error = rep.error;
      continue;
    }
    if (rep.s_hat == cell.s)
      ++out.success_count;
    if (rep.fallback)
      ++out.fallback_count;
  }
  out.mean_runtime = total / static_cast<double>(reps.size());
  return out;
}

std::string
csv_field(const std::string& text)
{
  if (text.find_first_of(",\"\n\r") == std::string::npos)
    return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"')
      out += '"';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out + "\"";
}

std::vector<std::string>
split_csv(const std::string& line)
{
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted)
    throw InvalidArgument("unterminated quote");
  return fields;
}

template<typename T>
T
parse_field(const std::string& text, const char* name)
{
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  T v{};
  if (!(in >> v) || !(in >> std::ws).eof())
    throw InvalidArgument(fmt::format("bad {} '{}'", name, text));
  return v;
}

constexpr const char* header =
  "signal,s,n,m,success_count,fallback_count,mean_runtime_s,error";

} // namespace

bool
CellReport::same_outcome(const CellReport& o) const
{
  return signal == o.signal && s == o.s && n == o.n && m == o.m &&
         success_count == o.success_count && fallback_count == o.fallback_count &&
         error == o.error;
}

bool
MCReport::same_outcome(const MCReport& o) const
{
  return std::equal(cells.begin(), cells.end(), o.cells.begin(), o.cells.end(),
                    [](const auto& a, const auto& b) { return a.same_outcome(b); });
}

void
ExperimentConfig::validate() const
{
  check_common(*this);
  if (noise_indices.empty())
    throw InvalidArgument("no noise indices configured");
  for (double s : noise_indices)
    if (selector.grid.index_of(s) == selector.grid.size())
      throw InvalidArgument(fmt::format("noise index {} is not on the grid", s));
}

ExperimentConfig
ExperimentConfig::simulation_default()
{
  ExperimentConfig c;
  c.signals = { SignalModel::laplace5(0.1), SignalModel::chi3(0.1) };
  c.noise_indices = { 0.5, 1.0, 1.5, 2.0 };
  c.ns = { 500, 1000, 2000, 5000 };
  c.m = 100;
  return c;
}

std::uint64_t
replication_seed(std::uint64_t master_seed,
                 const std::string& signal,
                 double s,
                 std::size_t n,
                 std::size_t r)
{
  return hash_words({ master_seed, fnv1a(signal), std::bit_cast<std::uint64_t>(s),
                      static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r) });
}

CellReport
run_cell(const ExperimentConfig& config,
         const SignalModel& signal,
         double s,
         std::size_t n)
{
  check_common(config);
  if (config.selector.grid.index_of(s) == config.selector.grid.size())
    throw InvalidArgument(fmt::format("noise index {} is not on the grid", s));
  std::vector<CellSpec> cells{ { &signal, s, n } };
  return tally(config, cells[0], run_cells(config, cells)[0]);
}

MCReport
run_experiment(const ExperimentConfig& config)
{
  config.validate();
  std::vector<CellSpec> cells;
  for (const auto& signal : config.signals)
    for (double s : sorted_unique(config.noise_indices))
      for (auto n : sorted_unique(config.ns))
        cells.push_back({ &signal, s, n });
  auto reps = run_cells(config, cells);
  MCReport report;
  for (std::size_t i = 0; i < cells.size(); ++i)
    report.cells.push_back(tally(config, cells[i], reps[i]));
  return report;
}

double
OffGridCell::mode() const
{
  double best = std::numeric_limits<double>::quiet_NaN();
  std::size_t best_count = 0;
  for (auto [value, count] : counts)
    if (count > best_count) {
      best = value;
      best_count = count;
    }
  return best;
}

double
OffGridCell::modal_share() const
{
  if (m == 0 || counts.empty())
    return 0.0;
  return static_cast<double>(counts.at(mode())) / static_cast<double>(m);
}

std::vector<OffGridCell>
run_offgrid_probe(const ExperimentConfig& config, double true_s)
{
  check_common(config);
  if (!(true_s > 0.0 && true_s <= 2.0))
    throw InvalidArgument(fmt::format("true s = {} outside (0, 2]", true_s));
  std::vector<CellSpec> cells;
  for (const auto& signal : config.signals)
    for (auto n : sorted_unique(config.ns))
      cells.push_back({ &signal, true_s, n });
  auto reps = run_cells(config, cells);
  std::vector<OffGridCell> out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    OffGridCell cell;
    cell.signal = cells[i].signal->name();
    cell.true_s = true_s;
    cell.n = cells[i].n;
    cell.m = config.m;
    for (const auto& rep : reps[i]) {
      if (!rep.error.empty()) {
        if (cell.error.empty())
          cell.error = rep.error;
        continue;
      }
      ++cell.counts[rep.s_hat];
      if (rep.fallback)
        ++cell.fallback_count;
    }
    out.push_back(std::move(cell));
  }
  return out;
}

void
write_report(std::ostream& out, const MCReport& report)
{
  out << header << '\n';
  for (const auto& c : report.cells)
    out << fmt::format("{},{:.17g},{},{},{},{},{:.17g},{}\n", csv_field(c.signal),
                       c.s, c.n, c.m, c.success_count, c.fallback_count,
                       c.mean_runtime, csv_field(c.error));
}

void
emit_report(const MCReport& report, const std::filesystem::path& path)
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
  write_report(out, report);
  out.flush();
  if (!out)
    throw std::runtime_error(fmt::format("write to '{}' failed", path.string()));
}

MCReport
parse_report(std::istream& in)
{
  std::string line;
  if (!std::getline(in, line) || line != header)
    throw InvalidArgument("report header missing or unexpected");
  MCReport report;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty())
      continue;
    try {
      auto f = split_csv(line);
      if (f.size() != 8)
        throw InvalidArgument(fmt::format("expected 8 fields, got {}", f.size()));
      CellReport c;
      c.signal = f[0];
      c.s = parse_field<double>(f[1], "s");
      c.n = parse_field<std::size_t>(f[2], "n");
      c.m = parse_field<std::size_t>(f[3], "m");
      c.success_count = parse_field<std::size_t>(f[4], "success_count");
      c.fallback_count = parse_field<std::size_t>(f[5], "fallback_count");
      c.mean_runtime = parse_field<double>(f[6], "mean_runtime_s");
      c.error = f[7];
      if (c.success_count > c.m || c.fallback_count > c.m)
        throw InvalidArgument("counts exceed m");
      report.cells.push_back(std::move(c));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(fmt::format("report line {}: {}", lineno, e.what()));
    }
  }
  return report;
}

MCReport
read_report(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw InvalidArgument(fmt::format("cannot open '{}'", path.string()));
  try {
    return parse_report(in);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(fmt::format("{}: {}", path.string(), e.what()));
  }
}

} // namespace deconv
