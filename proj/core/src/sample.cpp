// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#include "deconv/sample.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "deconv/error.hpp"

namespace deconv {

Sample::Sample(std::vector<double> values)
  : values_(std::move(values))
{
  if (values_.empty())
    throw InvalidArgument("sample must contain at least one observation");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw InvalidArgument(
        fmt::format("sample value at index {} is not finite", i));
  }
}

Sample
Sample::scaled(double factor) const
{
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw InvalidArgument("scale factor must be positive and finite");
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i)
    out[i] = values_[i] * factor;
  return Sample(std::move(out));
}

Sample
Sample::standardized(double gamma) const
{
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw InvalidArgument("noise scale must be positive and finite");
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i)
    out[i] = values_[i] / gamma;
  return Sample(std::move(out));
}

void
write_sample(std::ostream& os, const Sample& sample)
{
  for (double v : sample.values())
    os << fmt::format("{:.17g}\n", v);
}

void
write_sample(const std::filesystem::path& path, const Sample& sample)
{
  std::ofstream os(path);
  if (!os)
    throw InvalidArgument(
      fmt::format("cannot open '{}' for writing", path.string()));
  write_sample(os, sample);
  if (!os)
    throw InvalidArgument(fmt::format("write to '{}' failed", path.string()));
}

Sample
read_sample(std::istream& is)
{
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    auto last = line.find_last_not_of(" \t\r");
    const char* b = line.data() + first;
    const char* e = line.data() + last + 1;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e)
      throw InvalidArgument(
        fmt::format("line {}: '{}' is not a number", lineno, line));
    values.push_back(v);
  }
  return Sample(std::move(values));
}

Sample
read_sample(const std::filesystem::path& path)
{
  std::ifstream is(path);
  if (!is)
    throw InvalidArgument(
      fmt::format("cannot open sample file '{}'", path.string()));
  try {
    return read_sample(is);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(fmt::format("{}: {}", path.string(), e.what()));
  }
}

} // namespace deconv
