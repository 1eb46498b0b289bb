// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#include "deconv/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>

#include <boost/algorithm/string/split.hpp>
#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "deconv/error.hpp"

namespace deconv {

namespace {

namespace pt = boost::property_tree;

template<typename T>
T
parse_number(std::string_view text, std::string_view key)
{
  T v{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw InvalidArgument(fmt::format("{}: cannot parse '{}'", key, text));
  if constexpr (std::is_floating_point_v<T>)
    if (!std::isfinite(v))
      throw InvalidArgument(fmt::format("{}: value must be finite", key));
  return v;
}

std::vector<std::string>
split_list(const std::string& text, std::string_view key)
{
  std::vector<std::string> items;
  boost::split(items, text, [](char c) { return c == ','; });
  for (auto& item : items) {
    boost::trim(item);
    if (item.empty())
      throw InvalidArgument(fmt::format("{}: empty list element", key));
  }
  return items;
}

template<typename T>
std::vector<T>
parse_list(const std::string& text, std::string_view key)
{
  std::vector<T> out;
  for (const auto& item : split_list(text, key))
    out.push_back(parse_number<T>(item, key));
  return out;
}

} // namespace

SignalModel
parse_signal(std::string_view name, double pre_scale)
{
  if (name == "laplace5")
    return SignalModel::laplace5(pre_scale);
  if (name == "gamma")
    return SignalModel::chi3(pre_scale);
  constexpr std::string_view prefix = "shifted:";
  if (name.starts_with(prefix))
    return SignalModel::laplace5(
      pre_scale, parse_number<double>(name.substr(prefix.size()), "shift offset"));
  throw InvalidArgument(fmt::format(
    "unknown signal '{}' (expected laplace5, gamma or shifted:<offset>)", name));
}

ExperimentConfig
parse_experiment_config(std::istream& in, std::string_view source)
{
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw InvalidArgument(
      fmt::format("{}:{}: {}", source, e.line(), e.message()));
  }

  ExperimentConfig config = ExperimentConfig::simulation_default();
  std::optional<std::vector<std::string>> signal_names;
  double pre_scale = 0.1;
  std::optional<std::vector<double>> grid;
  std::optional<std::vector<double>> points;
  std::optional<double> delta;

  for (const auto& [section, body] : tree) {
    if (!body.data().empty())
      throw InvalidArgument(
        fmt::format("{}: key '{}' outside a section", source, section));
    for (const auto& [key, node] : body) {
      const std::string& value = node.data();
      const std::string where = fmt::format("{}: [{}] {}", source, section, key);
      if (section == "experiment") {
        if (key == "signals")
          signal_names = split_list(value, where);
        else if (key == "noise_indices")
          config.noise_indices = parse_list<double>(value, where);
        else if (key == "ns")
          config.ns = parse_list<std::size_t>(value, where);
        else if (key == "m")
          config.m = parse_number<std::size_t>(value, where);
        else if (key == "master_seed")
          config.master_seed = parse_number<std::uint64_t>(value, where);
        else if (key == "pre_scale")
          pre_scale = parse_number<double>(value, where);
        else if (key == "gamma")
          config.gamma = parse_number<double>(value, where);
        else if (key == "workers")
          config.workers = parse_number<unsigned>(value, where);
        else
          throw InvalidArgument(fmt::format("{}: unknown key", where));
      } else if (section == "selector") {
        if (key == "grid")
          grid = parse_list<double>(value, where);
        else if (key == "eval_points")
          points = parse_list<double>(value, where);
        else if (key == "delta")
          delta = parse_number<double>(value, where);
        else if (key == "A")
          config.selector.A = parse_number<double>(value, where);
        else if (key == "beta_prime")
          config.selector.beta_prime = parse_number<double>(value, where);
        else if (key == "c")
          config.selector.c = parse_number<double>(value, where);
        else
          throw InvalidArgument(fmt::format("{}: unknown key", where));
      } else {
        throw InvalidArgument(
          fmt::format("{}: unknown section [{}]", source, section));
      }
    }
  }

  if (points && delta)
    throw InvalidArgument(
      fmt::format("{}: set either eval_points or delta, not both", source));
  if (grid)
    config.selector.grid = Grid(*grid);
  if (points)
    config.selector.eval_points = ExplicitPoints{ *points };
  if (delta)
    config.selector.eval_points = FormulaPoints{ *delta };
  if (!(pre_scale > 0.0))
    throw InvalidArgument(fmt::format("{}: pre_scale must be > 0", source));
  if (signal_names || pre_scale != 0.1) {
    config.signals.clear();
    for (const auto& name :
         signal_names.value_or(std::vector<std::string>{ "laplace5", "gamma" }))
      config.signals.push_back(parse_signal(name, pre_scale));
  }
  try {
    config.validate();
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(fmt::format("{}: {}", source, e.what()));
  }
  return config;
}

ExperimentConfig
load_experiment_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw InvalidArgument(fmt::format("cannot open config '{}'", path.string()));
  return parse_experiment_config(in, path.string());
}

} // namespace deconv
