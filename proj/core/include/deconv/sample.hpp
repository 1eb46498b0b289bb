// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace deconv {

/// Immutable sequence of finite real observations, n >= 1.
class Sample
{
public:
  /// Throws InvalidArgument when empty or when any value is not finite.
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Componentwise y * factor.
  Sample scaled(double factor) const;

  /// Componentwise y / gamma: brings a noise of scale gamma to unit scale.
  Sample standardized(double gamma) const;

  friend bool operator==(const Sample&, const Sample&) = default;

private:
  std::vector<double> values_;
};

// One value per line, printed with round-trip precision. Blank lines and
// lines starting with '#' are skipped on input.
void write_sample(std::ostream& os, const Sample& sample);
void write_sample(const std::filesystem::path& path, const Sample& sample);
Sample read_sample(std::istream& is);
Sample read_sample(const std::filesystem::path& path);

} // namespace deconv
