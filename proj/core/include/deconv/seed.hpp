// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#pragma once

#include <cstdint>
#include <initializer_list>

namespace deconv {

/// splitmix64 finaliser.
constexpr std::uint64_t
mix64(std::uint64_t x) noexcept
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Order-sensitive hash of a tuple of 64-bit words.
constexpr std::uint64_t
hash_words(std::initializer_list<std::uint64_t> words) noexcept
{
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (auto w : words)
    h = mix64(h ^ mix64(w));
  return h;
}

/// Independent child seed for a numbered stream.
constexpr std::uint64_t
derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept
{
  return hash_words({ seed, stream });
}

} // namespace deconv
