// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The deconv-adapt Authors

#pragma once

#include <stdexcept>
#include <string>

namespace deconv {

/// Bad input or configuration: violated preconditions, malformed files,
/// unknown keys. The CLI maps these to exit code 1.
class InvalidArgument : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// A computation that cannot produce a trustworthy number. The CLI maps
/// these to exit code 2.
class NumericalError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// The sample size is too small for a log-n driven formula (its base
/// went nonpositive).
class SampleSizeError : public NumericalError
{
public:
  using NumericalError::NumericalError;
};

/// Node doubling did not settle within the requested tolerance, or an
/// integrand tail is not negligible at the truncation point.
class QuadratureError : public NumericalError
{
public:
  using NumericalError::NumericalError;
};

/// An intermediate magnitude would leave the double range.
class OverflowError : public NumericalError
{
public:
  using NumericalError::NumericalError;
};

} // namespace deconv
