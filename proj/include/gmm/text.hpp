// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

// Text forms shared by the command line and the service.

#pragma once

#include <optional>
#include <string>

#include "gmm/core_maps.hpp"

namespace gmm {

/// 17 significant digits; negative zero prints as 0.
std::string format_number(double x);

/// "X,Y" or a bare real "X". Surrounding spaces are allowed, nothing else.
std::optional<Complex> parse_complex(const std::string& s) noexcept;

/// Whole-string decimal parses.
std::optional<double> parse_real(const std::string& s) noexcept;
std::optional<long> parse_integer(const std::string& s) noexcept;

}  // namespace gmm
