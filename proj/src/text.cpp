// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

#include "gmm/text.hpp"

#include <fmt/format.h>

#include <cerrno>
#include <cmath>
#include <cstdlib>

namespace gmm {
namespace {

std::string trim(const std::string& s) {
  const size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;
  return fmt::format("{:.17g}", x);
}

std::optional<double> parse_real(const std::string& s) noexcept {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (errno == ERANGE || end != t.c_str() + t.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long> parse_integer(const std::string& s) noexcept {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (errno == ERANGE || end != t.c_str() + t.size()) return std::nullopt;
  return v;
}

std::optional<Complex> parse_complex(const std::string& s) noexcept {
  const size_t comma = s.find(',');
  if (comma == std::string::npos) {
    const auto re = parse_real(s);
    if (!re) return std::nullopt;
    return Complex{*re, 0.0};
  }
  const auto re = parse_real(s.substr(0, comma));
  const auto im = parse_real(s.substr(comma + 1));
  if (!re || !im) return std::nullopt;
  return Complex{*re, *im};
}

}  // namespace gmm
