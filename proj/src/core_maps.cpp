// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

#include "gmm/core_maps.hpp"

#include <cmath>

namespace gmm {

double principal_arg(Complex z) noexcept {
  if (z.imag() == 0.0 && z.real() < 0.0) return kPi;
  return std::atan2(z.imag(), z.real());
}

Complex principal_root(Complex a, int d) {
  if (d < 1) throw DomainError("principal_root: degree must be >= 1");
  if (a == Complex{}) throw DomainError("principal_root: a must be nonzero");
  if (d == 1) return a;
  if (d == 2) {
    // std::sqrt agrees with the convention except on the negative real axis
    // with a -0.0 imaginary part.
    if (a.imag() == 0.0 && a.real() < 0.0) return {0.0, std::sqrt(-a.real())};
    return std::sqrt(a);
  }
  return std::polar(std::pow(std::abs(a), 1.0 / d), principal_arg(a) / d);
}

Complex principal_power(Complex z, double p) {
  if (z == Complex{}) throw DomainError("principal_power: base must be nonzero");
  return std::polar(std::pow(std::abs(z), p), p * principal_arg(z));
}

Complex unit_turn(long k, long m) noexcept {
  long r = k % m;
  if (r < 0) r += m;
  if ((4 * r) % m == 0) {
    switch ((4 * r) / m) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / static_cast<double>(m));
}

MapParams::MapParams(int n, Complex a, Complex b, Family family)
    : n_(n), a_(a), b_(b), sqrt_a_(principal_root(a, 2)), family_(family) {}

MapParams MapParams::general(int n, Complex a, Complex b) {
  if (n < 3) throw DomainError("MapParams: n must be >= 3");
  if (a == Complex{}) throw DomainError("MapParams: a must be nonzero");
  return MapParams(n, a, b, Family::General);
}

MapParams MapParams::fixed_critical(int n, Complex a) {
  if (n < 3) throw DomainError("MapParams: n must be >= 3");
  return MapParams(n, a, subfamily_b(n, a), Family::FixedCritSubfamily);
}

std::optional<Complex> eval_map(const MapParams& p, Complex z) {
  if (std::abs(z) <= kPoleRadius) return std::nullopt;
  return p.apply(z);
}

Complex subfamily_b(int n, Complex a) {
  if (n < 3) throw DomainError("subfamily_b: n must be >= 3");
  return principal_root(a, 2 * n) - 2.0 * principal_root(a, 2);
}

CriticalSet critical_set(const MapParams& p) {
  const int n = p.n();
  const double psi = principal_arg(p.a());
  const double mod = std::pow(std::abs(p.a()), 1.0 / (2 * n));
  CriticalSet out;
  out.psi = psi;
  out.points.reserve(2 * n);
  for (int k = 0; k < 2 * n; ++k) {
    out.points.push_back(std::polar(mod, (psi + 2.0 * k * kPi) / (2 * n)));
  }
  out.v_plus = p.v_plus();
  out.v_minus = p.v_minus();
  return out;
}

Complex involution(const MapParams& p, Complex z) {
  if (z == Complex{}) throw DomainError("involution: z must be nonzero");
  return principal_root(p.a(), p.n()) / z;
}

}  // namespace gmm
