// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

// Exact formulas for the generalized McMullen family
//
//     R_{n,a,b}(z) = z^n + a / z^n + b
//
// and its fixed-critical-point subfamily r_{n,a}, where b is chosen so that
// the critical value v+ = b + 2 sqrt(a) coincides with the principal critical
// point a^{1/2n}. Every root in this library is taken with Arg in (-pi, pi].

#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gmm {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// |z| at or below this is treated as the pole at 0.
inline constexpr double kPoleRadius = 1e-300;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Family { General, FixedCritSubfamily };

/// Arg(z) in (-pi, pi]. The whole negative real axis, including a negative
/// zero imaginary part, maps to +pi.
double principal_arg(Complex z) noexcept;

/// |a|^{1/d} e^{i Arg(a)/d}. Throws DomainError for a == 0 or d < 1.
Complex principal_root(Complex a, int d);

/// exp(p (ln|z| + i Arg z)). Throws DomainError for z == 0.
Complex principal_power(Complex z, double p);

/// e^{2 pi i k / m}, exact on multiples of a quarter turn.
Complex unit_turn(long k, long m) noexcept;

/// z^n by repeated squaring (n >= 0).
inline Complex ipow(Complex z, int n) noexcept {
  Complex result{1.0, 0.0};
  while (n > 0) {
    if (n & 1) result *= z;
    z *= z;
    n >>= 1;
  }
  return result;
}

/// One member of the family.
class MapParams {
 public:
  /// R_{n,a,b}; throws DomainError unless n >= 3 and a != 0.
  static MapParams general(int n, Complex a, Complex b);
  /// r_{n,a} with b = subfamily_b(n, a).
  static MapParams fixed_critical(int n, Complex a);

  int n() const noexcept { return n_; }
  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  Family family() const noexcept { return family_; }
  bool is_subfamily() const noexcept { return family_ == Family::FixedCritSubfamily; }

  /// b + 2 sqrt(a) and b - 2 sqrt(a).
  Complex v_plus() const noexcept { return b_ + 2.0 * sqrt_a_; }
  Complex v_minus() const noexcept { return b_ - 2.0 * sqrt_a_; }

  /// The map itself, without pole handling. Hot-loop entry point.
  Complex apply(Complex z) const noexcept {
    const Complex zn = ipow(z, n_);
    return zn + a_ / zn + b_;
  }

 private:
  MapParams(int n, Complex a, Complex b, Family family);

  int n_;
  Complex a_;
  Complex b_;
  Complex sqrt_a_;
  Family family_;
};

struct CriticalSet {
  std::vector<Complex> points;  // w_0 .. w_{2n-1}
  Complex v_plus;
  Complex v_minus;
  double psi;  // Arg(a)
};

/// R(z); std::nullopt signals the pole (|z| <= kPoleRadius).
std::optional<Complex> eval_map(const MapParams& p, Complex z);

/// principal_root(a, 2n) - 2 principal_root(a, 2).
Complex subfamily_b(int n, Complex a);

/// All 2n critical points w_k = |a|^{1/2n} e^{i(psi + 2k pi)/2n}.
/// Even k map to v+, odd k to v-.
CriticalSet critical_set(const MapParams& p);

/// h_a(z) = a^{1/n} / z; R(h_a(z)) = R(z). Throws DomainError for z == 0.
Complex involution(const MapParams& p, Complex z);

}  // namespace gmm
