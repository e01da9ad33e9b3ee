// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

#include "gmm/geometry.hpp"

#include <cmath>
#include <functional>

namespace gmm {
namespace {

constexpr int kMaxFixedPointSteps = 200;
constexpr double kStepTolerance = 1e-12;
constexpr double kSpineTolerance = 1e-9;
constexpr double kCurveTolerance = 1e-8;

// Reduce an angle into (-pi, pi].
double wrap_angle(double x) {
  x = std::remainder(x, 2.0 * kPi);
  if (x <= -kPi) x += 2.0 * kPi;
  return x;
}

Complex root_or_zero(Complex a, int d) {
  return a == Complex{} ? Complex{} : principal_root(a, d);
}

Complex free_critical_value(int n, Complex a) {
  return principal_root(a, 2 * n) - 4.0 * principal_root(a, 2);
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Iterates a <- step(a) from seed until successive iterates agree.
Complex solve_fixed_point(const std::function<Complex(Complex)>& step, Complex seed,
                          const char* what) {
  Complex a = seed;
  for (int it = 1; it <= kMaxFixedPointSteps; ++it) {
    const Complex next = step(a);
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) {
      throw ConvergenceError(std::string(what) + ": iteration diverged", a, it);
    }
    if (std::abs(next - a) < kStepTolerance) return next;
    a = next;
  }
  throw ConvergenceError(std::string(what) + ": no convergence in 200 steps", a,
                         kMaxFixedPointSteps);
}

double critical_point_arg(int n, Complex a, int k) {
  return wrap_angle((principal_arg(a) + 2.0 * k * kPi) / (2 * n));
}

}  // namespace

bool PolarRegion::contains(Complex z) const noexcept {
  const double r = std::abs(z);
  if (!(modulus_lo < r && r < modulus_hi)) return false;
  return std::abs(wrap_angle(principal_arg(z) - arg_center)) < arg_half_width;
}

WBoundarySpec WBoundarySpec::standard(WCurve curve, int k) {
  WBoundarySpec spec;
  spec.k = k;
  spec.curve = curve;
  if (curve == WCurve::Beta || curve == WCurve::Tau) {
    spec.domain_lo = 0.0;
    spec.domain_hi = 2.0 * kPi;
  } else {
    spec.domain_lo = 0.0;
    spec.domain_hi = 2.0;
  }
  return spec;
}

Complex center_a_k(int n, int k) {
  if (n < 3) throw DomainError("center_a_k: n must be >= 3");
  if (k < 1 || k > 2 * n - 1) throw DomainError("center_a_k: k must lie in [1, 2n-1]");
  const Complex base = (1.0 - unit_turn(k, 2 * n)) / 4.0;
  return principal_power(base, 2.0 * n / (n - 1.0));
}

CenterRelation center_relation(int k) noexcept {
  return (k % 2 != 0) ? CenterRelation::VMinusFixed : CenterRelation::VMinusToVPlus;
}

Complex spine_point(std::optional<int> n, double theta) {
  const Complex e = std::polar(1.0, theta);
  const Complex cardioid = (1.0 + e) * (1.0 + e) / 16.0;
  if (!n) return cardioid;
  if (*n < 3) throw DomainError("spine_point: n must be >= 3");
  const int deg = 2 * *n;
  const Complex a = solve_fixed_point(
      [&](Complex a) {
        const Complex s = root_or_zero(a, deg) + e;
        return s * s / 16.0;
      },
      cardioid, "spine_point");
  if (a == Complex{} ||
      std::abs(std::abs(free_critical_value(*n, a)) - 1.0) >= kSpineTolerance) {
    throw ConvergenceError("spine_point: off-branch fixed point", a, 0);
  }
  return a;
}

std::vector<SpineSample> spine_polyline(std::optional<int> n, int samples) {
  if (samples < 1) throw DomainError("spine_polyline: samples must be >= 1");
  std::vector<SpineSample> out;
  out.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double theta = 2.0 * kPi * i / samples;
    try {
      out.push_back({theta, spine_point(n, theta), true});
    } catch (const ConvergenceError& e) {
      out.push_back({theta, e.last(), false});
    }
  }
  return out;
}

AnnulusBounds k_annulus(const MapParams& p) {
  const double abs_a = std::abs(p.a());
  if (p.is_subfamily() && abs_a < 1.0) {
    return {std::pow(abs_a, 1.0 / p.n()) / 2.0, 2.0, {}};
  }
  const double s = std::max({4.0, std::abs(p.b()), abs_a});
  return {std::pow(abs_a, 1.0 / p.n()) / s, s, {}};
}

RegimeThresholds regime_thresholds(int n) {
  if (n < 3) throw DomainError("regime_thresholds: n must be >= 3");
  auto h = [n](double x) { return std::sqrt(4.0 * x + std::pow(x, 1.0 / n)); };
  const double q = bisect([&](double x) { return h(x) - 4.0; }, 3.6, 4.0, 1e-12);
  const double rho = bisect([&](double x) { return h(x) - x; }, 4.0, 4.4, 1e-12);
  return {n, q, rho};
}

EllipseSpec critical_ellipse(const MapParams& p) {
  const double two_n = std::ldexp(1.0, p.n());
  const double abs_a = std::abs(p.a());
  return {p.b(), principal_arg(p.a()) / 2.0, two_n + abs_a / two_n, two_n - abs_a / two_n,
          {p.v_plus(), p.v_minus()}};
}

bool ellipse_contains(const MapParams& p, Complex z) {
  const EllipseSpec e = critical_ellipse(p);
  return std::abs(z - e.foci.first) + std::abs(z - e.foci.second) < 2.0 * e.semi_major;
}

PolarRegion u_prime_region(int n, Complex a, int k) {
  if (a == Complex{}) throw DomainError("u_prime_region: a must be nonzero");
  if (k < 0 || k >= 2 * n) throw DomainError("u_prime_region: k must lie in [0, 2n)");
  return {k, std::pow(std::abs(a), 1.0 / n) / 2.0, 2.0,
          (principal_arg(a) + 2.0 * k * kPi) / (2 * n), kPi / (2 * n)};
}

bool u_prime_contains(int n, Complex a, int k, Complex z) {
  return u_prime_region(n, a, k).contains(z);
}

double w_boundary_residual(const WBoundarySpec& spec, int n, Complex a) {
  const Complex vm = free_critical_value(n, a);
  switch (spec.curve) {
    case WCurve::Beta:
      return std::abs(std::abs(vm) - std::pow(std::abs(a), 1.0 / n) / 2.0);
    case WCurve::Tau:
      return std::abs(std::abs(vm) - 2.0);
    case WCurve::RhoPlus:
    case WCurve::RhoMinus: {
      const double sign = spec.curve == WCurve::RhoPlus ? 1.0 : -1.0;
      const double target = critical_point_arg(n, a, spec.k) + sign * kPi / (2 * n);
      return std::abs(wrap_angle(principal_arg(vm) - target));
    }
  }
  return 0.0;
}

Complex w_boundary_point(const WBoundarySpec& spec, int n, double param) {
  if (n < 3) throw DomainError("w_boundary_point: n must be >= 3");
  if (!(spec.domain_lo <= param && param <= spec.domain_hi)) {
    throw DomainError("w_boundary_point: parameter outside the curve domain");
  }
  const int deg = 2 * n;
  std::function<Complex(Complex)> step;
  Complex seed;
  switch (spec.curve) {
    case WCurve::Beta: {
      const Complex e = std::polar(1.0, param);
      step = [=](Complex a) {
        const Complex s = std::pow(std::abs(a), 1.0 / n) / 2.0 * e - root_or_zero(a, deg);
        return s * s / 16.0;
      };
      seed = (0.5 * e - 1.0) * (0.5 * e - 1.0) / 16.0;
      break;
    }
    case WCurve::Tau: {
      const Complex e = std::polar(1.0, param);
      step = [=](Complex a) {
        const Complex s = 2.0 * e - root_or_zero(a, deg);
        return s * s / 16.0;
      };
      seed = (2.0 * e - 1.0) * (2.0 * e - 1.0) / 16.0;
      break;
    }
    case WCurve::RhoPlus:
    case WCurve::RhoMinus: {
      if (param <= 0.0) throw DomainError("w_boundary_point: x must be > 0");
      const double sign = spec.curve == WCurve::RhoPlus ? 1.0 : -1.0;
      const int k = spec.k;
      step = [=](Complex a) {
        const double angle =
            (a == Complex{} ? k * kPi / n : critical_point_arg(n, a, k)) + sign * kPi / deg;
        const Complex s = std::polar(param, angle) - root_or_zero(a, deg);
        return s * s / 16.0;
      };
      const Complex e = std::polar(param, k * kPi / n + sign * kPi / deg);
      seed = (e - 1.0) * (e - 1.0) / 16.0;
      break;
    }
  }
  const Complex a = solve_fixed_point(step, seed, "w_boundary_point");
  if (a == Complex{} || w_boundary_residual(spec, n, a) >= kCurveTolerance) {
    throw ConvergenceError("w_boundary_point: off-branch fixed point", a, 0);
  }
  return a;
}

double vminus_bound_near_eighth(int n) {
  const Complex far = std::polar(std::sqrt(2.5), 19.0 * kPi / 20.0);
  const Complex near = std::polar(std::pow(3.0 / 32.0, 1.0 / (2.0 * n)), kPi / (20.0 * n));
  return std::abs(far + near);
}

std::pair<double, double> subfamily_b_bounds(int n, double abs_a) {
  const double lo = std::abs(std::pow(abs_a, 1.0 / (2 * n)) - 2.0 * std::sqrt(abs_a));
  const double hi = std::sqrt(4.0 * abs_a + std::pow(abs_a, 1.0 / n));
  return {lo, hi};
}

double outer_aux_g(int n, double x) {
  const double two_n = std::ldexp(1.0, n);
  return std::pow(x, 2 * n) - two_n / 2.0 * x + two_n * (two_n - 3.0);
}

double outer_aux_argmin(int n) {
  return std::pow(std::ldexp(1.0, n - 2) / n, 1.0 / (2 * n - 1));
}

}  // namespace gmm
