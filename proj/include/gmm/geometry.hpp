// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

// Closed-form loci and regions of the family: component centers, spines,
// annuli containing the filled Julia set, regime thresholds, the critical
// value ellipse, the polar rectangles U'_{a,k} and the W_k boundary curves.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gmm/core_maps.hpp"

namespace gmm {

/// Raised by the implicit-curve solvers. Carries the last iterate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, Complex last, int iterations)
      : std::runtime_error(what), last_(last), iterations_(iterations) {}
  Complex last() const noexcept { return last_; }
  int iterations() const noexcept { return iterations_; }

 private:
  Complex last_;
  int iterations_;
};

struct AnnulusBounds {
  double inner;  // t
  double outer;  // s
  Complex center{0.0, 0.0};

  bool contains(Complex z) const noexcept {
    const double r = std::abs(z - center);
    return inner < r && r < outer;
  }
};

struct RegimeThresholds {
  int n;
  double q_n;    // sqrt(4q + q^{1/n}) = 4
  double rho_n;  // sqrt(4x + x^{1/n}) = x
};

struct EllipseSpec {
  Complex center;
  double rotation;
  double semi_major;
  double semi_minor;
  std::pair<Complex, Complex> foci;  // (v+, v-)
};

struct PolarRegion {
  int k;
  double modulus_lo;
  double modulus_hi;
  double arg_center;
  double arg_half_width;

  bool contains(Complex z) const noexcept;
};

enum class WCurve { Beta, Tau, RhoPlus, RhoMinus };

struct WBoundarySpec {
  int k = 0;
  WCurve curve = WCurve::Tau;
  double domain_lo = 0.0;
  double domain_hi = 0.0;

  /// Standard parameter domain: theta in [0, 2pi] for beta/tau, x in (0, 2] for rho.
  static WBoundarySpec standard(WCurve curve, int k = 0);
};

/// a_k = ((1 - e^{ik pi/n}) / 4)^{2n/(n-1)}, 1 <= k <= 2n-1.
Complex center_a_k(int n, int k);

/// Relation expected at a_k: odd k fix v-, even k send v- to v+.
enum class CenterRelation { VMinusFixed, VMinusToVPlus };
CenterRelation center_relation(int k) noexcept;

/// Point on the spine S_n (n finite) or the cardioid S_inf (n == nullopt).
/// Finite n solves a = (a^{1/2n} + e^{i theta})^2 / 16 by fixed-point
/// iteration; throws ConvergenceError after 200 steps or when the limit is
/// not a point with |v-(a)| = 1 (the squared equation also admits the
/// opposite square-root branch).
Complex spine_point(std::optional<int> n, double theta);

struct SpineSample {
  double theta;
  Complex a;
  bool valid;  // false: off-branch or not converged, a holds the last iterate
};

/// `samples` points at theta_i = 2 pi i / samples.
std::vector<SpineSample> spine_polyline(std::optional<int> n, int samples);

/// Annulus containing K(R_{n,a,b}); tightened to (|a|^{1/n}/2, 2) for the
/// subfamily when |a| < 1.
AnnulusBounds k_annulus(const MapParams& p);

RegimeThresholds regime_thresholds(int n);

/// Semi-axes 2^n +- |a| / 2^n, foci at v+-.
EllipseSpec critical_ellipse(const MapParams& p);
bool ellipse_contains(const MapParams& p, Complex z);

PolarRegion u_prime_region(int n, Complex a, int k);
bool u_prime_contains(int n, Complex a, int k, Complex z);

/// Solves the implicit W_k boundary equation at `param`. Throws
/// ConvergenceError on non-convergence or when the solution does not carry
/// the curve's defining property of v-(a).
Complex w_boundary_point(const WBoundarySpec& spec, int n, double param);

/// Residual of the defining property of `spec` at parameter a.
double w_boundary_residual(const WBoundarySpec& spec, int n, Complex a);

/// Upper bound for |v-| when |a - 1/8| < 1/32:
/// | sqrt(5/2) e^{i 19pi/20} + (3/32)^{1/2n} e^{i pi/20n} |.
double vminus_bound_near_eighth(int n);

/// Lower and upper bounds for |b_{n,0}(a)|.
std::pair<double, double> subfamily_b_bounds(int n, double abs_a);

/// g_n(x) = x^{2n} - 2^{n-1} x + 2^n (2^n - 3) and its minimizer on x > 0.
double outer_aux_g(int n, double x);
double outer_aux_argmin(int n);

}  // namespace gmm
