// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

// Orbit iteration, dual critical orbit classification, the Boettcher
// coordinate of the super-attracting fixed point v+ and the maps built on it.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gmm/core_maps.hpp"

namespace gmm {

class NotInBasinError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutsideComponentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AmbiguityError : public std::runtime_error {
 public:
  AmbiguityError(const std::string& what, Complex first, Complex second)
      : std::runtime_error(what), candidates_(first, second) {}
  const std::pair<Complex, Complex>& candidates() const noexcept { return candidates_; }

 private:
  std::pair<Complex, Complex> candidates_;
};

enum class Outcome { Escaped, AttractedToVPlus, FixedVMinus, Unresolved };

const char* outcome_name(Outcome o) noexcept;

struct OrbitResult {
  Outcome outcome = Outcome::Unresolved;
  int iterations = 0;
  int entry_iter = -1;
  Complex final_value{};
  bool pole = false;
  double smooth_iter = 0.0;  // fractional escape count, outer exits only

  bool bounded() const noexcept { return outcome != Outcome::Escaped; }
};

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Palette {
  Rgb degenerate{255, 255, 255};
  double bounded_gain = 14.0;  // gray level per unit of log(1 + entry_iter)
  double bounded_max = 110.0;
  double escape_span = 48.0;  // smooth escape count reaching full intensity
  double escape_floor = 110.0;
  double escape_ceiling = 255.0;
};

/// Color of one orbit: bounded orbits are gray-black, escaping orbits are
/// red (minus orbit) or blue (plus orbit).
Rgb orbit_color(const OrbitResult& r, bool minus_orbit, const Palette& pal) noexcept;

/// Channel-wise integer mean.
Rgb average(Rgb x, Rgb y) noexcept;

enum class SliceKind { FixedCrit, ASlice, BSlice, Linear };

/// How a plane point determines (a, b).
///   FixedCrit: a = point, b = subfamily_b(n, a)
///   ASlice:    a = point, b = constant
///   BSlice:    a = constant, b = point
///   Linear:    a = point, b = constant * a
struct SliceSpec {
  SliceKind kind = SliceKind::FixedCrit;
  int n = 3;
  Complex constant{};

  /// std::nullopt when the point gives a = 0.
  std::optional<MapParams> params_at(Complex point) const;
};

const char* slice_name(SliceKind k) noexcept;
std::optional<SliceKind> parse_slice(const std::string& s) noexcept;

struct ParamClassification {
  OrbitResult plus;
  OrbitResult minus;
  Rgb color;
  bool degenerate = false;
};

/// Radius of the disk around v+ on which r contracts by half, starting from
/// 1e-3 and halving up to 10 times.
double attraction_radius(const MapParams& p);

/// Iterates z0. Steps at each index k: escape test against k_annulus, then
/// (subfamily only) attraction to v+, then at k = 0 the fixed-seed test,
/// then the budget.
OrbitResult iterate_orbit(const MapParams& p, Complex z0, int max_iter);

ParamClassification classify_parameter(const SliceSpec& slice, Complex point, int max_iter,
                                       const Palette& pal = {});

struct BoettcherValue {
  Complex value{};
  double modulus = 0.0;
  int depth = 0;
  bool argument_reliable = true;
};

/// phi_a(z) for the subfamily, normalized by phi'(v+) = c2. Throws
/// NotInBasinError when the orbit of z does not reach the eps0-disk around v+.
BoettcherValue boettcher_value(const MapParams& p, Complex z, double eps0 = 1e-8,
                               int max_iter = 2000);

/// n^2 v+^{n-2}, half the second derivative of r at v+.
Complex boettcher_c2(const MapParams& p);

/// Phi_j(a) = phi_a(r(v-)). Throws OutsideComponentError when v- is not
/// attracted to v+.
Complex phi_j(int n, int j, Complex a, int max_iter = 2000);

/// The 2n solutions z of r(z) = w.
std::vector<Complex> preimages(const MapParams& p, Complex w);

/// Point with Boettcher value rho e^{2 pi i t}, pulled back from near v+.
/// At most m pull-backs; fewer when rho^{2^m} would leave the well-resolved
/// range near v+.
Complex internal_ray_point(const MapParams& p, double t, double rho, int m);

}  // namespace gmm
