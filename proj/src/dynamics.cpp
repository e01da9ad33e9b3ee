// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

#include "gmm/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "gmm/geometry.hpp"

namespace gmm {
namespace {

constexpr double kInitialDelta = 1e-3;
constexpr int kDeltaHalvings = 10;
constexpr double kFixedSeedTolerance = 1e-10;
constexpr double kContractionFloor = 1e-13;
constexpr double kBackoffFloor = 1e-12;
constexpr double kRayFloor = 1e-3;

std::uint8_t channel(double x) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(x), 0L, 255L));
}

// 2^j t reduced mod 1, exact for dyadic t.
double doubled_turns(double t, int j) {
  const double x = std::ldexp(t, j);
  return x - std::floor(x);
}

Complex ray_target(double t, double rho, int j) {
  return std::polar(std::pow(rho, std::ldexp(1.0, j)), 2.0 * kPi * doubled_turns(t, j));
}

}  // namespace

const char* outcome_name(Outcome o) noexcept {
  switch (o) {
    case Outcome::Escaped: return "Escaped";
    case Outcome::AttractedToVPlus: return "AttractedToVPlus";
    case Outcome::FixedVMinus: return "FixedVMinus";
    case Outcome::Unresolved: return "Unresolved";
  }
  return "?";
}

Rgb orbit_color(const OrbitResult& r, bool minus_orbit, const Palette& pal) noexcept {
  if (r.bounded()) {
    const double e = std::max(r.entry_iter, 0);
    const std::uint8_t g = channel(std::min(pal.bounded_max, pal.bounded_gain * std::log1p(e)));
    return {g, g, g};
  }
  const double ramp = std::min(1.0, std::log1p(std::max(r.smooth_iter, 0.0)) / std::log1p(pal.escape_span));
  const std::uint8_t v = channel(pal.escape_floor + (pal.escape_ceiling - pal.escape_floor) * ramp);
  return minus_orbit ? Rgb{v, 0, 0} : Rgb{0, 0, v};
}

Rgb average(Rgb x, Rgb y) noexcept {
  return {static_cast<std::uint8_t>((x.r + y.r) / 2), static_cast<std::uint8_t>((x.g + y.g) / 2),
          static_cast<std::uint8_t>((x.b + y.b) / 2)};
}

std::optional<MapParams> SliceSpec::params_at(Complex point) const {
  switch (kind) {
    case SliceKind::FixedCrit:
      if (point == Complex{}) return std::nullopt;
      return MapParams::fixed_critical(n, point);
    case SliceKind::ASlice:
      if (point == Complex{}) return std::nullopt;
      return MapParams::general(n, point, constant);
    case SliceKind::BSlice:
      if (constant == Complex{}) return std::nullopt;
      return MapParams::general(n, constant, point);
    case SliceKind::Linear:
      if (point == Complex{}) return std::nullopt;
      return MapParams::general(n, point, constant * point);
  }
  return std::nullopt;
}

const char* slice_name(SliceKind k) noexcept {
  switch (k) {
    case SliceKind::FixedCrit: return "fixed-crit";
    case SliceKind::ASlice: return "a-slice";
    case SliceKind::BSlice: return "b-slice";
    case SliceKind::Linear: return "linear";
  }
  return "?";
}

std::optional<SliceKind> parse_slice(const std::string& s) noexcept {
  if (s == "fixed-crit") return SliceKind::FixedCrit;
  if (s == "a-slice") return SliceKind::ASlice;
  if (s == "b-slice") return SliceKind::BSlice;
  if (s == "linear") return SliceKind::Linear;
  return std::nullopt;
}

double attraction_radius(const MapParams& p) {
  const Complex v = p.v_plus();
  double delta = kInitialDelta;
  for (int h = 0; h <= kDeltaHalvings; ++h) {
    bool ok = true;
    for (int i = 0; i < 16 && ok; ++i) {
      const Complex z = v + delta * unit_turn(i, 16);
      ok = std::abs(p.apply(z) - v) < delta / 2.0;
    }
    if (ok) return delta;
    if (h < kDeltaHalvings) delta /= 2.0;
  }
  return delta;
}

OrbitResult iterate_orbit(const MapParams& p, Complex z0, int max_iter) {
  if (max_iter < 1) throw DomainError("iterate_orbit: max_iter must be >= 1");
  const AnnulusBounds ann = k_annulus(p);
  const bool sub = p.is_subfamily();
  const Complex v = p.v_plus();
  double delta = -1.0;

  OrbitResult out;
  Complex z = z0;
  for (int k = 0;; ++k) {
    const double r = std::abs(z);
    if (r > ann.outer || r < ann.inner) {
      out.outcome = Outcome::Escaped;
      out.iterations = k;
      out.final_value = z;
      out.pole = r <= kPoleRadius;
      out.smooth_iter = k;
      if (r > ann.outer) {
        const double f = std::log(std::log(r) / std::log(ann.outer)) / std::log(p.n());
        out.smooth_iter = k + 1.0 - std::clamp(f, 0.0, 1.0);
      }
      return out;
    }
    if (sub) {
      const double dist = std::abs(z - v);
      if (dist < kInitialDelta) {
        if (delta < 0.0) delta = attraction_radius(p);
        if (dist < delta) {
          const double next = std::abs(p.apply(z) - v);
          if (next < dist || next <= kContractionFloor * (1.0 + std::abs(v))) {
            out.outcome = Outcome::AttractedToVPlus;
            out.iterations = k;
            out.entry_iter = k;
            out.final_value = z;
            return out;
          }
        }
      }
    }
    if (k == 0 && std::abs(p.apply(z) - z) <= kFixedSeedTolerance * (1.0 + std::abs(z))) {
      out.outcome = Outcome::FixedVMinus;
      out.final_value = z;
      return out;
    }
    if (k == max_iter) {
      out.outcome = Outcome::Unresolved;
      out.iterations = k;
      out.final_value = z;
      return out;
    }
    z = p.apply(z);
  }
}

ParamClassification classify_parameter(const SliceSpec& slice, Complex point, int max_iter,
                                       const Palette& pal) {
  ParamClassification out;
  const std::optional<MapParams> p = slice.params_at(point);
  if (!p) {
    out.degenerate = true;
    out.color = pal.degenerate;
    return out;
  }
  if (p->is_subfamily()) {
    out.plus.outcome = Outcome::AttractedToVPlus;
    out.plus.entry_iter = 0;
    out.plus.final_value = p->v_plus();
  } else {
    out.plus = iterate_orbit(*p, p->v_plus(), max_iter);
  }
  out.minus = iterate_orbit(*p, p->v_minus(), max_iter);
  out.color = average(orbit_color(out.plus, false, pal), orbit_color(out.minus, true, pal));
  return out;
}

Complex boettcher_c2(const MapParams& p) {
  const double n = p.n();
  return n * n * ipow(p.v_plus(), p.n() - 2);
}

BoettcherValue boettcher_value(const MapParams& p, Complex z, double eps0, int max_iter) {
  if (!p.is_subfamily()) throw DomainError("boettcher_value: requires the subfamily");
  const Complex v = p.v_plus();
  const AnnulusBounds ann = k_annulus(p);
  std::vector<Complex> orbit{z};
  while (std::abs(orbit.back() - v) >= eps0) {
    if (static_cast<int>(orbit.size()) > max_iter) {
      throw NotInBasinError("boettcher_value: orbit did not reach v+ within budget");
    }
    if (!ann.contains(orbit.back())) {
      throw NotInBasinError("boettcher_value: orbit escapes");
    }
    orbit.push_back(p.apply(orbit.back()));
  }
  const int m = static_cast<int>(orbit.size()) - 1;
  int level = m;
  if (level > 0 && std::abs(orbit[level] - v) < kBackoffFloor * (1.0 + std::abs(v))) --level;

  const Complex c2 = boettcher_c2(p);
  const double n = p.n();
  const Complex d = orbit[level] - v;
  Complex phi = c2 * d - 0.5 * n * n * ipow(v, p.n() - 3) * d * d;

  BoettcherValue out;
  out.depth = m;
  out.modulus = phi == Complex{} ? 0.0 : std::exp(std::ldexp(std::log(std::abs(phi)), -level));
  for (int j = level - 1; j >= 0; --j) {
    const Complex root = std::sqrt(phi);
    const Complex estimate = c2 * (orbit[j] - v);
    const double d1 = std::abs(root - estimate);
    const double d2 = std::abs(-root - estimate);
    if (std::abs(d1 - d2) < 0.1 * std::max(d1, d2)) out.argument_reliable = false;
    phi = d1 <= d2 ? root : -root;
  }
  out.value = phi;
  return out;
}

Complex phi_j(int n, int j, Complex a, int max_iter) {
  if (n < 3) throw DomainError("phi_j: n must be >= 3");
  if (j < 1 || j > n - 1) throw DomainError("phi_j: j must lie in [1, n-1]");
  if (a == Complex{}) throw DomainError("phi_j: a must be nonzero");
  const MapParams p = MapParams::fixed_critical(n, a);
  const OrbitResult minus = iterate_orbit(p, p.v_minus(), max_iter);
  if (minus.outcome != Outcome::AttractedToVPlus) {
    throw OutsideComponentError(std::string("phi_j: v- orbit is ") + outcome_name(minus.outcome));
  }
  const std::optional<Complex> image = eval_map(p, p.v_minus());
  if (!image) throw OutsideComponentError("phi_j: v- is the pole");
  return boettcher_value(p, *image, 1e-8, max_iter).value;
}

std::vector<Complex> preimages(const MapParams& p, Complex w) {
  const Complex beta = w - p.b();
  const Complex disc = std::sqrt(beta * beta - 4.0 * p.a());
  Complex q = beta + disc;
  if (std::abs(beta - disc) > std::abs(q)) q = beta - disc;
  q /= 2.0;
  const Complex roots_u[2] = {q, p.a() / q};
  std::vector<Complex> out;
  out.reserve(2 * p.n());
  for (const Complex u : roots_u) {
    const Complex base = principal_root(u, p.n());
    for (int k = 0; k < p.n(); ++k) out.push_back(base * unit_turn(k, p.n()));
  }
  return out;
}

Complex internal_ray_point(const MapParams& p, double t, double rho, int m) {
  if (!p.is_subfamily()) throw DomainError("internal_ray_point: requires the subfamily");
  if (!(0.0 <= t && t < 1.0)) throw DomainError("internal_ray_point: t must lie in [0, 1)");
  if (!(0.0 < rho && rho < 1.0)) throw DomainError("internal_ray_point: rho must lie in (0, 1)");
  if (m < 1) throw DomainError("internal_ray_point: m must be >= 1");

  int level = 0;
  while (level < m && std::pow(rho, std::ldexp(1.0, level + 1)) >= kRayFloor) ++level;

  const Complex v = p.v_plus();
  const Complex c2 = boettcher_c2(p);
  const Complex terminal = ray_target(t, rho, level);
  Complex z = v + terminal / c2;
  for (int it = 0; it < 100; ++it) {
    const Complex err = boettcher_value(p, z).value - terminal;
    if (std::abs(err) <= 1e-15 + 1e-13 * std::abs(terminal)) break;
    z -= err / c2;
  }

  for (int j = level - 1; j >= 0; --j) {
    const Complex target = ray_target(t, rho, j);
    const Complex predicted = v + target / c2;
    std::vector<std::pair<double, Complex>> matches;
    for (const Complex c : preimages(p, z)) {
      try {
        if (std::abs(boettcher_value(p, c).value - target) < 0.5 * std::abs(target)) {
          matches.emplace_back(std::abs(c - predicted), c);
        }
      } catch (const NotInBasinError&) {
      }
    }
    if (matches.empty()) throw NotInBasinError("internal_ray_point: no preimage in the basin");
    std::sort(matches.begin(), matches.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    if (matches.size() > 1 && matches[1].first - matches[0].first <= 0.01 * matches[1].first) {
      throw AmbiguityError("internal_ray_point: two preimages equally near the prediction",
                           matches[0].second, matches[1].second);
    }
    z = matches[0].second;
  }
  return z;
}

}  // namespace gmm
