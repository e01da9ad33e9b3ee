// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

#include "gmm/verify.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "gmm/core_maps.hpp"
#include "gmm/dynamics.hpp"
#include "gmm/geometry.hpp"
#include "gmm/parallel.hpp"
#include "gmm/render.hpp"

namespace gmm {
namespace {

using Range = std::pair<int, int>;

std::string num(double x) { return fmt::format("{:.17g}", x); }
std::string cnum(Complex z) { return fmt::format("({:.17g},{:.17g})", z.real(), z.imag()); }
std::string nkey(int n) { return fmt::format("n={:03d}", n); }

// Independent stream per (seed, n, salt), so cases do not depend on order.
class Sampler {
 public:
  Sampler(std::uint64_t seed, int n, int salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(salt)};
    rng_.seed(seq);
  }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double angle() { return uniform(-kPi, kPi); }
  // Modulus log-uniform in [lo, hi], argument uniform.
  Complex log_polar(double lo, double hi) {
    const double r = std::exp(uniform(std::log(lo), std::log(hi)));
    return std::polar(r, angle());
  }
  // Uniform in the disk of radius r.
  Complex disk(double r) { return std::polar(r * std::sqrt(uniform(0.0, 1.0)), angle()); }

 private:
  std::mt19937_64 rng_;
};

int ns(const Range& r) { return r.second - r.first + 1; }

int even_center_index(int n) { return n % 2 == 0 ? n : n + 1; }

double rel(Complex got, Complex want) { return std::abs(got - want) / (1.0 + std::abs(want)); }

void add(VerificationReport& rep, std::string key, std::string input, double residual, bool pass) {
  rep.cases.push_back({std::move(key), std::move(input), residual, pass});
}

void suite_fixed_point(const SuiteConfig& cfg, Range range, VerificationReport& rep) {
  const int samples = cfg.samples > 0 ? cfg.samples : 200;
  for (int n = range.first; n <= range.second; ++n) {
    Sampler s(cfg.seed, n, 1);
    double worst = 0.0;
    Complex worst_a{};
    for (int i = 0; i < samples; ++i) {
      const Complex a = s.log_polar(0.01, 1.0);
      const MapParams p = MapParams::fixed_critical(n, a);
      const double r = rel(p.apply(p.v_plus()), p.v_plus());
      if (r >= worst) worst = r, worst_a = a;
    }
    add(rep, nkey(n), fmt::format("samples={} |a| in [0.01,1] worst_a={}", samples, cnum(worst_a)),
        worst, worst < 1e-10);
  }
}

void suite_critical_parity(const SuiteConfig& cfg, Range range, VerificationReport& rep) {
  const int samples = cfg.samples > 0 ? cfg.samples : 200;
  for (int n = range.first; n <= range.second; ++n) {
    Sampler s(cfg.seed, n, 2);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const MapParams p = MapParams::general(n, s.log_polar(0.01, 10.0), s.disk(2.0));
      const CriticalSet cs = critical_set(p);
      for (int k = 0; k < 2 * n; ++k) {
        const Complex target = k % 2 == 0 ? cs.v_plus : cs.v_minus;
        worst = std::max(worst, rel(p.apply(cs.points[k]), target));
      }
    }
    add(rep, nkey(n), fmt::format("samples={} general (a,b)", samples), worst, worst <= 1e-10);
  }
}

void suite_c_patterns(const SuiteConfig&, Range range, VerificationReport& rep) {
  for (int n = range.first; n <= range.second; ++n) {
    for (int k = 1; k <= 2 * n - 1; ++k) {
      const Complex a = center_a_k(n, k);
      const MapParams p = MapParams::fixed_critical(n, a);
      const bool odd = center_relation(k) == CenterRelation::VMinusFixed;
      const Complex target = odd ? p.v_minus() : p.v_plus();
      const double r = rel(p.apply(p.v_minus()), target);
      add(rep, fmt::format("{} k={:02d}", nkey(n), k),
          fmt::format("a={} relation={}", cnum(a), odd ? "v- fixed" : "v- -> v+"), r, r < 1e-9);
    }
  }
  if (range.first <= 3 && 3 <= range.second) {
    const MapParams p = MapParams::fixed_critical(3, 0.125);
    const double r = std::max(std::abs(p.b()), std::abs(p.apply(p.v_minus()) - p.v_minus()));
    add(rep, "n=003 exact", "a=1/8 b=0", r, r < 1e-12);
  }
}

void suite_involution(const SuiteConfig& cfg, Range range, VerificationReport& rep) {
  const int total = cfg.samples > 0 ? cfg.samples : 10000;
  for (int n = range.first; n <= range.second; ++n) {
    const int idx = n - range.first;
    const int samples = total / ns(range) + (idx < total % ns(range) ? 1 : 0);
    Sampler s(cfg.seed, n, 4);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const MapParams p = MapParams::general(n, s.log_polar(0.01, 10.0), s.disk(2.0));
      const Complex z = s.log_polar(1e-2, 1e2);
      const Complex rz = p.apply(z);
      worst = std::max(worst, std::abs(p.apply(involution(p, z)) - rz) / (1.0 + std::abs(rz)));
    }
    add(rep, nkey(n), fmt::format("samples={} |z| in [0.01,100]", samples), worst, worst < 1e-9);
  }
}

void suite_sizeofb(const SuiteConfig& cfg, Range range, VerificationReport& rep) {
  const int samples = cfg.samples > 0 ? cfg.samples : 1000;
  for (int n = range.first; n <= range.second; ++n) {
    Sampler s(cfg.seed, n, 5);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const Complex a = s.log_polar(1e-4, 1e2);
      const double b = std::abs(subfamily_b(n, a));
      const auto [lo, hi] = subfamily_b_bounds(n, std::abs(a));
      worst = std::max(worst, std::max({0.0, lo - b, b - hi}) / (1.0 + hi));
    }
    add(rep, nkey(n), fmt::format("samples={} |a| in [1e-4,100]", samples), worst, worst <= 1e-12);
  }
}

void suite_k_annulus(const SuiteConfig& cfg, Range range, VerificationReport& rep) {
  const int params = cfg.samples > 0 ? cfg.samples : 50;
  const int grid = cfg.grid > 0 ? cfg.grid : 200;
  constexpr int kSteps = 500;
  std::vector<CaseRecord> cases(params);
  parallel_for(params, cfg.workers, 1, [&](int idx) {
    const int n = range.first + idx % ns(range);
    Sampler s(cfg.seed, idx, 6);
    Complex a = s.log_polar(0.01, 1.0);
    if (std::abs(a) >= 1.0) a *= 0.999;
    const Complex b = subfamily_b(n, a);
    const MapParams general = MapParams::general(n, a, b);
    const AnnulusBounds outer = k_annulus(general);
    const AnnulusBounds inner = k_annulus(MapParams::fixed_critical(n, a));
    int bounded = 0;
    int violations = 0;
    std::vector<Complex> orbit;
    orbit.reserve(kSteps + 1);
    for (int j = 0; j < grid; ++j) {
      for (int i = 0; i < grid; ++i) {
        Complex z{-4.0 + 8.0 * (i + 0.5) / grid, 4.0 - 8.0 * (j + 0.5) / grid};
        orbit.clear();
        bool escaped = false;
        for (int k = 0; k <= kSteps; ++k) {
          if (!outer.contains(z)) {
            escaped = true;
            break;
          }
          orbit.push_back(z);
          z = general.apply(z);
        }
        if (escaped) continue;
        ++bounded;
        for (const Complex w : orbit) {
          if (!inner.contains(w)) {
            ++violations;
            break;
          }
        }
      }
    }
    cases[idx] = {fmt::format("p={:03d} {}", idx, nkey(n)),
                  fmt::format("a={} grid={} bounded_seeds={}", cnum(a), grid, bounded),
                  static_cast<double>(violations), violations == 0};
  });
  rep.cases = std::move(cases);
}

void suite_regime(const SuiteConfig&, Range range, VerificationReport& rep) {
  auto h = [](int n, double x) { return std::sqrt(4.0 * x + std::pow(x, 1.0 / n)); };
  std::vector<RegimeThresholds> all;
  for (int n = range.first; n <= range.second; ++n) {
    const RegimeThresholds t = regime_thresholds(n);
    all.push_back(t);
    const double r = std::max(std::abs(h(n, t.q_n) - 4.0), std::abs(h(n, t.rho_n) - t.rho_n));
    const bool bracketed = 3.6 < t.q_n && t.q_n < 4.0 && 4.0 < t.rho_n && t.rho_n < 4.4;
    add(rep, nkey(n), fmt::format("q={} rho={}", num(t.q_n), num(t.rho_n)), r, bracketed && r < 1e-9);
    if (n == 3) {
      const double d = std::max(std::abs(t.q_n - 3.6163), std::abs(t.rho_n - 4.3739));
      add(rep, "n=003 reference", "q_3 ~ 3.6163 rho_3 ~ 4.3739 tol 5e-4", d, d <= 5e-4);
    }
  }
  int breaks = 0;
  for (size_t i = 1; i < all.size(); ++i) {
    if (!(all[i].q_n > all[i - 1].q_n) || !(all[i].rho_n < all[i - 1].rho_n)) ++breaks;
  }
  add(rep, "trend", "q_n increasing, rho_n decreasing", breaks, breaks == 0);
}

void suite_spine(const SuiteConfig& cfg, Range range, VerificationReport& rep) {
  const int samples = cfg.samples > 0 ? cfg.samples : 64;
  for (int n = range.first; n <= range.second; ++n) {
    int valid = 0;
    double worst = 0.0;
    for (const SpineSample& s : spine_polyline(n, samples)) {
      if (!s.valid) continue;
      ++valid;
      const Complex vm = MapParams::fixed_critical(n, s.a).v_minus();
      worst = std::max(worst, std::abs(std::abs(vm) - 1.0));
    }
    add(rep, nkey(n), fmt::format("samples={} on_branch={}", samples, valid), worst,
        valid > 0 && worst < 1e-8);
  }
  const double top = std::abs(spine_point(std::nullopt, 0.0) - 0.25);
  const double cusp = std::abs(spine_point(std::nullopt, kPi));
  add(rep, "n=inf theta=0", "expect 1/4", top, top < 1e-15);
  add(rep, "n=inf theta=pi", "expect 0", cusp, cusp < 1e-15);
}

void suite_ellipse(const SuiteConfig& cfg, Range range, VerificationReport& rep) {
  const int samples = cfg.samples > 0 ? cfg.samples : 100;
  for (int n = range.first; n <= range.second; ++n) {
    Sampler s(cfg.seed, n, 8);
    int accepted = 0;
    int outside = 0;
    double focal = 0.0;
    double fill = 0.0;
    for (int attempt = 0; attempt < 100000 && accepted < samples; ++attempt) {
      const Complex a = s.log_polar(1e-3, 0.999);
      const MapParams p = MapParams::fixed_critical(n, a);
      if (std::abs(p.v_minus()) > 2.0) continue;
      ++accepted;
      const EllipseSpec e = critical_ellipse(p);
      const double c = 2.0 * std::sqrt(std::abs(a));
      focal = std::max(focal, std::abs(std::sqrt((e.semi_major - e.semi_minor) *
                                                 (e.semi_major + e.semi_minor)) - c) / (1.0 + c));
      for (int i = 0; i < 64; ++i) {
        const Complex z = 2.0 * unit_turn(i, 64);
        if (!ellipse_contains(p, z)) ++outside;
        fill = std::max(fill, (std::abs(z - e.foci.first) + std::abs(z - e.foci.second)) /
                                  (2.0 * e.semi_major));
      }
    }
    add(rep, nkey(n),
        fmt::format("params={} circle_points_outside={} max_focal_ratio={}", accepted, outside,
                    num(fill)),
        focal, accepted == samples && outside == 0 && focal < 1e-9);
  }
  rep.notes.push_back("semi-axes 2^n +- |a|/2^n, which places the foci at v+ and v-");
}

void suite_outer_aux(const SuiteConfig&, Range range, VerificationReport& rep) {
  for (int n = range.first; n <= range.second; ++n) {
    double min_g = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 4000; ++i) min_g = std::min(min_g, outer_aux_g(n, 4.0 * i / 4000));
    const double xn = outer_aux_argmin(n);
    min_g = std::min(min_g, outer_aux_g(n, xn));
    const double scale = std::ldexp(1.0, n - 1);
    auto dg = [n, scale](double x) { return 2.0 * n * std::pow(x, 2 * n - 1) - scale; };
    const bool sign_change = dg(xn - 1e-6) < 0.0 && dg(xn + 1e-6) > 0.0;
    const double r = std::abs(dg(xn)) / scale;
    add(rep, nkey(n), fmt::format("min_g={} x_n={}", num(min_g), num(xn)), r,
        min_g > 0.0 && sign_change && r < 1e-9);
  }
}

void suite_ln_table(const SuiteConfig& cfg, Range, VerificationReport& rep) {
  const std::pair<int, double> table[] = {{3, 0.95}, {4, 0.87}, {5, 0.82}, {6, 0.8},
                                          {7, 0.77}, {10, 0.73}, {15, 0.7}, {25, 0.66},
                                          {50, 0.64}, {100, 0.63}};
  const int samples = cfg.samples > 0 ? cfg.samples : 2000;
  for (const auto& [n, bound] : table) {
    const double l = vminus_bound_near_eighth(n);
    add(rep, nkey(n), fmt::format("L(n) < {}", bound), l, l < bound);
    Sampler s(cfg.seed, n, 10);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const Complex a = 0.125 + s.disk(1.0 / 32.0);
      worst = std::max(worst, std::abs(MapParams::fixed_critical(n, a).v_minus()));
    }
    add(rep, nkey(n) + " sampled", fmt::format("max |v-| over {} a with |a-1/8|<1/32 vs L(n)", samples),
        worst, worst <= l);
  }
  const double linf = std::abs(std::polar(std::sqrt(2.5), 19.0 * kPi / 20.0) + 1.0);
  add(rep, "n=inf", "L < 0.62", linf, linf < 0.62);
  const double l3 = vminus_bound_near_eighth(3);
  add(rep, "n=003 window", "0.93 < L(3) < 0.95", l3, 0.93 < l3 && l3 < 0.95);
}

// Bounded fixed-crit parameters on a square grid of half-width `half`,
// restricted to |a| <= half, must satisfy `ok`.
template <typename Pred>
void bounded_locus_cases(const SuiteConfig& cfg, Range range, double half, const char* what,
                         Pred ok, VerificationReport& rep) {
  const int grid = cfg.grid > 0 ? cfg.grid : 400;
  std::optional<int> smallest;
  for (int n = range.first; n <= range.second; ++n) {
    const Viewport vp = Viewport::square({0.0, 0.0}, 2.0 * half, grid);
    const std::vector<std::uint8_t> mask =
        bounded_mask({SliceKind::FixedCrit, n, {}}, vp, cfg.budget, cfg.workers);
    int bounded = 0;
    int violations = 0;
    for (int j = 0; j < grid; ++j) {
      for (int i = 0; i < grid; ++i) {
        const Complex a = vp.pixel_center(i, j);
        if (std::abs(a) > half || !mask[static_cast<size_t>(j) * grid + i]) continue;
        ++bounded;
        if (!ok(a)) ++violations;
      }
    }
    if (violations == 0 && !smallest) smallest = n;
    add(rep, nkey(n), fmt::format("grid={} budget={} bounded={} region={}", grid, cfg.budget, bounded, what),
        violations, violations == 0);
  }
  rep.notes.push_back(smallest ? fmt::format("smallest n in range with zero violations: {}", *smallest)
                               : std::string("no n in range with zero violations"));
}

void suite_m_annulus(const SuiteConfig& cfg, Range range, VerificationReport& rep) {
  bounded_locus_cases(cfg, range, 0.6, "0.028<|a-1/8|<0.40", [](Complex a) {
    const double d = std::abs(a - 0.125);
    return 0.028 < d && d < 0.40;
  }, rep);
}

void suite_m_disk(const SuiteConfig& cfg, Range range, VerificationReport& rep) {
  bounded_locus_cases(cfg, range, 1.0, "|a|<0.55", [](Complex a) { return std::abs(a) < 0.55; }, rep);
}

// Random points of the basin of v+ with Boettcher modulus at most 0.95.
std::vector<Complex> basin_samples(const MapParams& p, int count, Sampler& s) {
  std::vector<Complex> out;
  const double radius = 1.0 / std::abs(boettcher_c2(p));
  for (int attempt = 0; attempt < 100 * count && static_cast<int>(out.size()) < count; ++attempt) {
    const Complex z = p.v_plus() + s.disk(radius);
    if (iterate_orbit(p, z, 2000).outcome != Outcome::AttractedToVPlus) continue;
    if (boettcher_value(p, z).modulus <= 0.95) out.push_back(z);
  }
  return out;
}

void suite_boettcher(const SuiteConfig& cfg, Range range, VerificationReport& rep) {
  const int samples = cfg.samples > 0 ? cfg.samples : 100;
  for (int n = range.first; n <= range.second; ++n) {
    const int k = even_center_index(n);
    const Complex a = center_a_k(n, k);
    const MapParams p = MapParams::fixed_critical(n, a);
    Sampler s(cfg.seed, n, 13);
    const std::vector<Complex> zs = basin_samples(p, samples, s);
    double conj = 0.0;
    double modulus = 0.0;
    for (const Complex z : zs) {
      const BoettcherValue bz = boettcher_value(p, z);
      conj = std::max(conj, std::abs(boettcher_value(p, p.apply(z)).value - bz.value * bz.value));
      if (bz.argument_reliable) modulus = std::max(modulus, std::abs(bz.modulus - std::abs(bz.value)));
    }
    const std::string where = fmt::format("a=a_{}", k);
    add(rep, nkey(n) + " conjugacy", fmt::format("{} basin_points={}", where, zs.size()), conj,
        static_cast<int>(zs.size()) == samples && conj < 1e-6);
    add(rep, nkey(n) + " modulus", where, modulus, modulus < 1e-9);

    const Complex v = p.v_plus();
    const double step = 1e-4;
    const Complex fd = (p.apply(v + step) - 2.0 * p.apply(v) + p.apply(v - step)) / (step * step);
    const Complex c2 = boettcher_c2(p);
    const double c2_rel = std::abs(c2 - fd / 2.0) / std::abs(c2);
    add(rep, nkey(n) + " c2", fmt::format("{} c2={}", where, cnum(c2)), c2_rel, c2_rel < 1e-6);

    const double center = std::abs(phi_j(n, k / 2, a));
    add(rep, nkey(n) + " center", where, center, center < 1e-8);
  }
}

std::string turns_label(double t) {
  const std::pair<double, const char*> known[] = {{0.0, "0"}, {0.125, "1/8"}, {1.0 / 3.0, "1/3"},
                                                  {0.5, "1/2"}, {5.0 / 7.0, "5/7"}};
  for (const auto& [v, s] : known) {
    if (v == t) return s;
  }
  return num(t);
}

void suite_ray_doubling(const SuiteConfig&, Range range, VerificationReport& rep) {
  const double ts[] = {0.0, 0.125, 1.0 / 3.0, 0.5, 5.0 / 7.0};
  constexpr double kRho = 0.9;
  constexpr int kDepth = 10;
  for (int n = range.first; n <= range.second; ++n) {
    const int k = even_center_index(n);
    const MapParams p = MapParams::fixed_critical(n, center_a_k(n, k));
    for (const double t : ts) {
      const std::string key = fmt::format("{} t={:.6f}", nkey(n), t);
      const std::string input = fmt::format("a=a_{} t={} rho={}", k, turns_label(t), kRho);
      const Complex z = internal_ray_point(p, t, kRho, kDepth);
      const double t2 = std::fmod(2.0 * t, 1.0);
      const Complex z2 = internal_ray_point(p, t2, kRho * kRho, kDepth - 1);
      const double dbl = std::abs(p.apply(z) - z2);
      add(rep, key + " doubling", input, dbl, dbl < 1e-6);
      const double trip = std::abs(boettcher_value(p, z).value - std::polar(kRho, 2.0 * kPi * t));
      add(rep, key + " roundtrip", input, trip, trip < 1e-6);
    }
  }
}

void suite_phi_centers(const SuiteConfig& cfg, Range range, VerificationReport& rep) {
  constexpr int kInjectivityPoints = 500;
  constexpr int kSide = 30;
  for (int n = range.first; n <= range.second; ++n) {
    for (int j = 1; j <= n - 1; ++j) {
      const Complex a = center_a_k(n, 2 * j);
      const double r = std::abs(phi_j(n, j, a));
      add(rep, fmt::format("{} j={:02d}", nkey(n), j), fmt::format("a=a_{}={}", 2 * j, cnum(a)), r,
          r < 1e-8);
    }
    const int k = even_center_index(n);
    const Complex c = center_a_k(n, k);
    std::vector<Complex> grid_points;
    double half = 0.04 * std::abs(c);
    for (int shrink = 0; shrink < 8; ++shrink, half /= 2.0) {
      grid_points.clear();
      for (int y = 0; y < kSide; ++y) {
        for (int x = 0; x < kSide; ++x) {
          const Complex a = c + Complex{half * (2.0 * (x + 0.5) / kSide - 1.0),
                                        half * (2.0 * (y + 0.5) / kSide - 1.0)};
          const MapParams p = MapParams::fixed_critical(n, a);
          if (iterate_orbit(p, p.v_minus(), cfg.budget).outcome == Outcome::AttractedToVPlus) {
            grid_points.push_back(a);
          }
        }
      }
      if (static_cast<int>(grid_points.size()) >= kInjectivityPoints) break;
    }
    if (static_cast<int>(grid_points.size()) > kInjectivityPoints) grid_points.resize(kInjectivityPoints);
    std::vector<Complex> values;
    values.reserve(grid_points.size());
    for (const Complex a : grid_points) values.push_back(phi_j(n, k / 2, a));
    double min_dist = std::numeric_limits<double>::infinity();
    int collisions = 0;
    for (size_t i = 0; i < values.size(); ++i) {
      for (size_t l = i + 1; l < values.size(); ++l) {
        const double d = std::abs(values[i] - values[l]);
        min_dist = std::min(min_dist, d);
        if (d <= 1e-9) ++collisions;
      }
    }
    add(rep, nkey(n) + " injectivity",
        fmt::format("j={} points={} half_width={} min_distance={}", k / 2, values.size(), num(half),
                    num(min_dist)),
        collisions, collisions == 0 && static_cast<int>(values.size()) == kInjectivityPoints);
  }
  rep.notes.push_back("injectivity is sampled only; surjectivity is not asserted");
}

struct SuiteDef {
  const char* id;
  const char* anchor;
  const char* residual;
  bool empirical;
  Range default_range;
  void (*run)(const SuiteConfig&, Range, VerificationReport&);
};

const std::vector<SuiteDef>& registry() {
  static const std::vector<SuiteDef> defs = {
      {"fixed-point", "v+ is a fixed point of r_{n,a}", "|r(v+) - v+| / (1 + |v+|), worst over samples",
       false, {3, 8}, suite_fixed_point},
      {"critical-parity", "R(w_k) = v+ for even k and v- for odd k",
       "max_k |R(w_k) - v+-| / (1 + |v+-|), worst over samples", false, {3, 8}, suite_critical_parity},
      {"c-patterns", "at a_k, v- is fixed (k odd) or maps to v+ (k even)",
       "|r(v-) - target| / (1 + |target|)", false, {3, 8}, suite_c_patterns},
      {"involution", "R(a^{1/n}/z) = R(z)", "|R(h(z)) - R(z)| / (1 + |R(z)|), worst over samples",
       false, {3, 8}, suite_involution},
      {"sizeofb", "||a|^{1/2n} - 2|a|^{1/2}| <= |b_{n,0}(a)| <= sqrt(4|a| + |a|^{1/n})",
       "largest bound violation / (1 + upper bound)", false, {3, 8}, suite_sizeofb},
      {"k-annulus", "K(r_{n,a}) lies in A(|a|^{1/n}/2, 2) when |a| < 1",
       "bounded seeds with an iterate outside the annulus", false, {3, 8}, suite_k_annulus},
      {"regime", "q_n in (3.6, 4) increasing, rho_n in (4, 4.4) decreasing",
       "max(|h(q) - 4|, |h(rho) - rho|) with h(x) = sqrt(4x + x^{1/n})", false, {3, 12}, suite_regime},
      {"spine", "|v-(a)| = 1 on the spine; cardioid limit with cusp 0 and maximum 1/4",
       "max ||v-| - 1| over on-branch samples", false, {3, 8}, suite_spine},
      {"ellipse", "the disk D(0,2) lies in the ellipse with foci v+-",
       "focal distance error / (1 + 2 sqrt|a|); circle points outside are counted", false, {3, 8},
       suite_ellipse},
      {"outer-aux", "x^{2n} - 2^{n-1}x + 2^n(2^n - 3) > 0 on (0, 4]",
       "|g'(x_n)| / 2^{n-1} at the closed-form minimizer", false, {3, 12}, suite_outer_aux},
      {"Ln-table", "upper bounds L(n) for |v-| when |a - 1/8| < 1/32", "L(n) itself, or sampled max |v-|",
       false, {3, 3}, suite_ln_table},
      {"m-annulus", "bounded parameters lie in an annulus about 1/8",
       "bounded grid parameters outside 0.028 < |a - 1/8| < 0.40", true, {20, 20}, suite_m_annulus},
      {"m-disk", "bounded parameters lie in D(0, 1/2 + 0.05)",
       "bounded grid parameters with |a| >= 0.55", true, {20, 20}, suite_m_disk},
      {"boettcher", "phi(r(z)) = phi(z)^2 near v+ with phi'(v+) = c2",
       "|phi(r(z)) - phi(z)^2| worst over basin samples; relative c2 error", false, {4, 6},
       suite_boettcher},
      {"ray-doubling", "r maps the internal ray of angle t to the ray of angle 2t",
       "|r(G_rho(t)) - G_rho^2(2t)|; |phi(G_rho(t)) - rho e^{2 pi i t}|", false, {4, 4},
       suite_ray_doubling},
      {"phi-centers", "Phi_j vanishes at a_{2j} and separates sampled parameters",
       "|Phi_j(a_{2j})|; pairs of grid parameters with equal Phi_j", false, {3, 8}, suite_phi_centers},
  };
  return defs;
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const SuiteDef& d : registry()) out.emplace_back(d.id);
    return out;
  }();
  return ids;
}

VerificationReport run_suite(const std::string& suite_id, const SuiteConfig& config) {
  const auto& defs = registry();
  const auto it = std::find_if(defs.begin(), defs.end(),
                               [&](const SuiteDef& d) { return suite_id == d.id; });
  if (it == defs.end()) throw UsageError("unknown suite: " + suite_id);
  const Range range = config.n_range.value_or(it->default_range);
  if (range.first < 3 || range.second < range.first) {
    throw UsageError("n range must satisfy 3 <= lo <= hi");
  }
  if (config.budget < 1) throw UsageError("budget must be >= 1");

  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.suite_id = it->id;
  rep.anchor = it->anchor;
  rep.residual_definition = it->residual;
  rep.empirical = it->empirical;
  rep.seed = config.seed;
  it->run(config, range, rep);
  std::stable_sort(rep.cases.begin(), rep.cases.end(),
                   [](const CaseRecord& x, const CaseRecord& y) { return x.key < y.key; });
  rep.passed = !rep.cases.empty();
  for (const CaseRecord& c : rep.cases) {
    rep.max_residual = std::max(rep.max_residual, c.residual);
    rep.passed = rep.passed && c.pass;
  }
  rep.runtime_ms = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                         std::chrono::steady_clock::now() - start)
                                         .count());
  return rep;
}

std::string report_schema() { return "#schema\tsuite\tkey\tinput\tresidual\tstatus\n"; }

std::string format_report(const VerificationReport& r, bool timing) {
  std::string out = fmt::format("#suite\t{}\tanchor: {}\tresidual: {}\tseed: {}{}\n", r.suite_id,
                                r.anchor, r.residual_definition, r.seed,
                                r.empirical ? "\tEMPIRICAL" : "");
  for (const std::string& note : r.notes) out += fmt::format("#note\t{}\t{}\n", r.suite_id, note);
  for (const CaseRecord& c : r.cases) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\n", r.suite_id, c.key, c.input, num(c.residual),
                       c.pass ? "PASS" : "FAIL");
  }
  out += fmt::format("#result\t{}\tcases={}\tmax_residual={}\t{}", r.suite_id, r.cases.size(),
                     num(r.max_residual), r.passed ? "PASSED" : "FAILED");
  if (timing) out += fmt::format("\truntime_ms={}", r.runtime_ms);
  out += "\n";
  return out;
}

}  // namespace gmm
