// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "gmm/geometry.hpp"

using gmm::Complex;
using gmm::MapParams;

namespace {

Complex vminus(int n, Complex a) { return MapParams::fixed_critical(n, a).v_minus(); }

}  // namespace

TEST_CASE("center_a_k values") {
  CHECK(std::abs(gmm::center_a_k(3, 3) - 0.125) < 1e-16);
  const Complex a32 = gmm::center_a_k(3, 2);
  CHECK(std::abs(a32 - Complex{0.0, -3.0 * std::sqrt(3.0) / 64.0}) < 1e-15);
  CHECK(std::abs(gmm::center_a_k(6, 6) - std::pow(0.5, 12.0 / 5.0)) < 1e-15);
  CHECK(std::abs(gmm::center_a_k(6, 6) - 0.18946) < 1e-5);
  CHECK_THROWS_AS(gmm::center_a_k(3, 0), gmm::DomainError);
  CHECK_THROWS_AS(gmm::center_a_k(3, 6), gmm::DomainError);
  CHECK_THROWS_AS(gmm::center_a_k(2, 1), gmm::DomainError);
}

TEST_CASE("center relations hold at every a_k") {
  for (int n = 3; n <= 10; ++n) {
    for (int k = 1; k <= 2 * n - 1; ++k) {
      const MapParams p = MapParams::fixed_critical(n, gmm::center_a_k(n, k));
      const bool odd = gmm::center_relation(k) == gmm::CenterRelation::VMinusFixed;
      CHECK(odd == (k % 2 == 1));
      const Complex target = odd ? p.v_minus() : p.v_plus();
      CHECK(std::abs(p.apply(p.v_minus()) - target) < 1e-10 * (1.0 + std::abs(target)));
    }
  }
}

TEST_CASE("limit spine") {
  CHECK(std::abs(gmm::spine_point(std::nullopt, 0.0) - 0.25) < 1e-16);
  CHECK(std::abs(gmm::spine_point(std::nullopt, gmm::kPi)) < 1e-16);
  double top = 0.0;
  for (const gmm::SpineSample& s : gmm::spine_polyline(std::nullopt, 360)) top = std::max(top, s.a.real());
  CHECK(top == doctest::Approx(0.25));
}

TEST_CASE("finite spine points carry |v-| = 1") {
  const Complex a = gmm::spine_point(3, 0.0);
  CHECK(std::abs(a.imag()) < 1e-12);
  CHECK(std::abs(std::abs(vminus(3, a)) - 1.0) < 1e-9);
  for (int n : {4, 6, 10}) {
    int valid = 0;
    for (const gmm::SpineSample& s : gmm::spine_polyline(n, 32)) {
      if (!s.valid) continue;
      ++valid;
      CHECK(std::abs(std::abs(vminus(n, s.a)) - 1.0) < 1e-9);
    }
    CHECK(valid > 0);
  }
  CHECK_THROWS_AS(gmm::spine_point(2, 0.0), gmm::DomainError);
}

TEST_CASE("k_annulus rules") {
  const gmm::AnnulusBounds g = gmm::k_annulus(MapParams::general(3, 1.0, -1.0));
  CHECK(g.inner == doctest::Approx(0.25));
  CHECK(g.outer == doctest::Approx(4.0));

  const gmm::AnnulusBounds big = gmm::k_annulus(MapParams::general(3, 8.0, 0.0));
  CHECK(big.outer == doctest::Approx(8.0));
  CHECK(big.inner == doctest::Approx(0.25));

  const gmm::AnnulusBounds sub = gmm::k_annulus(MapParams::fixed_critical(3, 0.5));
  CHECK(sub.inner == doctest::Approx(std::cbrt(0.5) / 2.0));
  CHECK(sub.inner == doctest::Approx(0.3969).epsilon(1e-4));
  CHECK(sub.outer == doctest::Approx(2.0));
}

TEST_CASE("bounded orbits of a subfamily map stay in the tightened annulus") {
  const MapParams p = MapParams::fixed_critical(3, 0.5);
  const gmm::AnnulusBounds general = gmm::k_annulus(MapParams::general(3, p.a(), p.b()));
  const gmm::AnnulusBounds tight = gmm::k_annulus(p);
  int bounded = 0;
  for (int j = 0; j < 120; ++j) {
    for (int i = 0; i < 120; ++i) {
      Complex z{-3.0 + 6.0 * (i + 0.5) / 120, 3.0 - 6.0 * (j + 0.5) / 120};
      std::vector<Complex> orbit;
      bool escaped = false;
      for (int k = 0; k <= 500 && !escaped; ++k) {
        escaped = !general.contains(z);
        orbit.push_back(z);
        z = p.apply(z);
      }
      if (escaped) continue;
      ++bounded;
      for (const Complex w : orbit) REQUIRE(tight.contains(w));
    }
  }
  CHECK(bounded > 0);
}

TEST_CASE("regime thresholds") {
  auto h = [](int n, double x) { return std::sqrt(4.0 * x + std::pow(x, 1.0 / n)); };
  const gmm::RegimeThresholds t3 = gmm::regime_thresholds(3);
  CHECK(std::abs(h(3, t3.q_n) - 4.0) < 1e-10);
  CHECK(std::abs(h(3, t3.rho_n) - t3.rho_n) < 1e-10);
  CHECK(std::abs(t3.q_n - 3.6163) < 5e-4);
  CHECK(std::abs(t3.rho_n - 4.3739) < 5e-4);
  double q = t3.q_n;
  double rho = t3.rho_n;
  for (int n = 4; n <= 40; ++n) {
    const gmm::RegimeThresholds t = gmm::regime_thresholds(n);
    CHECK(t.q_n > q);
    CHECK(t.rho_n < rho);
    CHECK(t.q_n < 4.0);
    CHECK(t.rho_n > 4.0);
    q = t.q_n;
    rho = t.rho_n;
  }
  const gmm::RegimeThresholds far = gmm::regime_thresholds(100000);
  CHECK(std::abs(far.q_n - 3.75) < 1e-4);
  CHECK(std::abs(far.rho_n - (2.0 + std::sqrt(5.0))) < 1e-4);
}

TEST_CASE("critical ellipse") {
  for (int n = 3; n <= 6; ++n) {
    const MapParams p = MapParams::fixed_critical(n, Complex{0.1, 0.05});
    CHECK(gmm::ellipse_contains(p, p.v_plus()));
    CHECK(gmm::ellipse_contains(p, p.v_minus()));
    REQUIRE(std::abs(p.v_minus()) <= 2.0);
    for (int i = 0; i < 64; ++i) CHECK(gmm::ellipse_contains(p, 2.0 * gmm::unit_turn(i, 64)));
    for (int i = 0; i < 16; ++i) {
      CHECK_FALSE(gmm::ellipse_contains(p, std::ldexp(1.0, n + 1) * gmm::unit_turn(i, 16)));
    }
    const gmm::EllipseSpec e = gmm::critical_ellipse(p);
    CHECK(e.semi_major == doctest::Approx(std::ldexp(1.0, n) + std::abs(p.a()) / std::ldexp(1.0, n)));
    CHECK(e.semi_minor == doctest::Approx(std::ldexp(1.0, n) - std::abs(p.a()) / std::ldexp(1.0, n)));
  }
}

TEST_CASE("U' regions") {
  const int n = 4;
  const Complex a = 0.16;
  const MapParams p = MapParams::fixed_critical(n, a);
  const gmm::CriticalSet cs = gmm::critical_set(p);
  for (int k = 0; k < 2 * n; ++k) CHECK(gmm::u_prime_contains(n, a, k, cs.points[k]));
  CHECK_FALSE(gmm::u_prime_contains(n, a, 0, 3.0));

  const gmm::PolarRegion region = gmm::u_prime_region(n, a, 1);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int inside = 0;
  for (int i = 0; i < 2000; ++i) {
    const double r = region.modulus_lo + (region.modulus_hi - region.modulus_lo) * u(rng);
    const double t = region.arg_center + region.arg_half_width * (2.0 * u(rng) - 1.0);
    const Complex z = std::polar(r, t);
    if (!region.contains(z)) continue;
    ++inside;
    const Complex w = p.apply(z);
    CHECK(std::abs(w - p.v_minus()) < std::abs(w - p.v_plus()));
  }
  CHECK(inside > 1000);
  CHECK_THROWS_AS(gmm::u_prime_region(n, a, 2 * n), gmm::DomainError);
}

TEST_CASE("W boundary curves carry their defining property") {
  for (int n : {3, 5, 8}) {
    const gmm::WBoundarySpec tau = gmm::WBoundarySpec::standard(gmm::WCurve::Tau);
    for (double theta : {gmm::kPi / 2, gmm::kPi, 3 * gmm::kPi / 2}) {
      const Complex a = gmm::w_boundary_point(tau, n, theta);
      CHECK(std::abs(std::abs(vminus(n, a)) - 2.0) < 1e-8);
    }
    const gmm::WBoundarySpec beta = gmm::WBoundarySpec::standard(gmm::WCurve::Beta);
    for (double theta : {0.0, gmm::kPi / 3, gmm::kPi}) {
      const Complex a = gmm::w_boundary_point(beta, n, theta);
      CHECK(std::abs(std::abs(vminus(n, a)) - std::pow(std::abs(a), 1.0 / n) / 2.0) < 1e-8);
    }
    for (int k : {0, 1}) {
      const gmm::WBoundarySpec rho = gmm::WBoundarySpec::standard(gmm::WCurve::RhoPlus, k);
      for (double x : {0.1, 0.3}) {
        const Complex a = gmm::w_boundary_point(rho, n, x);
        const Complex w = gmm::critical_set(MapParams::fixed_critical(n, a)).points[k];
        double d = gmm::principal_arg(vminus(n, a)) - gmm::principal_arg(w) - gmm::kPi / (2 * n);
        d = std::remainder(d, 2.0 * gmm::kPi);
        CHECK(std::abs(d) < 1e-8);
        CHECK(gmm::w_boundary_residual(rho, n, a) < 1e-8);
      }
    }
  }
}

TEST_CASE("solvers report failure instead of returning off-branch points") {
  const gmm::WBoundarySpec tau = gmm::WBoundarySpec::standard(gmm::WCurve::Tau);
  CHECK_THROWS_AS(gmm::w_boundary_point(tau, 3, 0.0), gmm::ConvergenceError);
  CHECK_THROWS_AS(gmm::w_boundary_point(tau, 3, 7.0), gmm::DomainError);
}

TEST_CASE("L(n) bounds") {
  const std::pair<int, double> table[] = {{3, 0.95}, {4, 0.87}, {5, 0.82}, {6, 0.8},
                                          {7, 0.77}, {10, 0.73}, {15, 0.7}, {25, 0.66},
                                          {50, 0.64}, {100, 0.63}};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& [n, bound] : table) {
    const double l = gmm::vminus_bound_near_eighth(n);
    CHECK(l < bound);
    for (int i = 0; i < 500; ++i) {
      const Complex a = 0.125 + std::polar(std::sqrt(u(rng)) / 32.0, 2.0 * gmm::kPi * u(rng));
      CHECK(std::abs(vminus(n, a)) <= l);
    }
  }
  const double l3 = gmm::vminus_bound_near_eighth(3);
  CHECK(l3 > 0.93);
  CHECK(l3 < 0.95);
}

TEST_CASE("size of b") {
  for (int n = 3; n <= 8; ++n) {
    for (double r : {1e-3, 0.05, 0.5, 2.0, 30.0}) {
      for (int i = 0; i < 8; ++i) {
        const Complex a = r * gmm::unit_turn(i, 8) * std::polar(1.0, 0.1);
        const auto [lo, hi] = gmm::subfamily_b_bounds(n, r);
        const double b = std::abs(gmm::subfamily_b(n, a));
        CHECK(b >= lo - 1e-12);
        CHECK(b <= hi + 1e-12);
      }
    }
  }
}

TEST_CASE("outer auxiliary polynomial is positive on (0, 4]") {
  for (int n = 3; n <= 12; ++n) {
    const double xn = gmm::outer_aux_argmin(n);
    CHECK(xn > 0.0);
    CHECK(gmm::outer_aux_g(n, xn) > 0.0);
    CHECK(gmm::outer_aux_g(n, xn) <= gmm::outer_aux_g(n, xn * 0.99));
    CHECK(gmm::outer_aux_g(n, xn) <= gmm::outer_aux_g(n, xn * 1.01));
  }
}
