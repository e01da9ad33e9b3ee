// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

// Escape-time rendering of parameter slices and dynamical planes, bounded
// component labeling, and PNG/PPM encoding.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gmm/core_maps.hpp"
#include "gmm/dynamics.hpp"

namespace gmm {

/// Rectangular window of the plane on a px_w x px_h grid. Row 0 is the top.
struct Viewport {
  Complex center{};
  double width = 1.0;
  double height = 1.0;
  int px_w = 1;
  int px_h = 1;

  static Viewport square(Complex center, double width, int px);

  /// Plane point at the center of pixel (i, j).
  Complex pixel_center(int i, int j) const noexcept;

  /// Continuous pixel coordinates of z; pixel (i, j) covers [i, i+1) x [j, j+1).
  std::pair<double, double> to_pixel(Complex z) const noexcept;

  /// Throws DomainError on a non-positive size.
  void validate() const;
};

/// Row-major RGB8.
struct ImageBuffer {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  ImageBuffer() = default;
  ImageBuffer(int w, int h) : width(w), height(h), pixels(3 * static_cast<size_t>(w) * h, 0) {}

  Rgb at(int i, int j) const noexcept {
    const size_t o = 3 * (static_cast<size_t>(j) * width + i);
    return {pixels[o], pixels[o + 1], pixels[o + 2]};
  }
  void set(int i, int j, Rgb c) noexcept {
    const size_t o = 3 * (static_cast<size_t>(j) * width + i);
    pixels[o] = c.r;
    pixels[o + 1] = c.g;
    pixels[o + 2] = c.b;
  }
  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;
};

enum class Overlay { Centers, Spine, CriticalValues, Zero };

struct PlaneSpec {
  std::variant<SliceSpec, MapParams> kind = SliceSpec{};
  int budget = 512;
  Palette palette{};
  std::vector<Overlay> overlays;
};

inline constexpr Rgb kMarkerWhite{255, 255, 255};
inline constexpr Rgb kMarkerRed{255, 0, 0};

/// 512 for width >= 0.5, growing as 1/width below that, capped at 65536.
int default_budget(double width) noexcept;

/// workers <= 0 uses the hardware concurrency. Output does not depend on it.
ImageBuffer render_plane(const PlaneSpec& spec, const Viewport& vp, int workers = 0);

/// 1 where both critical orbits of the slice parameter stay bounded.
std::vector<std::uint8_t> bounded_mask(const SliceSpec& slice, const Viewport& vp, int budget,
                                       int workers = 0);

struct ComponentLabels {
  int width = 0;
  int height = 0;
  int count = 0;
  std::vector<int> labels;  // 0 off the mask, otherwise 1..count in scan order

  int at(int i, int j) const noexcept { return labels[static_cast<size_t>(j) * width + i]; }
};

/// 4-connected components of the nonzero cells of a row-major mask.
ComponentLabels label_components(const std::vector<std::uint8_t>& mask, int width, int height);

enum class ImageFormat { PNG, PPM };

std::vector<std::uint8_t> encode_image(const ImageBuffer& buf, ImageFormat format);
ImageBuffer decode_image(const std::vector<std::uint8_t>& bytes, ImageFormat format);

/// Format chosen by extension (.png or .ppm). Throws std::runtime_error on
/// I/O failure and DomainError on an unknown extension.
void write_image(const ImageBuffer& buf, const std::string& path);

}  // namespace gmm
