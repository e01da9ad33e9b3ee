// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

#include "gmm/render.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cctype>
#include <cstring>
#include <deque>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "gmm/geometry.hpp"
#include "gmm/parallel.hpp"

namespace gmm {
namespace {

constexpr int kBandRows = 8;
constexpr int kSpineSamples = 512;

void for_each_row(int rows, int workers, const std::function<void(int)>& row_fn) {
  parallel_for(rows, workers, kBandRows, row_fn);
}

Rgb dynamical_color(const MapParams& p, const AnnulusBounds& ann, Complex z, int budget,
                    const Palette& pal) {
  const OrbitResult r = iterate_orbit(p, z, budget);
  const bool inner_exit = !r.bounded() && std::abs(r.final_value) < ann.inner;
  return orbit_color(r, inner_exit, pal);
}

void draw_marker(ImageBuffer& img, const Viewport& vp, Complex z, Rgb color) {
  const auto [x, y] = vp.to_pixel(z);
  if (!std::isfinite(x) || !std::isfinite(y)) return;
  const double fi = std::floor(x);
  const double fj = std::floor(y);
  if (fi < -1.0 || fj < -1.0 || fi > vp.px_w || fj > vp.px_h) return;
  const int ci = static_cast<int>(fi);
  const int cj = static_cast<int>(fj);
  for (int dj = -1; dj <= 1; ++dj) {
    for (int di = -1; di <= 1; ++di) {
      const int i = ci + di;
      const int j = cj + dj;
      if (i >= 0 && j >= 0 && i < vp.px_w && j < vp.px_h) img.set(i, j, color);
    }
  }
}

void draw_overlays(ImageBuffer& img, const PlaneSpec& spec, const Viewport& vp) {
  const SliceSpec* slice = std::get_if<SliceSpec>(&spec.kind);
  const MapParams* params = std::get_if<MapParams>(&spec.kind);
  const int n = slice ? slice->n : params->n();
  for (const Overlay o : spec.overlays) {
    switch (o) {
      case Overlay::Spine:
        if (slice) {
          for (const SpineSample& s : spine_polyline(n, kSpineSamples)) {
            if (s.valid) draw_marker(img, vp, s.a, kMarkerRed);
          }
        }
        break;
      case Overlay::Centers:
        if (slice) {
          for (int k = 1; k <= 2 * n - 1; ++k) draw_marker(img, vp, center_a_k(n, k), kMarkerWhite);
        }
        break;
      case Overlay::CriticalValues:
        if (params) {
          draw_marker(img, vp, params->v_plus(), kMarkerWhite);
          draw_marker(img, vp, params->v_minus(), kMarkerWhite);
        }
        break;
      case Overlay::Zero:
        draw_marker(img, vp, Complex{}, kMarkerWhite);
        break;
    }
  }
}

std::vector<std::uint8_t> encode_png(const ImageBuffer& buf) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = buf.width;
  image.height = buf.height;
  image.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(image, size, 0, buf.pixels.data(), 0, nullptr)) {
    throw std::runtime_error(std::string("encode_image: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, buf.pixels.data(), 0, nullptr)) {
    throw std::runtime_error(std::string("encode_image: ") + image.message);
  }
  out.resize(size);
  return out;
}

ImageBuffer decode_png(const std::vector<std::uint8_t>& bytes) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw std::runtime_error(std::string("decode_image: ") + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  ImageBuffer buf(static_cast<int>(image.width), static_cast<int>(image.height));
  if (!png_image_finish_read(&image, nullptr, buf.pixels.data(), 0, nullptr)) {
    png_image_free(&image);
    throw std::runtime_error(std::string("decode_image: ") + image.message);
  }
  return buf;
}

std::vector<std::uint8_t> encode_ppm(const ImageBuffer& buf) {
  const std::string header =
      "P6\n" + std::to_string(buf.width) + " " + std::to_string(buf.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), buf.pixels.begin(), buf.pixels.end());
  return out;
}

ImageBuffer decode_ppm(const std::vector<std::uint8_t>& bytes) {
  size_t pos = 0;
  auto skip_space = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_int = [&] {
    skip_space();
    long v = 0;
    const size_t start = pos;
    while (pos < bytes.size() && std::isdigit(bytes[pos]) && v < (1L << 30)) {
      v = 10 * v + (bytes[pos++] - '0');
    }
    if (pos == start) throw std::runtime_error("decode_image: malformed PPM header");
    return v;
  };
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') {
    throw std::runtime_error("decode_image: not a P6 PPM");
  }
  pos = 2;
  const long w = read_int();
  const long h = read_int();
  const long maxval = read_int();
  if (w < 1 || h < 1 || maxval != 255 || pos >= bytes.size() || !std::isspace(bytes[pos])) {
    throw std::runtime_error("decode_image: unsupported PPM header");
  }
  ++pos;
  ImageBuffer buf(static_cast<int>(w), static_cast<int>(h));
  if (bytes.size() - pos != buf.pixels.size()) {
    throw std::runtime_error("decode_image: PPM payload size mismatch");
  }
  std::copy(bytes.begin() + static_cast<long>(pos), bytes.end(), buf.pixels.begin());
  return buf;
}

}  // namespace

Viewport Viewport::square(Complex center, double width, int px) {
  return {center, width, width, px, px};
}

Complex Viewport::pixel_center(int i, int j) const noexcept {
  const double x = center.real() + ((i + 0.5) / px_w - 0.5) * width;
  const double y = center.imag() - ((j + 0.5) / px_h - 0.5) * height;
  return {x, y};
}

std::pair<double, double> Viewport::to_pixel(Complex z) const noexcept {
  const double x = ((z.real() - center.real()) / width + 0.5) * px_w;
  const double y = (0.5 - (z.imag() - center.imag()) / height) * px_h;
  return {x, y};
}

void Viewport::validate() const {
  if (px_w < 1 || px_h < 1) throw DomainError("Viewport: pixel size must be >= 1");
  if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height)) {
    throw DomainError("Viewport: width and height must be positive");
  }
}

int default_budget(double width) noexcept {
  if (!(width > 0.0)) return 512;
  const double scaled = 512.0 * 0.5 / width;
  return static_cast<int>(std::clamp(scaled, 512.0, 65536.0));
}

ImageBuffer render_plane(const PlaneSpec& spec, const Viewport& vp, int workers) {
  vp.validate();
  if (spec.budget < 1) throw DomainError("render_plane: budget must be >= 1");
  ImageBuffer img(vp.px_w, vp.px_h);
  if (const SliceSpec* slice = std::get_if<SliceSpec>(&spec.kind)) {
    for_each_row(vp.px_h, workers, [&](int j) {
      for (int i = 0; i < vp.px_w; ++i) {
        img.set(i, j, classify_parameter(*slice, vp.pixel_center(i, j), spec.budget, spec.palette).color);
      }
    });
  } else {
    const MapParams& p = std::get<MapParams>(spec.kind);
    const AnnulusBounds ann = k_annulus(p);
    for_each_row(vp.px_h, workers, [&](int j) {
      for (int i = 0; i < vp.px_w; ++i) {
        img.set(i, j, dynamical_color(p, ann, vp.pixel_center(i, j), spec.budget, spec.palette));
      }
    });
  }
  draw_overlays(img, spec, vp);
  return img;
}

std::vector<std::uint8_t> bounded_mask(const SliceSpec& slice, const Viewport& vp, int budget,
                                       int workers) {
  vp.validate();
  std::vector<std::uint8_t> mask(static_cast<size_t>(vp.px_w) * vp.px_h, 0);
  for_each_row(vp.px_h, workers, [&](int j) {
    for (int i = 0; i < vp.px_w; ++i) {
      const ParamClassification c = classify_parameter(slice, vp.pixel_center(i, j), budget);
      mask[static_cast<size_t>(j) * vp.px_w + i] =
          !c.degenerate && c.plus.bounded() && c.minus.bounded();
    }
  });
  return mask;
}

ComponentLabels label_components(const std::vector<std::uint8_t>& mask, int width, int height) {
  if (width < 0 || height < 0 || mask.size() != static_cast<size_t>(width) * height) {
    throw DomainError("label_components: mask size does not match the grid");
  }
  ComponentLabels out;
  out.width = width;
  out.height = height;
  out.labels.assign(mask.size(), 0);
  std::deque<int> queue;
  for (int start = 0; start < static_cast<int>(mask.size()); ++start) {
    if (!mask[start] || out.labels[start]) continue;
    const int label = ++out.count;
    out.labels[start] = label;
    queue.push_back(start);
    while (!queue.empty()) {
      const int cell = queue.front();
      queue.pop_front();
      const int i = cell % width;
      const int j = cell / width;
      const int nbrs[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
      for (const auto& nb : nbrs) {
        if (nb[0] < 0 || nb[1] < 0 || nb[0] >= width || nb[1] >= height) continue;
        const int idx = nb[1] * width + nb[0];
        if (mask[idx] && !out.labels[idx]) {
          out.labels[idx] = label;
          queue.push_back(idx);
        }
      }
    }
  }
  return out;
}

std::vector<std::uint8_t> encode_image(const ImageBuffer& buf, ImageFormat format) {
  if (buf.width < 1 || buf.height < 1 ||
      buf.pixels.size() != 3 * static_cast<size_t>(buf.width) * buf.height) {
    throw DomainError("encode_image: malformed buffer");
  }
  return format == ImageFormat::PNG ? encode_png(buf) : encode_ppm(buf);
}

ImageBuffer decode_image(const std::vector<std::uint8_t>& bytes, ImageFormat format) {
  return format == ImageFormat::PNG ? decode_png(bytes) : decode_ppm(bytes);
}

void write_image(const ImageBuffer& buf, const std::string& path) {
  auto ends_with = [&](const char* ext) {
    const size_t n = std::strlen(ext);
    if (path.size() < n) return false;
    std::string tail = path.substr(path.size() - n);
    std::transform(tail.begin(), tail.end(), tail.begin(), ::tolower);
    return tail == ext;
  };
  ImageFormat format;
  if (ends_with(".png")) {
    format = ImageFormat::PNG;
  } else if (ends_with(".ppm")) {
    format = ImageFormat::PPM;
  } else {
    throw DomainError("write_image: extension must be .png or .ppm");
  }
  const std::vector<std::uint8_t> bytes = encode_image(buf, format);
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write_image: cannot write " + path);
}

}  // namespace gmm
