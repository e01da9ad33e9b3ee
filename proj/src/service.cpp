// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

#include "gmm/service.hpp"

#include <fmt/format.h>
#include <httplib.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <semaphore>
#include <sstream>
#include <thread>

#include "gmm/dynamics.hpp"
#include "gmm/geometry.hpp"
#include "gmm/render.hpp"
#include "gmm/text.hpp"

namespace gmm {
namespace {

using nlohmann::json;

constexpr int kMaxN = 1000;
constexpr int kMaxBudget = 1 << 20;
constexpr int kMaxSamples = 100000;
constexpr double kMaxTileWidth = 1e6;

struct RequestError {
  int status;
  std::string message;
};

[[noreturn]] void malformed(const std::string& msg) { throw RequestError{400, msg}; }
[[noreturn]] void out_of_range(const std::string& msg) { throw RequestError{422, msg}; }

HttpResponse error_response(const RequestError& e) {
  HttpResponse r;
  r.status = e.status;
  r.content_type = "application/json";
  r.body = json{{"error", e.message}}.dump();
  return r;
}

HttpResponse json_response(const json& body) {
  HttpResponse r;
  r.content_type = "application/json";
  r.body = body.dump();
  return r;
}

const std::string* find(const Query& q, const std::string& key) {
  const auto it = q.find(key);
  return it == q.end() ? nullptr : &it->second;
}

double real_param(const Query& q, const std::string& key, std::optional<double> fallback) {
  const std::string* s = find(q, key);
  if (!s) {
    if (!fallback) malformed("missing parameter " + key);
    return *fallback;
  }
  const auto v = parse_real(*s);
  if (!v) malformed(fmt::format("{}: not a number", key));
  if (!std::isfinite(*v)) out_of_range(fmt::format("{}: must be finite", key));
  return *v;
}

long int_param(const Query& q, const std::string& key, std::optional<long> fallback) {
  const std::string* s = find(q, key);
  if (!s) {
    if (!fallback) malformed("missing parameter " + key);
    return *fallback;
  }
  const auto v = parse_integer(*s);
  if (!v) malformed(fmt::format("{}: not an integer", key));
  return *v;
}

std::optional<Complex> complex_param(const Query& q, const std::string& key) {
  const std::string* s = find(q, key);
  if (!s) return std::nullopt;
  const auto z = parse_complex(*s);
  if (!z) malformed(fmt::format("{}: expected X,Y", key));
  if (!std::isfinite(z->real()) || !std::isfinite(z->imag())) out_of_range(key + ": must be finite");
  return z;
}

int n_param(const Query& q) {
  const long n = int_param(q, "n", std::nullopt);
  if (n < 3 || n > kMaxN) out_of_range(fmt::format("n: must lie in [3, {}]", kMaxN));
  return static_cast<int>(n);
}

int budget_param(const Query& q, int fallback) {
  const long b = int_param(q, "budget", fallback);
  if (b < 1 || b > kMaxBudget) out_of_range(fmt::format("budget: must lie in [1, {}]", kMaxBudget));
  return static_cast<int>(b);
}

SliceSpec slice_param(const Query& q) {
  const std::string* name = find(q, "slice");
  const auto kind = parse_slice(name ? *name : "fixed-crit");
  if (!kind) malformed("slice: unknown slice " + *name);
  SliceSpec s{*kind, n_param(q), {}};
  auto need = [&](const char* key) {
    const auto z = complex_param(q, key);
    if (!z) malformed(fmt::format("slice {} requires {}", slice_name(s.kind), key));
    return *z;
  };
  switch (s.kind) {
    case SliceKind::FixedCrit:
      break;
    case SliceKind::ASlice:
      s.constant = need("b");
      break;
    case SliceKind::BSlice:
      s.constant = need("a");
      if (s.constant == Complex{}) out_of_range("a: must be nonzero");
      break;
    case SliceKind::Linear:
      s.constant = need("t");
      break;
  }
  return s;
}

std::vector<Overlay> overlay_param(const Query& q) {
  std::vector<Overlay> out;
  const std::string* s = find(q, "overlay");
  if (!s) return out;
  std::stringstream ss(*s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "centers") {
      out.push_back(Overlay::Centers);
    } else if (item == "spine") {
      out.push_back(Overlay::Spine);
    } else if (item == "critical-values") {
      out.push_back(Overlay::CriticalValues);
    } else if (item == "zero") {
      out.push_back(Overlay::Zero);
    } else {
      malformed("overlay: unknown overlay " + item);
    }
  }
  return out;
}

std::string etag_of(const std::string& canonical) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return fmt::format("\"{:016x}\"", h);
}

std::string canonical_complex(Complex z) {
  return fmt::format("{:.17g},{:.17g}", z.real(), z.imag());
}

json orbit_json(const OrbitResult& r) {
  return json{{"outcome", outcome_name(r.outcome)},
              {"iterations", r.iterations},
              {"entry_iter", r.entry_iter},
              {"final", {r.final_value.real(), r.final_value.imag()}},
              {"pole", r.pole}};
}

}  // namespace

HttpResponse handle_tile(const Query& q, const ServiceConfig& config, const std::string& if_none_match) {
  try {
    const std::string* kind = find(q, "kind");
    const std::string kind_name = kind ? *kind : "param";
    if (kind_name != "param" && kind_name != "julia") malformed("kind: expected param or julia");

    PlaneSpec spec;
    std::string canonical = "tile|" + kind_name;
    if (kind_name == "param") {
      const SliceSpec s = slice_param(q);
      spec.kind = s;
      canonical += fmt::format("|{}|{}|{}", slice_name(s.kind), s.n, canonical_complex(s.constant));
    } else {
      const int n = n_param(q);
      const auto a = complex_param(q, "a");
      if (!a) malformed("julia tile requires a");
      if (*a == Complex{}) out_of_range("a: must be nonzero");
      const auto b = complex_param(q, "b");
      const MapParams p = b ? MapParams::general(n, *a, *b) : MapParams::fixed_critical(n, *a);
      spec.kind = p;
      canonical += fmt::format("|{}|{}|{}|{}", n, canonical_complex(*a), b ? "b" : "-",
                               canonical_complex(p.b()));
    }

    const double cx = real_param(q, "cx", 0.0);
    const double cy = real_param(q, "cy", 0.0);
    const double w = real_param(q, "w", std::nullopt);
    if (!(w > kMinTileWidth) || w > kMaxTileWidth) {
      out_of_range(fmt::format("w: must lie in ({:g}, {:g}]", kMinTileWidth, kMaxTileWidth));
    }
    const long px = int_param(q, "px", 256);
    const long py = int_param(q, "py", px);
    if (px < 1 || py < 1 || px > config.max_px || py > config.max_px) {
      out_of_range(fmt::format("px, py: must lie in [1, {}]", config.max_px));
    }
    spec.budget = budget_param(q, default_budget(w));
    spec.overlays = overlay_param(q);

    const Viewport vp{{cx, cy}, w, w * static_cast<double>(py) / static_cast<double>(px),
                      static_cast<int>(px), static_cast<int>(py)};
    canonical += fmt::format("|{}|{:.17g}|{}|{}|{}", canonical_complex(vp.center), w, px, py, spec.budget);
    for (const Overlay o : spec.overlays) canonical += fmt::format("|o{}", static_cast<int>(o));
    const std::string etag = etag_of(canonical);

    HttpResponse r;
    r.headers["ETag"] = etag;
    r.headers["Cache-Control"] = "public, max-age=31536000, immutable";
    if (!if_none_match.empty() && if_none_match == etag) {
      r.status = 304;
      return r;
    }
    const ImageBuffer img = render_plane(spec, vp, config.render_workers);
    const std::vector<std::uint8_t> png = encode_image(img, ImageFormat::PNG);
    r.content_type = "image/png";
    r.body.assign(png.begin(), png.end());
    return r;
  } catch (const RequestError& e) {
    return error_response(e);
  } catch (const DomainError& e) {
    return error_response({422, e.what()});
  }
}

HttpResponse handle_classify(const Query& q) {
  try {
    const SliceSpec s = slice_param(q);
    const auto point = complex_param(q, "point");
    if (!point) malformed("missing parameter point");
    const int budget = budget_param(q, 512);
    const ParamClassification c = classify_parameter(s, *point, budget);

    json body{{"slice", slice_name(s.kind)},
              {"n", s.n},
              {"point", {point->real(), point->imag()}},
              {"budget", budget},
              {"plus", orbit_json(c.plus)},
              {"minus", orbit_json(c.minus)},
              {"color", {c.color.r, c.color.g, c.color.b}},
              {"degenerate", c.degenerate},
              {"phi_abs", nullptr}};
    if (s.kind == SliceKind::FixedCrit && !c.degenerate && c.minus.outcome == Outcome::AttractedToVPlus) {
      const MapParams p = *s.params_at(*point);
      if (const auto image = eval_map(p, p.v_minus())) {
        try {
          body["phi_abs"] = boettcher_value(p, *image).modulus;
        } catch (const std::runtime_error&) {
        }
      }
    }
    return json_response(body);
  } catch (const RequestError& e) {
    return error_response(e);
  } catch (const DomainError& e) {
    return error_response({422, e.what()});
  }
}

HttpResponse handle_loci(const Query& q) {
  try {
    const std::string* kind = find(q, "kind");
    if (!kind) malformed("missing parameter kind");
    const std::string* n_text = find(q, "n");
    if (!n_text) malformed("missing parameter n");
    std::optional<int> n;
    if (*n_text != "inf") {
      const auto v = parse_integer(*n_text);
      if (!v || *v < 3 || *v > kMaxN) malformed(fmt::format("n: expected an integer in [3, {}] or inf", kMaxN));
      n = static_cast<int>(*v);
    }
    json records = json::array();
    if (*kind == "centers") {
      if (!n) malformed("centers require a finite n");
      for (int k = 1; k <= 2 * *n - 1; ++k) {
        const Complex a = center_a_k(*n, k);
        records.push_back({{"k", k},
                           {"re", a.real()},
                           {"im", a.imag()},
                           {"relation", center_relation(k) == CenterRelation::VMinusFixed ? "v- fixed"
                                                                                          : "v- -> v+"}});
      }
    } else if (*kind == "spine") {
      long samples = 64;
      if (const std::string* s = find(q, "samples")) {
        const auto v = parse_integer(*s);
        if (!v || *v < 1 || *v > kMaxSamples) malformed(fmt::format("samples: expected [1, {}]", kMaxSamples));
        samples = *v;
      }
      for (const SpineSample& s : spine_polyline(n, static_cast<int>(samples))) {
        records.push_back({{"theta", s.theta}, {"re", s.a.real()}, {"im", s.a.imag()}, {"valid", s.valid}});
      }
    } else {
      malformed("kind: expected centers or spine");
    }
    return json_response(json{{"kind", *kind}, {"n", n ? json(*n) : json("inf")}, {"records", records}});
  } catch (const RequestError& e) {
    return error_response(e);
  } catch (const DomainError& e) {
    return error_response({400, e.what()});
  }
}

struct Server::Impl {
  explicit Impl(ServiceConfig c)
      : config(c),
        slots(c.max_concurrent_renders > 0
                  ? c.max_concurrent_renders
                  : std::max(2, 2 * static_cast<int>(std::thread::hardware_concurrency()))) {}

  ServiceConfig config;
  std::counting_semaphore<4096> slots;
  httplib::Server http;
};

namespace {

Query query_of(const httplib::Request& req) {
  Query q;
  for (const auto& [k, v] : req.params) q.emplace(k, v);
  return q;
}

void send(const HttpResponse& r, httplib::Response& res) {
  res.status = r.status;
  for (const auto& [k, v] : r.headers) res.set_header(k, v);
  if (r.status != 304) res.set_content(r.body, r.content_type);
}

}  // namespace

Server::Server(ServiceConfig config) : impl_(std::make_unique<Impl>(config)) {
  impl_->http.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  impl_->http.Get("/tile", [this](const httplib::Request& req, httplib::Response& res) {
    impl_->slots.acquire();
    try {
      send(handle_tile(query_of(req), impl_->config, req.get_header_value("If-None-Match")), res);
    } catch (...) {
      impl_->slots.release();
      throw;
    }
    impl_->slots.release();
  });
  impl_->http.Get("/classify", [](const httplib::Request& req, httplib::Response& res) {
    send(handle_classify(query_of(req)), res);
  });
  impl_->http.Get("/loci", [](const httplib::Request& req, httplib::Response& res) {
    send(handle_loci(query_of(req)), res);
  });
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

void Server::listen() { impl_->http.listen_after_bind(); }

void Server::stop() { impl_->http.stop(); }

}  // namespace gmm
