// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

#include "gmm/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <optional>
#include <sstream>

#include "gmm/dynamics.hpp"
#include "gmm/geometry.hpp"
#include "gmm/render.hpp"
#include "gmm/service.hpp"
#include "gmm/text.hpp"
#include "gmm/verify.hpp"

namespace gmm {
namespace {

// Raised for flag values that parse but do not validate.
struct BadFlag {
  std::string message;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Complex complex_flag(const std::string& name, const std::string& value) {
  const auto z = parse_complex(value);
  if (!z) throw BadFlag{fmt::format("{}: expected X,Y but got '{}'", name, value)};
  return *z;
}

void check_n(int n) {
  if (n < 3) throw BadFlag{fmt::format("--n: must be >= 3, got {}", n)};
}

std::vector<Overlay> overlay_flag(const std::string& value) {
  std::vector<Overlay> out;
  for (const std::string& item : split(value, ',')) {
    if (item == "centers") {
      out.push_back(Overlay::Centers);
    } else if (item == "spine") {
      out.push_back(Overlay::Spine);
    } else if (item == "critical-values") {
      out.push_back(Overlay::CriticalValues);
    } else if (item == "zero") {
      out.push_back(Overlay::Zero);
    } else {
      throw BadFlag{fmt::format("--overlay: unknown overlay '{}'", item)};
    }
  }
  return out;
}

struct ViewFlags {
  std::string center = "0,0";
  double width = 0.0;
  int px = 512;
  int max_iter = 0;
  int workers = 0;
  std::string out_file;
  std::string overlay;

  void attach(CLI::App* cmd, double default_width) {
    width = default_width;
    cmd->add_option("--center", center, "viewport center X,Y")->capture_default_str();
    cmd->add_option("--width", width, "viewport width in plane units")->capture_default_str();
    cmd->add_option("--px", px, "image side in pixels")->capture_default_str();
    cmd->add_option("--max-iter", max_iter, "iteration budget (default scales with width)");
    cmd->add_option("--workers", workers, "render threads (0: all cores)");
    cmd->add_option("--out", out_file, "output .png or .ppm")->required();
    cmd->add_option("--overlay", overlay, "comma list of centers,spine,critical-values,zero");
  }

  Viewport viewport() const {
    if (!(width > 0.0)) throw BadFlag{"--width: must be positive"};
    if (px < 1 || px > 16384) throw BadFlag{"--px: must lie in [1, 16384]"};
    if (max_iter < 0) throw BadFlag{"--max-iter: must be >= 1"};
    const std::string lower = [&] {
      std::string s = out_file;
      std::transform(s.begin(), s.end(), s.begin(), ::tolower);
      return s;
    }();
    const bool png = lower.size() > 4 && lower.compare(lower.size() - 4, 4, ".png") == 0;
    const bool ppm = lower.size() > 4 && lower.compare(lower.size() - 4, 4, ".ppm") == 0;
    if (!png && !ppm) throw BadFlag{"--out: extension must be .png or .ppm"};
    return Viewport::square(complex_flag("--center", center), width, px);
  }

  int budget() const { return max_iter > 0 ? max_iter : default_budget(width); }
};

int write_render(const PlaneSpec& spec, const ViewFlags& view, const Viewport& vp, std::ostream& out,
                 std::ostream& err) {
  const ImageBuffer img = render_plane(spec, vp, view.workers);
  try {
    write_image(img, view.out_file);
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  out << fmt::format("wrote {} {}x{} budget={}\n", view.out_file, vp.px_w, vp.px_h, spec.budget);
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for the generalized McMullen family z^n + a/z^n + b", "gmm"};
  app.require_subcommand(1);

  auto* render_param = app.add_subcommand("render-param", "render a parameter slice");
  std::string slice_kind;
  int n = 0;
  std::string a_flag, b_flag, t_flag;
  ViewFlags pview;
  render_param->add_option("--slice", slice_kind, "fixed-crit, a-slice, b-slice or linear")
      ->required()
      ->check(CLI::IsMember({"fixed-crit", "a-slice", "b-slice", "linear"}));
  render_param->add_option("--n", n, "half-degree n >= 3")->required();
  render_param->add_option("--a", a_flag, "fixed a for b-slice");
  render_param->add_option("--b", b_flag, "fixed b for a-slice");
  render_param->add_option("--t", t_flag, "ratio t in b = t a for linear");
  pview.attach(render_param, 2.0);

  auto* render_julia = app.add_subcommand("render-julia", "render a dynamical plane");
  int jn = 0;
  std::string ja_flag, jb_flag;
  ViewFlags jview;
  jview.overlay = "critical-values,zero";
  render_julia->add_option("--n", jn, "half-degree n >= 3")->required();
  render_julia->add_option("--a", ja_flag, "a as X,Y")->required();
  render_julia->add_option("--b", jb_flag, "b as X,Y (default: fixed-critical b)");
  jview.attach(render_julia, 4.0);

  auto* centers = app.add_subcommand("centers", "list the centers a_k");
  int cn = 0;
  bool cverify = false;
  centers->add_option("--n", cn, "half-degree n >= 3")->required();
  centers->add_flag("--verify", cverify, "append the critical relation residual");

  auto* spine = app.add_subcommand("spine", "sample the spine");
  std::string sn;
  int samples = 64;
  spine->add_option("--n", sn, "half-degree n >= 3 or inf")->required();
  spine->add_option("--samples", samples, "number of samples")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::string suites, n_range;
  std::uint64_t seed = kDefaultSeed;
  int vsamples = 0, vgrid = 0, vbudget = 512, vworkers = 0;
  bool timing = false;
  verify->add_option("--suite", suites, "comma list of suite ids, or all")->required();
  verify->add_option("--n-range", n_range, "LO:HI");
  verify->add_option("--seed", seed, "sampling seed")->capture_default_str();
  verify->add_option("--samples", vsamples, "per-n samples (0: suite default)");
  verify->add_option("--grid", vgrid, "grid side (0: suite default)");
  verify->add_option("--budget", vbudget, "iteration budget")->capture_default_str();
  verify->add_option("--workers", vworkers, "threads (0: all cores)");
  verify->add_flag("--timing", timing, "print runtime_ms");

  auto* serve = app.add_subcommand("serve", "start the HTTP service");
  int port = 8080;
  std::string host = "127.0.0.1";
  serve->add_option("--port", port, "TCP port")->capture_default_str();
  serve->add_option("--host", host, "bind address")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*render_param) {
      check_n(n);
      SliceSpec slice{*parse_slice(slice_kind), n, {}};
      switch (slice.kind) {
        case SliceKind::FixedCrit:
          break;
        case SliceKind::ASlice:
          if (b_flag.empty()) throw BadFlag{"a-slice requires --b"};
          slice.constant = complex_flag("--b", b_flag);
          break;
        case SliceKind::BSlice:
          if (a_flag.empty()) throw BadFlag{"b-slice requires --a"};
          slice.constant = complex_flag("--a", a_flag);
          if (slice.constant == Complex{}) throw BadFlag{"--a: must be nonzero"};
          break;
        case SliceKind::Linear:
          if (t_flag.empty()) throw BadFlag{"linear requires --t"};
          slice.constant = complex_flag("--t", t_flag);
          break;
      }
      const Viewport vp = pview.viewport();
      PlaneSpec spec;
      spec.kind = slice;
      spec.budget = pview.budget();
      spec.overlays = overlay_flag(pview.overlay);
      return write_render(spec, pview, vp, out, err);
    }
    if (*render_julia) {
      check_n(jn);
      const Complex a = complex_flag("--a", ja_flag);
      if (a == Complex{}) throw BadFlag{"--a: must be nonzero"};
      const MapParams p = jb_flag.empty() ? MapParams::fixed_critical(jn, a)
                                          : MapParams::general(jn, a, complex_flag("--b", jb_flag));
      const Viewport vp = jview.viewport();
      PlaneSpec spec;
      spec.kind = p;
      spec.budget = jview.budget();
      spec.overlays = overlay_flag(jview.overlay);
      return write_render(spec, jview, vp, out, err);
    }
    if (*centers) {
      check_n(cn);
      out << "#schema\tk\ta_re\ta_im\trelation" << (cverify ? "\tresidual" : "") << "\n";
      for (int k = 1; k <= 2 * cn - 1; ++k) {
        const Complex a = center_a_k(cn, k);
        const bool odd = center_relation(k) == CenterRelation::VMinusFixed;
        out << k << "\t" << format_number(a.real()) << "\t" << format_number(a.imag()) << "\t"
            << (odd ? "v- fixed" : "v- -> v+");
        if (cverify) {
          const MapParams p = MapParams::fixed_critical(cn, a);
          const Complex target = odd ? p.v_minus() : p.v_plus();
          out << "\t" << format_number(std::abs(p.apply(p.v_minus()) - target));
        }
        out << "\n";
      }
      return kExitOk;
    }
    if (*spine) {
      std::optional<int> sn_value;
      if (sn != "inf") {
        const auto v = parse_integer(sn);
        if (!v) throw BadFlag{"--n: expected an integer or inf"};
        check_n(static_cast<int>(*v));
        sn_value = static_cast<int>(*v);
      }
      if (samples < 1 || samples > 1000000) throw BadFlag{"--samples: must lie in [1, 1000000]"};
      out << "#schema\ttheta\ta_re\ta_im\tvalid\n";
      for (const SpineSample& s : spine_polyline(sn_value, samples)) {
        out << format_number(s.theta) << "\t" << format_number(s.a.real()) << "\t"
            << format_number(s.a.imag()) << "\t" << (s.valid ? 1 : 0) << "\n";
      }
      return kExitOk;
    }
    if (*verify) {
      std::vector<std::string> ids = split(suites, ',');
      if (ids.size() == 1 && ids[0] == "all") ids = suite_ids();
      if (ids.empty()) throw BadFlag{"--suite: no suite given"};
      for (const std::string& id : ids) {
        if (std::find(suite_ids().begin(), suite_ids().end(), id) == suite_ids().end()) {
          throw BadFlag{fmt::format("--suite: unknown suite '{}'", id)};
        }
      }
      SuiteConfig cfg;
      if (!n_range.empty()) {
        const auto parts = split(n_range, ':');
        const auto lo = parts.size() == 2 ? parse_integer(parts[0]) : std::nullopt;
        const auto hi = parts.size() == 2 ? parse_integer(parts[1]) : std::nullopt;
        if (!lo || !hi || *lo < 3 || *hi < *lo || *hi > 1000) {
          throw BadFlag{"--n-range: expected LO:HI with 3 <= LO <= HI <= 1000"};
        }
        cfg.n_range = std::make_pair(static_cast<int>(*lo), static_cast<int>(*hi));
      }
      if (vsamples < 0 || vgrid < 0 || vbudget < 1) throw BadFlag{"--samples/--grid/--budget out of range"};
      cfg.seed = seed;
      cfg.samples = vsamples;
      cfg.grid = vgrid;
      cfg.budget = vbudget;
      cfg.workers = vworkers;
      bool all_passed = true;
      out << report_schema();
      for (const std::string& id : ids) {
        const VerificationReport rep = run_suite(id, cfg);
        out << format_report(rep, timing);
        all_passed = all_passed && rep.passed;
      }
      return all_passed ? kExitOk : kExitFailure;
    }
    if (*serve) {
      if (port < 0 || port > 65535) throw BadFlag{"--port: must lie in [0, 65535]"};
      Server server;
      const int bound = server.bind(host, port);
      if (bound < 0) {
        err << "error: cannot bind " << host << ":" << port << "\n";
        return kExitFailure;
      }
      out << "listening on http://" << host << ":" << bound << "\n" << std::flush;
      server.listen();
      return kExitOk;
    }
  } catch (const BadFlag& e) {
    err << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace gmm
