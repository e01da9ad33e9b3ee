// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <httplib.h>

#include <json.hpp>
#include <thread>

#include "gmm/geometry.hpp"
#include "gmm/render.hpp"
#include "gmm/service.hpp"
#include "gmm/text.hpp"

using gmm::Query;
using nlohmann::json;

namespace {

gmm::ImageBuffer decode(const std::string& body) {
  return gmm::decode_image({body.begin(), body.end()}, gmm::ImageFormat::PNG);
}

std::string coord(gmm::Complex z) { return gmm::format_number(z.real()) + "," + gmm::format_number(z.imag()); }

}  // namespace

TEST_CASE("tile") {
  const Query q{{"slice", "fixed-crit"}, {"n", "6"}, {"cx", "0"}, {"cy", "0"}, {"w", "0.7"}, {"px", "256"}};
  const gmm::HttpResponse r = gmm::handle_tile(q);
  REQUIRE(r.status == 200);
  CHECK(r.content_type == "image/png");
  const gmm::ImageBuffer img = decode(r.body);
  CHECK(img.width == 256);
  CHECK(img.height == 256);
  CHECK(gmm::handle_tile(q).body == r.body);
  CHECK(r.headers.at("ETag") == gmm::handle_tile(q).headers.at("ETag"));

  Query wide = q;
  wide["py"] = "128";
  wide["px"] = "64";
  const gmm::ImageBuffer rect = decode(gmm::handle_tile(wide).body);
  CHECK(rect.width == 64);
  CHECK(rect.height == 128);
  CHECK(gmm::handle_tile(wide).headers.at("ETag") != r.headers.at("ETag"));
}

TEST_CASE("tile matches render_plane") {
  const Query q{{"slice", "a-slice"}, {"n", "5"}, {"b", "0.5"}, {"w", "2.4"}, {"px", "48"}, {"budget", "300"}};
  gmm::PlaneSpec spec;
  spec.kind = gmm::SliceSpec{gmm::SliceKind::ASlice, 5, 0.5};
  spec.budget = 300;
  CHECK(decode(gmm::handle_tile(q).body) == gmm::render_plane(spec, gmm::Viewport::square({}, 2.4, 48), 1));

  const Query j{{"kind", "julia"}, {"n", "4"}, {"a", "0.1,0.05"}, {"w", "4"}, {"px", "40"},
                {"overlay", "critical-values,zero"}};
  gmm::PlaneSpec js;
  js.kind = gmm::MapParams::fixed_critical(4, {0.1, 0.05});
  js.overlays = {gmm::Overlay::CriticalValues, gmm::Overlay::Zero};
  CHECK(decode(gmm::handle_tile(j).body) == gmm::render_plane(js, gmm::Viewport::square({}, 4.0, 40), 1));
}

TEST_CASE("tile errors") {
  const Query base{{"slice", "fixed-crit"}, {"n", "6"}, {"w", "0.7"}, {"px", "8"}};
  auto with = [&](const char* k, const char* v) {
    Query q = base;
    q[k] = v;
    return gmm::handle_tile(q).status;
  };
  CHECK(with("w", "1e-20") == 422);
  CHECK(with("w", "0") == 422);
  CHECK(with("px", "4096") == 422);
  CHECK(with("px", "0") == 422);
  CHECK(with("py", "2049") == 422);
  CHECK(with("n", "2") == 422);
  CHECK(with("budget", "0") == 422);
  CHECK(with("w", "abc") == 400);
  CHECK(with("n", "six") == 400);
  CHECK(with("slice", "mandel") == 400);
  CHECK(with("kind", "movie") == 400);
  CHECK(with("overlay", "stars") == 400);
  CHECK(with("slice", "a-slice") == 400);
  CHECK(with("cx", "1,2,3") == 400);
  Query no_w = base;
  no_w.erase("w");
  CHECK(gmm::handle_tile(no_w).status == 400);
  const gmm::HttpResponse err = gmm::handle_tile({{"n", "6"}, {"w", "1e-20"}});
  CHECK(err.content_type == "application/json");
  CHECK(json::parse(err.body).contains("error"));
  CHECK(gmm::handle_tile({{"kind", "julia"}, {"n", "4"}, {"a", "0"}, {"w", "1"}, {"px", "4"}}).status == 422);
  CHECK(gmm::handle_tile({{"kind", "julia"}, {"n", "4"}, {"w", "1"}, {"px", "4"}}).status == 400);
}

TEST_CASE("tile ETag revalidation") {
  const Query q{{"n", "4"}, {"w", "1"}, {"px", "16"}};
  const gmm::HttpResponse first = gmm::handle_tile(q);
  const gmm::HttpResponse again = gmm::handle_tile(q, {}, first.headers.at("ETag"));
  CHECK(again.status == 304);
  CHECK(again.body.empty());
  CHECK(gmm::handle_tile(q, {}, "\"stale\"").status == 200);
}

TEST_CASE("classify") {
  const json eighth = json::parse(gmm::handle_classify({{"slice", "fixed-crit"}, {"n", "3"}, {"point", "0.125,0"}}).body);
  CHECK(eighth["minus"]["outcome"] == "FixedVMinus");
  CHECK(eighth["phi_abs"].is_null());

  const json out = json::parse(gmm::handle_classify({{"n", "3"}, {"point", "0.02,0.2"}}).body);
  CHECK(out["minus"]["outcome"] == "Escaped");

  const gmm::HttpResponse r = gmm::handle_classify({{"n", "4"}, {"point", coord(gmm::center_a_k(4, 4))}});
  REQUIRE(r.status == 200);
  CHECK(r.content_type == "application/json");
  const json c4 = json::parse(r.body);
  CHECK(c4["minus"]["outcome"] == "AttractedToVPlus");
  CHECK(c4["minus"]["entry_iter"] == 1);
  CHECK(c4["plus"]["entry_iter"] == 0);
  CHECK(c4["phi_abs"].get<double>() < 1e-8);
  CHECK(c4["color"].size() == 3);

  const json zero = json::parse(gmm::handle_classify({{"n", "4"}, {"point", "0,0"}}).body);
  CHECK(zero["degenerate"] == true);

  CHECK(gmm::handle_classify({{"n", "4"}}).status == 400);
  CHECK(gmm::handle_classify({{"n", "4"}, {"point", "x"}}).status == 400);
  CHECK(gmm::handle_classify({{"n", "1"}, {"point", "0.1"}}).status == 422);
  CHECK(gmm::handle_classify({{"n", "4"}, {"point", "0.1"}, {"budget", "-3"}}).status == 422);
}

TEST_CASE("classify agrees with a 1x1 tile") {
  const std::vector<Query> slices = {{{"slice", "fixed-crit"}, {"n", "6"}},
                                     {{"slice", "a-slice"}, {"n", "5"}, {"b", "0.5"}},
                                     {{"slice", "linear"}, {"n", "4"}, {"t", "0.5,0.5"}}};
  const gmm::Complex points[] = {{0.1, 0.02}, {-0.3, 0.4}, {0.5, 0.5}, gmm::center_a_k(6, 4), {0.02, 0.2}};
  for (const Query& s : slices) {
    for (const gmm::Complex z : points) {
      Query c = s;
      c["point"] = coord(z);
      c["budget"] = "400";
      const json cls = json::parse(gmm::handle_classify(c).body);
      Query t = s;
      t["cx"] = gmm::format_number(z.real());
      t["cy"] = gmm::format_number(z.imag());
      t["w"] = "1e-6";
      t["px"] = "1";
      t["budget"] = "400";
      const gmm::Rgb px = decode(gmm::handle_tile(t).body).at(0, 0);
      CHECK(cls["color"][0] == px.r);
      CHECK(cls["color"][1] == px.g);
      CHECK(cls["color"][2] == px.b);
    }
  }
}

TEST_CASE("loci") {
  const json c3 = json::parse(gmm::handle_loci({{"n", "3"}, {"kind", "centers"}}).body);
  REQUIRE(c3["records"].size() == 5);
  CHECK(c3["records"][2]["k"] == 3);
  CHECK(c3["records"][2]["re"].get<double>() == doctest::Approx(0.125));
  CHECK(std::abs(c3["records"][2]["im"].get<double>()) < 1e-16);
  CHECK(json::parse(gmm::handle_loci({{"n", "6"}, {"kind", "centers"}}).body)["records"].size() == 11);

  const json sp = json::parse(gmm::handle_loci({{"n", "inf"}, {"kind", "spine"}, {"samples", "64"}}).body);
  REQUIRE(sp["records"].size() == 64);
  CHECK(sp["records"][0]["theta"] == 0.0);
  CHECK(sp["records"][0]["re"] == 0.25);
  CHECK(sp["records"][0]["im"] == 0.0);
  CHECK(json::parse(gmm::handle_loci({{"n", "5"}, {"kind", "spine"}}).body)["records"].size() == 64);

  CHECK(gmm::handle_loci({{"n", "inf"}, {"kind", "centers"}}).status == 400);
  CHECK(gmm::handle_loci({{"n", "2"}, {"kind", "centers"}}).status == 400);
  CHECK(gmm::handle_loci({{"n", "3"}, {"kind", "rays"}}).status == 400);
  CHECK(gmm::handle_loci({{"kind", "centers"}}).status == 400);
  CHECK(gmm::handle_loci({{"n", "3"}}).status == 400);
  CHECK(gmm::handle_loci({{"n", "3"}, {"kind", "spine"}, {"samples", "0"}}).status == 400);
}

TEST_CASE("handlers are stateless") {
  const Query t{{"n", "5"}, {"w", "1"}, {"px", "12"}};
  const Query c{{"n", "5"}, {"point", "0.1,0.1"}};
  const Query l{{"n", "5"}, {"kind", "centers"}};
  const std::string t1 = gmm::handle_tile(t).body;
  const std::string c1 = gmm::handle_classify(c).body;
  const std::string l1 = gmm::handle_loci(l).body;
  CHECK(gmm::handle_loci(l).body == l1);
  CHECK(gmm::handle_classify(c).body == c1);
  CHECK(gmm::handle_tile(t).body == t1);
}

TEST_CASE("live server") {
  gmm::Server server;
  const int port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread loop([&] { server.listen(); });

  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);
  auto tile = client.Get("/tile?slice=fixed-crit&n=6&cx=0&cy=0&w=0.7&px=64");
  for (int i = 0; i < 50 && !tile; ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    tile = client.Get("/tile?slice=fixed-crit&n=6&cx=0&cy=0&w=0.7&px=64");
  }
  REQUIRE(tile);
  CHECK(tile->status == 200);
  CHECK(tile->get_header_value("Content-Type") == "image/png");
  CHECK(tile->get_header_value("Access-Control-Allow-Origin") == "*");
  const std::string etag = tile->get_header_value("ETag");
  CHECK_FALSE(etag.empty());

  auto cached = client.Get("/tile?slice=fixed-crit&n=6&cx=0&cy=0&w=0.7&px=64", {{"If-None-Match", etag}});
  REQUIRE(cached);
  CHECK(cached->status == 304);

  auto tiny = client.Get("/tile?n=6&w=1e-20&px=4");
  REQUIRE(tiny);
  CHECK(tiny->status == 422);

  auto cls = client.Get("/classify?slice=fixed-crit&n=3&point=0.125,0");
  REQUIRE(cls);
  CHECK(cls->status == 200);
  CHECK(json::parse(cls->body)["minus"]["outcome"] == "FixedVMinus");

  auto loci = client.Get("/loci?n=6&kind=centers");
  REQUIRE(loci);
  CHECK(json::parse(loci->body)["records"].size() == 11);

  std::vector<std::thread> clients;
  std::atomic<int> ok{0};
  for (int i = 0; i < 6; ++i) {
    clients.emplace_back([&, i] {
      httplib::Client c("127.0.0.1", port);
      auto r = c.Get("/tile?n=5&w=1&px=32&cx=" + std::to_string(0.01 * i));
      if (r && r->status == 200) ++ok;
    });
  }
  for (auto& t : clients) t.join();
  CHECK(ok == 6);

  server.stop();
  loop.join();
}
