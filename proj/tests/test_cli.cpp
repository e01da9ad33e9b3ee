// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "gmm/cli.hpp"
#include "gmm/render.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "gmm");
  std::ostringstream out, err;
  const int code = gmm::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, '\t');) out.push_back(f);
  return out;
}

std::string temp_path(const char* name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST_CASE("centers --verify") {
  const Run r = run({"centers", "--n", "3", "--verify"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 6);
  CHECK(ls[0] == "#schema\tk\ta_re\ta_im\trelation\tresidual");
  const auto row = fields(ls[3]);
  REQUIRE(row.size() == 5);
  CHECK(row[0] == "3");
  CHECK(row[1] == "0.125");
  CHECK(row[2] == "0");
  CHECK(row[3] == "v- fixed");
  CHECK(std::stod(row[4]) < 1e-12);
  CHECK(fields(ls[2])[3] == "v- -> v+");
  CHECK(lines(run({"centers", "--n", "6"}).out).size() == 12);
}

TEST_CASE("spine") {
  const Run r = run({"spine", "--n", "inf", "--samples", "64"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 65);
  const auto first = fields(ls[1]);
  CHECK(first[0] == "0");
  CHECK(first[1] == "0.25");
  CHECK(first[2] == "0");
  CHECK(first[3] == "1");
  CHECK(run({"spine", "--n", "5", "--samples", "8"}).code == 0);
  CHECK(run({"spine", "--n", "two"}).code == 2);
  CHECK(run({"spine", "--n", "inf", "--samples", "0"}).code == 2);
}

TEST_CASE("verify exit codes") {
  const Run ok = run({"verify", "--suite", "c-patterns", "--n-range", "3:8"});
  CHECK(ok.code == 0);
  CHECK(ok.out.rfind("#schema\t", 0) == 0);
  CHECK(ok.out.find("#result\tc-patterns\t") != std::string::npos);

  const Run two = run({"verify", "--suite", "fixed-point,regime"});
  CHECK(two.code == 0);
  CHECK(two.out.find("#result\tregime\t") != std::string::npos);

  const Run fail = run({"verify", "--suite", "m-annulus", "--n-range", "3:3", "--grid", "200"});
  CHECK(fail.code == 1);
  CHECK(fail.out.find("FAILED") != std::string::npos);

  CHECK(run({"verify", "--suite", "unknown"}).code == 2);
  CHECK(run({"verify", "--suite", "fixed-point", "--n-range", "8:3"}).code == 2);
  CHECK(run({"verify", "--suite", "fixed-point", "--n-range", "2:3"}).code == 2);
  CHECK(run({"verify", "--suite", "fixed-point", "--n-range", "x"}).code == 2);
  CHECK(run({"verify"}).code == 2);
}

TEST_CASE("render-param writes an image") {
  const std::string path = temp_path("gmm_cli_n6.png");
  const Run r = run({"render-param", "--slice", "fixed-crit", "--n", "6", "--center", "0,0", "--width", "0.7",
                     "--px", "200", "--out", path});
  REQUIRE(r.code == 0);
  std::ifstream in(path, std::ios::binary);
  const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), {}};
  const gmm::ImageBuffer img = gmm::decode_image(bytes, gmm::ImageFormat::PNG);
  CHECK(img.width == 200);
  int bounded = 0;
  for (int j = 0; j < img.height; ++j) {
    for (int i = 0; i < img.width; ++i) {
      const gmm::Rgb c = img.at(i, j);
      if (c.r == c.g && c.g == c.b && c.r <= 110) ++bounded;
    }
  }
  CHECK(bounded > 0);
  std::remove(path.c_str());
}

TEST_CASE("render-julia and the other slices") {
  const std::string path = temp_path("gmm_cli_j.ppm");
  CHECK(run({"render-julia", "--n", "4", "--a", "0.1,0.05", "--px", "32", "--out", path}).code == 0);
  CHECK(run({"render-julia", "--n", "4", "--a", "0.1", "--b", "0.2,0", "--px", "32", "--out", path}).code == 0);
  CHECK(run({"render-param", "--slice", "a-slice", "--n", "5", "--b", "0.5", "--px", "16", "--out", path}).code == 0);
  CHECK(run({"render-param", "--slice", "b-slice", "--n", "5", "--a", "0.1", "--px", "16", "--out", path}).code == 0);
  CHECK(run({"render-param", "--slice", "linear", "--n", "5", "--t", "1", "--px", "16", "--out", path}).code == 0);
  std::remove(path.c_str());
}

TEST_CASE("usage errors exit 2 before any work") {
  const std::string path = temp_path("gmm_cli_never.png");
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"render-param", "--slice", "mandel", "--n", "6", "--out", path}).code == 2);
  CHECK(run({"render-param", "--slice", "fixed-crit", "--n", "2", "--out", path}).code == 2);
  CHECK(run({"render-param", "--slice", "fixed-crit", "--n", "6", "--width", "-1", "--out", path}).code == 2);
  CHECK(run({"render-param", "--slice", "fixed-crit", "--n", "6", "--px", "0", "--out", path}).code == 2);
  CHECK(run({"render-param", "--slice", "fixed-crit", "--n", "6", "--center", "1;2", "--out", path}).code == 2);
  CHECK(run({"render-param", "--slice", "fixed-crit", "--n", "6", "--out", temp_path("x.gif")}).code == 2);
  CHECK(run({"render-param", "--slice", "fixed-crit", "--n", "6", "--overlay", "stars", "--out", path}).code == 2);
  CHECK(run({"render-param", "--slice", "a-slice", "--n", "6", "--out", path}).code == 2);
  CHECK(run({"render-param", "--slice", "b-slice", "--n", "6", "--a", "0", "--out", path}).code == 2);
  CHECK(run({"render-julia", "--n", "4", "--a", "0", "--out", path}).code == 2);
  CHECK(run({"render-param", "--slice", "fixed-crit", "--n", "6"}).code == 2);
  CHECK_FALSE(std::filesystem::exists(path));
  CHECK(run({"centers", "--n", "2"}).code == 2);
  CHECK(run({"serve", "--port", "70000"}).code == 2);
}

TEST_CASE("write failure exits 1") {
  const Run r = run({"render-param", "--slice", "fixed-crit", "--n", "6", "--px", "4", "--out",
                     "/nonexistent-dir/x.png"});
  CHECK(r.code == 1);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("help exits 0") {
  const Run r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("render-param") != std::string::npos);
}
