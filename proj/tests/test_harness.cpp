#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "geokin/harness.hpp"

using namespace geokin::harness;

TEST_CASE("config parsing: dotted keys, comments, quotes") {
  Config c = Config::parse_string(
      "# run setup\n"
      "metric = \"bump\"\n"
      "bump.amplitude = 0.25   # trailing comment\n"
      "grid.N = 512\n"
      "\n"
      "source = bump\n");
  CHECK(c.str("metric", "") == "bump");
  CHECK(c.num("bump.amplitude", 0.0) == doctest::Approx(0.25));
  CHECK(c.integer("grid.N", 0) == 512);
  CHECK(c.str("missing", "fallback") == "fallback");
}

TEST_CASE("config errors carry line numbers") {
  try {
    Config::parse_string("a = 1\nnot a key value pair\n", "test.cfg");
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("test.cfg:2") != std::string::npos);
  }
  Config c = Config::parse_string("x = abc\n");
  CHECK_THROWS_AS(c.num("x", 0.0), std::exception);
}

TEST_CASE("metric and source factories") {
  Config c = Config::parse_string("metric = bump\nbump.amplitude = 0.2\ndomain.radius = 1.5\n");
  geokin::MetricField m = metric_from_config(c);
  CHECK(m.domain.radius == doctest::Approx(1.5));
  geokin::Mat g = m.g(geokin::Vec(0.0, 0.0));
  CHECK(g.at(1, 1) == doctest::Approx(1.2));

  Config bad = Config::parse_string("metric = hyperbolic\n");
  CHECK_THROWS_AS(metric_from_config(bad), config_error);

  Config zc = Config::parse_string("source = zero\n");
  CHECK(source_from_config(zc).is_zero());
}

TEST_CASE("report serialization") {
  SuiteReport r;
  CHECK(emit_report(r, "csv") ==
        "name,ref,value,threshold,pass,expected_fail,wall_ms,detail\n");
  SuiteCheck ck;
  ck.name = "sample";
  ck.ref = "(3.4)";
  ck.value = 0.5;
  ck.pass = true;
  r.checks.push_back(ck);
  std::string csv = emit_report(r, "csv");
  CHECK(csv.find("sample,(3.4),0.5,0,true,false,0,") != std::string::npos);
  CHECK(r.pass());
  r.checks.push_back(SuiteCheck{});  // default pass = false
  CHECK_FALSE(r.pass());
  CHECK(emit_report(r, "text").find("OVERALL FAIL") != std::string::npos);
}

TEST_CASE("geodesic suite runs twice with identical output bytes") {
  Config cfg = Config::parse_string("metric = bump\nray.step = 0.005\n");
  namespace fs = std::filesystem;
  fs::path base = fs::temp_directory_path() / "geokin_harness_test";
  fs::remove_all(base);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  SuiteReport r1 = run_experiment(cfg, "geodesic", (base / "a").string(), 7);
  SuiteReport r2 = run_experiment(cfg, "geodesic", (base / "b").string(), 7);
  CHECK(r1.pass());
  CHECK(r2.pass());
  CHECK(slurp(base / "a" / "geodesic.csv") == slurp(base / "b" / "geodesic.csv"));
  CHECK(slurp(base / "a" / "geodesic.csv").find("t,z1,z2,zdot1,zdot2\n") == 0);
  fs::remove_all(base);
}

TEST_CASE("unknown suite is rejected") {
  Config cfg;
  CHECK_THROWS_AS(run_experiment(cfg, "sideways", "/tmp/geokin_nosuite", 1), config_error);
}
