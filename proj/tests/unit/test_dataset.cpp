#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "frontier/dataset.hpp"

using namespace frontier;

namespace {

AssetUniverse parse(const std::string& text) {
  std::istringstream in(text);
  return parse_universe(in);
}

Uef parse_uef(const std::string& text) {
  std::istringstream in(text);
  return load_uef(in);
}

}  // namespace

TEST_CASE("build_covariance") {
  SquareMatrix rho(2, 1.0);
  rho(0, 1) = rho(1, 0) = 0.5;
  const auto cov = build_covariance({0.1, 0.2}, rho);
  CHECK(cov(0, 0) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(cov(0, 1) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(cov(1, 0) == cov(0, 1));

  rho(0, 1) = rho(1, 0) = 0.0;
  CHECK(build_covariance({0.1, 0.2}, rho)(0, 1) == 0.0);

  rho(0, 1) = rho(1, 0) = 1.0 + 1e-6;
  CHECK_THROWS_AS(build_covariance({0.1, 0.2}, rho), DatasetError);
  CHECK_THROWS_AS(build_covariance({0.1}, rho), DatasetError);
}

TEST_CASE("parse_universe accepts files with and without self-pairs") {
  const std::string without = "2\n0.01 0.1\n0.02 0.2\n1 2 0.5\n";
  const std::string with = "2\n0.01 0.1\n0.02 0.2\n1 1 1.0\n1 2 0.5\n2 2 1\n";
  const auto a = parse(without);
  const auto b = parse(with);
  CHECK(a.size() == 2);
  CHECK(a.covariance() == b.covariance());
  CHECK(a.covariance(0, 0) == doctest::Approx(0.01));
  CHECK(a.covariance(1, 1) == 0.2 * 0.2);
  CHECK(a.covariance(0, 1) == doctest::Approx(0.01));
}

TEST_CASE("parse_universe: zero correlation gives exactly zero covariance") {
  const auto u = parse("2\n0.01 0.1\n0.02 0.2\n1 2 0\n");
  CHECK(u.covariance(0, 1) == 0.0);
  CHECK(u.covariance(1, 0) == 0.0);
}

TEST_CASE("parse_universe rejects malformed input") {
  CHECK_THROWS_AS(parse(""), DatasetError);
  CHECK_THROWS_AS(parse("0\n"), DatasetError);
  CHECK_THROWS_AS(parse("-3\n"), DatasetError);
  CHECK_THROWS_AS(parse("2\n0.01 0.1\n0.02 abc\n1 2 0.5\n"), DatasetError);
  CHECK_THROWS_AS(parse("2\n0.01 0.1\n0.02 0.2\n1 3 0.5\n"), DatasetError);
  CHECK_THROWS_AS(parse("2\n0.01 0.1\n0.02 0.2\n0 2 0.5\n"), DatasetError);
  CHECK_THROWS_AS(parse("3\n0.01 0.1\n0.02 0.2\n0.03 0.3\n1 2 0.5\n1 3 0.1\n"), DatasetError);
  CHECK_THROWS_AS(parse("2\n0.01 0.1\n0.02 0.2\n1 2 0.5\n2 1 0.4\n"), DatasetError);
  CHECK_THROWS_AS(parse("2\n0.01 0.1\n0.02 0.2\n1 1 0.9\n1 2 0.5\n"), DatasetError);
  CHECK_THROWS_AS(parse("2\n0.01 -0.1\n0.02 0.2\n1 2 0.5\n"), DatasetError);
  CHECK_THROWS_AS(parse("2\n0.01 0.1\n0.02 0.2\n1 2 1.5\n"), DatasetError);
}

TEST_CASE("parse_universe tolerates a repeated pair with the same value") {
  const auto u = parse("2\n0.01 0.1\n0.02 0.2\n1 2 0.5\n2 1 0.5\n");
  CHECK(u.correlations()(0, 1) == 0.5);
}

TEST_CASE("parse errors carry a line number") {
  try {
    parse("2\n0.01 0.1\n0.02 0.2\n1 2 zz\n");
    FAIL("expected an error");
  } catch (const DatasetError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("universe invariants hold on the stand-in instances") {
  for (std::size_t d = 0; d < 5; ++d) {
    const auto u = frontier::testing::standin_universe(d);
    CHECK(u->size() == frontier::testing::kBenchmarkSizes[d]);
    for (std::size_t i = 0; i < u->size(); ++i) {
      const double s = u->std_devs()[i];
      CHECK(std::abs(u->covariance(i, i) - s * s) <= 1e-12 * s * s);
      for (std::size_t j = 0; j < i; ++j) CHECK(u->covariance(i, j) == u->covariance(j, i));
    }
  }
}

TEST_CASE("write_universe round-trips bit-exactly") {
  for (std::size_t d = 0; d < 5; d += 2) {
    const auto u = frontier::testing::standin_universe(d);
    std::stringstream buf;
    write_universe(buf, *u);
    const auto back = parse_universe(buf);
    CHECK(back.mean_returns() == u->mean_returns());
    CHECK(back.std_devs() == u->std_devs());
    CHECK(back.correlations() == u->correlations());
    CHECK(back.covariance() == u->covariance());
  }
}

TEST_CASE("load_uef") {
  SUBCASE("standard deviation is the square root of the variance") {
    const auto uef = parse_uef("0.003 0.000729\n");
    REQUIRE(uef.size() == 1);
    CHECK(uef.front().std_dev == doctest::Approx(0.027).epsilon(1e-15));
  }
  SUBCASE("points are sorted by return") {
    const auto uef = parse_uef("0.004 0.002\n0.002 0.001\n0.003 0.0015\n");
    CHECK(uef.points()[0].mean_return == 0.002);
    CHECK(uef.points()[2].mean_return == 0.004);
  }
  SUBCASE("ties within slack are accepted") {
    CHECK_NOTHROW(parse_uef("0.002 0.001\n0.003 0.001\n"));
    CHECK_NOTHROW(parse_uef("0.002 0.001\n0.003 0.0009999999999999995\n"));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_uef(""), DatasetError);
    CHECK_THROWS_AS(parse_uef("   \n\n"), DatasetError);
    CHECK_THROWS_AS(parse_uef("0.002 -0.001\n"), DatasetError);
    CHECK_THROWS_AS(parse_uef("0.002\n"), DatasetError);
    CHECK_THROWS_AS(parse_uef("0.002 x\n"), DatasetError);
    CHECK_THROWS_AS(parse_uef("0.002 0.002\n0.003 0.001\n"), DatasetError);
  }
}

TEST_CASE("write_uef round-trips") {
  const Uef uef(frontier::testing::synthetic_frontier(*frontier::testing::standin_universe(0), 30));
  std::stringstream buf;
  write_uef(buf, uef);
  const Uef back = load_uef(buf);
  REQUIRE(back.size() == uef.size());
  for (std::size_t i = 0; i < uef.size(); ++i) {
    CHECK(back.points()[i].mean_return == uef.points()[i].mean_return);
    CHECK(back.points()[i].variance == uef.points()[i].variance);
  }
}

TEST_CASE("missing files are reported as dataset errors") {
  CHECK_THROWS_AS(load_universe_file("/nonexistent/port9"), DatasetError);
  CHECK_THROWS_AS(load_uef_file("/nonexistent/portef9"), DatasetError);
}
