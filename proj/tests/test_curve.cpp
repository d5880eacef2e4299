#include <doctest.h>

#include "netcas/curve.hpp"
#include "netcas/error.hpp"

using netcas::ConfigError;
using netcas::PiecewiseCurve;

TEST_CASE("empty curve is the identity multiplier") {
  PiecewiseCurve c;
  CHECK(c.empty());
  CHECK(c(0.0) == 1.0);
  CHECK(c(1.0) == 1.0);
  CHECK(c(1e9) == 1.0);
}

TEST_CASE("single knot gives a constant curve") {
  PiecewiseCurve c({{8.0, 0.5}});
  CHECK(c(0.0) == 0.5);
  CHECK(c(8.0) == 0.5);
  CHECK(c(100.0) == 0.5);
}

TEST_CASE("linear interpolation between knots") {
  PiecewiseCurve c({{1.0, 0.1}, {8.0, 0.5}});
  // Hand value: w = (4.5-1)/(8-1) = 0.5, so 0.1 + 0.5*(0.5-0.1) = 0.3.
  CHECK(c(4.5) == doctest::Approx(0.3).epsilon(1e-12));
  // Quarter point: w = (2.75-1)/7 = 0.25 -> 0.2.
  CHECK(c(2.75) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("exact knot hits return the stored value") {
  PiecewiseCurve c({{1.0, 0.1}, {8.0, 0.5}, {32.0, 0.9}, {64.0, 1.0}});
  CHECK(c(1.0) == 0.1);
  CHECK(c(8.0) == 0.5);
  CHECK(c(32.0) == 0.9);
  CHECK(c(64.0) == 1.0);
}

TEST_CASE("queries outside the knot range clamp to the end values") {
  PiecewiseCurve c({{1.0, 0.1}, {8.0, 0.5}});
  CHECK(c(0.25) == 0.1);
  CHECK(c(-3.0) == 0.1);
  CHECK(c(9.0) == 0.5);
  CHECK(c(1e12) == 0.5);
}

TEST_CASE("curves may descend past a knee") {
  PiecewiseCurve c({{64.0, 1.0}, {256.0, 0.6}});
  CHECK(c(64.0) == 1.0);
  CHECK(c(256.0) == 0.6);
  CHECK(c(160.0) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(c(256.0) < c(64.0));
}

TEST_CASE("plateau segments interpolate flat") {
  PiecewiseCurve c({{1.0, 0.2}, {128.0, 1.0}, {512.0, 1.0}});
  CHECK(c(256.0) == 1.0);
  CHECK(c(512.0) == 1.0);
  CHECK(c(4096.0) == 1.0);
}

TEST_CASE("knot x values must be strictly increasing") {
  CHECK_THROWS_AS(PiecewiseCurve({{2.0, 1.0}, {2.0, 1.5}}), ConfigError);
  CHECK_THROWS_AS(PiecewiseCurve({{3.0, 1.0}, {1.0, 1.5}}), ConfigError);
}

TEST_CASE("knot values must be positive") {
  CHECK_THROWS_AS(PiecewiseCurve({{1.0, 0.0}}), ConfigError);
  CHECK_THROWS_AS(PiecewiseCurve({{1.0, 0.5}, {2.0, -0.1}}), ConfigError);
}
