#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "curvosc/curvature.hpp"

using namespace curvosc;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("curvature classification and domain") {
  CHECK(Curvature(0.5).sign_class() == SignClass::Spherical);
  CHECK(Curvature(0.0).sign_class() == SignClass::Flat);
  CHECK(Curvature(-1.0).sign_class() == SignClass::Hyperbolic);
  CHECK(Curvature(0.25).domain_radius() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::isinf(Curvature(0.0).domain_radius()));
  CHECK(std::isinf(Curvature(-2.0).domain_radius()));
  CHECK_THROWS_AS(Curvature(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
}

TEST_CASE("kappa trig values") {
  CHECK(kappa_sin(1.0, kPi / 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(kappa_sin(0.0, 3.7) == 3.7);
  // hyperbolic sine reference
  CHECK(kappa_sin(-1.0, 1.0) == doctest::Approx(1.1752011936438014).epsilon(1e-12));
  CHECK(kappa_cos(0.0, 2.3) == 1.0);
  CHECK(kappa_cos(4.0, 1.0) == doctest::Approx(std::cos(2.0)).epsilon(1e-14));
  CHECK(kappa_tan(-1.0, 0.5) == doctest::Approx(std::tanh(0.5)).epsilon(1e-13));
}

TEST_CASE("kappa trig identity k Sin^2 + Cos^2 = 1") {
  const double ks[] = {-2.0, -1.0, -0.3, -1e-3, -1e-9, 0.0, 1e-9, 1e-3, 0.5, 1.0, 2.0};
  const double xs[] = {0.05, 0.3, 0.7, 1.1, 1.9, 2.7, 3.4};
  for (double k : ks) {
    for (double x : xs) {
      const double s = kappa_sin(k, x);
      const double c = kappa_cos(k, x);
      CHECK(std::abs(k * s * s + c * c - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("kappa trig continuity at k=0") {
  for (double x : {0.2, 1.0, 2.5, 4.0}) {
    for (double k : {1e-6, -1e-6}) {
      CHECK(std::abs(kappa_sin(k, x) - x) <= 1e-5 * std::abs(x * x * x));
      CHECK(std::abs(kappa_cos(k, x) - 1.0) <= 1e-5 * x * x);
    }
  }
}

TEST_CASE("kappa tan pole") {
  CHECK_THROWS_AS(kappa_tan(1.0, kPi / 2), PoleError);
  CHECK_NOTHROW(kappa_tan(1.0, 1.2));
}

TEST_CASE("potential values and limits") {
  CHECK(potential(Curvature(0.0), 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(potential(Curvature(0.5), 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  // hyperbolic ceiling 1/(2|kt|)
  const Curvature hyp(-1.0);
  CHECK(potential(hyp, 1e7) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(potential(hyp, 1e7) < 0.5);
}

TEST_CASE("potential monotone in r") {
  for (double kt : {-1.0, -0.25, 0.0, 0.5, 1.0}) {
    const Curvature curv(kt);
    const double r_hi = curv.spherical() ? 0.999 * curv.domain_radius() : 6.0;
    double prev = potential(curv, 0.0);
    for (int i = 1; i <= 200; ++i) {
      const double u = potential(curv, r_hi * i / 200);
      CHECK(u > prev);
      prev = u;
    }
  }
}

TEST_CASE("potential domain errors") {
  const Curvature curv(0.25);  // r_k = 2
  CHECK_THROWS_AS(potential(curv, 2.0), RadialDomainError);
  CHECK_THROWS_AS(potential(curv, 5.0), RadialDomainError);
  CHECK_THROWS_AS(potential(curv, -0.1), RadialDomainError);
  CHECK_NOTHROW(potential(curv, 1.999));
}

TEST_CASE("measure weight") {
  CHECK(measure_weight(Curvature(0.0), 3.0) == 9.0);
  CHECK(measure_weight(Curvature(0.75), 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(measure_weight(Curvature(-1.0), 1.0) ==
        doctest::Approx(0.70710678118654752).epsilon(1e-14));
  // flat case is exactly r^2
  for (double r : {0.1, 1.0, 2.5, 7.0}) {
    CHECK(measure_weight(Curvature(0.0), r) == r * r);
  }
  CHECK_THROWS_AS(measure_weight(Curvature(1.0), 1.0), RadialDomainError);
}

TEST_CASE("unit conversions") {
  const PhysicalScales unit = make_physical_scales(1.0, 1.0, 1.0);
  const DimensionlessPoint d = to_dimensionless(unit, PhysicalPoint{1.3, -0.4, 2.2});
  CHECK(d.rho == doctest::Approx(1.3).epsilon(1e-15));
  CHECK(d.kappa_tilde == doctest::Approx(-0.4).epsilon(1e-15));
  CHECK(d.energy == doctest::Approx(2.2).epsilon(1e-15));

  // kappa = (m alpha / hbar) kt: m=2, alpha=3 gives kappa = 6 kt
  const PhysicalScales s = make_physical_scales(2.0, 3.0, 1.0);
  const PhysicalPoint p = from_dimensionless(s, DimensionlessPoint{0.0, 1.0, 0.0});
  CHECK(p.kappa == doctest::Approx(6.0).epsilon(1e-15));

  // round trip
  const DimensionlessPoint in{1.37, -0.2, 2.5};
  const DimensionlessPoint back = to_dimensionless(s, from_dimensionless(s, in));
  CHECK(std::abs(back.rho - in.rho) < 1e-14 * std::abs(in.rho));
  CHECK(std::abs(back.kappa_tilde - in.kappa_tilde) < 1e-14);
  CHECK(std::abs(back.energy - in.energy) < 1e-14 * std::abs(in.energy));

  CHECK_THROWS_AS(make_physical_scales(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_physical_scales(1.0, -2.0, 1.0), std::invalid_argument);
}
