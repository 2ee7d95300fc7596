#include "curvosc/curvature.hpp"

#include <cmath>
#include <string>

namespace curvosc {

namespace {
// Below this size of kappa*x^2 the closed forms hit 0/0 noise in the
// 1/sqrt(kappa) prefactors; a two-term series keeps relative error < 1e-12.
constexpr double kSeriesCut = 1e-8;
}  // namespace

Curvature::Curvature(double kappa_tilde) : kt_(kappa_tilde) {
  if (!std::isfinite(kappa_tilde)) {
    throw std::invalid_argument("Curvature: kappa_tilde must be finite");
  }
}

double Curvature::domain_radius() const {
  if (kt_ > 0.0) return 1.0 / std::sqrt(kt_);
  return std::numeric_limits<double>::infinity();
}

double kappa_cos(double kappa, double x) {
  const double u = kappa * x * x;
  if (std::abs(u) < kSeriesCut) {
    return 1.0 - 0.5 * u * (1.0 - u / 12.0);
  }
  if (kappa > 0.0) {
    return std::cos(std::sqrt(kappa) * x);
  }
  return std::cosh(std::sqrt(-kappa) * x);
}

double kappa_sin(double kappa, double x) {
  const double u = kappa * x * x;
  if (std::abs(u) < kSeriesCut) {
    return x * (1.0 - u / 6.0 * (1.0 - u / 20.0));
  }
  if (kappa > 0.0) {
    const double s = std::sqrt(kappa);
    return std::sin(s * x) / s;
  }
  const double s = std::sqrt(-kappa);
  return std::sinh(s * x) / s;
}

double kappa_tan(double kappa, double x) {
  const double c = kappa_cos(kappa, x);
  const double s = kappa_sin(kappa, x);
  if (std::abs(c) <= 1e-12 * std::max(1.0, std::abs(s))) {
    throw PoleError("kappa_tan: Cos_k vanishes at x=" + std::to_string(x));
  }
  return s / c;
}

namespace {
void check_radial_domain(const Curvature& curv, double r, const char* who) {
  if (r < 0.0 || !std::isfinite(r)) {
    throw RadialDomainError(std::string(who) + ": r must be finite and >= 0");
  }
  if (curv.spherical() && r >= curv.domain_radius()) {
    throw RadialDomainError(std::string(who) + ": r beyond the spherical wall r_k");
  }
}
}  // namespace

double potential(const Curvature& curv, double r) {
  check_radial_domain(curv, r, "potential");
  const double r2 = r * r;
  return 0.5 * r2 / (1.0 - curv.value() * r2);
}

double measure_weight(const Curvature& curv, double r) {
  check_radial_domain(curv, r, "measure_weight");
  const double r2 = r * r;
  return r2 / std::sqrt(1.0 - curv.value() * r2);
}

PhysicalScales make_physical_scales(double mass, double alpha, double hbar) {
  if (!(mass > 0.0) || !(alpha > 0.0) || !(hbar > 0.0)) {
    throw std::invalid_argument("PhysicalScales: mass, alpha, hbar must be > 0");
  }
  return PhysicalScales{mass, alpha, hbar};
}

DimensionlessPoint to_dimensionless(const PhysicalScales& s, const PhysicalPoint& p) {
  const double len = std::sqrt(s.hbar / (s.mass * s.alpha));
  return DimensionlessPoint{p.r / len, p.kappa * s.hbar / (s.mass * s.alpha),
                            p.energy / (s.hbar * s.alpha)};
}

PhysicalPoint from_dimensionless(const PhysicalScales& s, const DimensionlessPoint& d) {
  const double len = std::sqrt(s.hbar / (s.mass * s.alpha));
  return PhysicalPoint{d.rho * len, d.kappa_tilde * s.mass * s.alpha / s.hbar,
                       d.energy * s.hbar * s.alpha};
}

}  // namespace curvosc
