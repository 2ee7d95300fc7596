#pragma once

#include <limits>

#include "curvosc/errors.hpp"

namespace curvosc {

enum class SignClass { Spherical, Flat, Hyperbolic };

// Dimensionless curvature of the configuration 3-space. Positive values give
// the sphere S^3, zero Euclidean E^3, negative the hyperbolic space H^3.
class Curvature {
 public:
  explicit Curvature(double kappa_tilde);

  double value() const { return kt_; }
  SignClass sign_class() const {
    return kt_ > 0.0 ? SignClass::Spherical
                     : (kt_ < 0.0 ? SignClass::Hyperbolic : SignClass::Flat);
  }
  bool spherical() const { return kt_ > 0.0; }
  bool flat() const { return kt_ == 0.0; }
  bool hyperbolic() const { return kt_ < 0.0; }

  // Radial domain boundary: 1/sqrt(kt) for the sphere, +inf otherwise.
  double domain_radius() const;

 private:
  double kt_;
};

// kappa-dependent trigonometric functions: circular for kappa>0, linear for
// kappa=0, hyperbolic for kappa<0. Continuous in kappa at fixed x.
double kappa_cos(double kappa, double x);
double kappa_sin(double kappa, double x);
double kappa_tan(double kappa, double x);  // throws PoleError at Cos_k zeros

// Oscillator potential U(r) = r^2 / (2 (1 - kt r^2)) in dimensionless units.
double potential(const Curvature& curv, double r);

// Radial factor of the invariant measure, r^2 / sqrt(1 - kt r^2).
double measure_weight(const Curvature& curv, double r);

// Physical unit system (mass, oscillator coupling, action quantum).
struct PhysicalScales {
  double mass;
  double alpha;
  double hbar;
};
PhysicalScales make_physical_scales(double mass, double alpha, double hbar);

struct DimensionlessPoint {
  double rho;
  double kappa_tilde;
  double energy;
};

struct PhysicalPoint {
  double r;
  double kappa;
  double energy;
};

// r = sqrt(hbar/(m alpha)) rho,  kappa = (m alpha/hbar) kt,  E = hbar alpha Eps.
DimensionlessPoint to_dimensionless(const PhysicalScales& s, const PhysicalPoint& p);
PhysicalPoint from_dimensionless(const PhysicalScales& s, const DimensionlessPoint& d);

}  // namespace curvosc
