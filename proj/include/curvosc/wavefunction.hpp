#pragma once

#include <array>
#include <complex>
#include <vector>

#include "curvosc/curvature.hpp"
#include "curvosc/spectrum.hpp"

namespace curvosc {

// Frobenius exponents at the regular singular origin: {l, -l-1}. Only the
// first is regular and enters the constructed states.
std::array<int, 2> indicial_exponents(int l);

// Coefficients of the radial polynomial P_{n_r,l}. Variable: t = kt r^2 for
// kt != 0 (Gauss branch), s = r^2 for kt = 0 (Kummer branch). coeffs[0] = 1.
std::vector<double> radial_polynomial(const Curvature& curv, const QuantumNumbers& qn);

// Closed-form radial normalization integral
//   int r^{2l} (1 - kt r^2)^{1/kt} P^2 r^2/sqrt(1 - kt r^2) dr
// over the radial domain. Throws DivergentNormError when the state is
// marginal or beyond the hyperbolic cutoff.
double normalization_integral(const Curvature& curv, const QuantumNumbers& qn);

// K = 1/sqrt(normalization_integral): radial norm constant under orthonormal
// spherical harmonics.
double normalization_constant(const Curvature& curv, const QuantumNumbers& qn);

struct RadialDerivatives {
  double value;
  double first;
  double second;
};

// A fully assembled bound state: R(r) = K r^l (1 - kt r^2)^{1/(2kt)} P(t).
class RadialEigenstate {
 public:
  static RadialEigenstate make(const Curvature& curv, const QuantumNumbers& qn);

  const Curvature& curvature() const { return curv_; }
  const QuantumNumbers& quantum_numbers() const { return qn_; }
  const std::vector<double>& poly_coeffs() const { return coeffs_; }
  double norm_constant() const { return norm_; }
  double energy() const { return energy_; }

  // Envelope (1 - kt r^2)^{1/(2kt)}; exp(-r^2/2) in the flat limit.
  double envelope(double r) const;
  // Polynomial factor P at radius r.
  double polynomial(double r) const;
  // Normalized radial function K r^l envelope P. Returns 0 at the spherical wall.
  double radial(double r) const;
  // Radial function without the norm constant.
  double radial_unnormalized(double r) const;
  // R, R', R'' at r > 0, from analytic factor derivatives.
  RadialDerivatives radial_derivatives(double r) const;

  // Roots of R in the open radial domain, by scan + bisection on P.
  std::vector<double> nodes() const;

 private:
  RadialEigenstate(const Curvature& curv, const QuantumNumbers& qn,
                   std::vector<double> coeffs, double norm, double energy)
      : curv_(curv), qn_(qn), coeffs_(std::move(coeffs)), norm_(norm), energy_(energy) {}

  double poly_arg(double r) const;  // t or s depending on branch

  Curvature curv_;
  QuantumNumbers qn_;
  std::vector<double> coeffs_;
  double norm_;
  double energy_;
};

// Psi(r, theta, phi) = R(r) Y_{lm}(theta, phi).
std::complex<double> full_wavefunction(const RadialEigenstate& state, double r,
                                       double theta, double phi);

// Weight of the radial Sturm-Liouville orthogonality,
// q(rho) = rho^{2(l+1)} (1 - kt rho^2)^{1/kt - 1/2}.
double orthogonality_weight(const Curvature& curv, int l, double rho);

}  // namespace curvosc
