#pragma once

#include <complex>
#include <vector>

#include "curvosc/errors.hpp"

namespace curvosc {

// log Gamma(x) for x > 0 (Lanczos).
double log_gamma(double x);

// Gamma(x) for real x away from the poles at 0, -1, -2, ...
double gamma_fn(double x);

// Pochhammer symbol (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.
double pochhammer(double a, int n);

struct HypergeometricParams {
  double a;
  double b;
  double c;
};

// Validates that c is not zero or a negative integer.
HypergeometricParams make_hypergeometric_params(double a, double b, double c);

// Coefficients of the truncating Gauss series 2F1(-nr, b; c; t) in powers of t.
// coeffs[0] = 1, length nr+1.
std::vector<double> gauss_2f1_coefficients(int nr, double b, double c);

// Degree-nr polynomial value; requires params.a to be a non-positive integer.
double gauss_2f1_polynomial(const HypergeometricParams& params, double t);
double gauss_2f1_polynomial(int nr, double b, double c, double t);

// Truncated Kummer series 1F1(-nr; c; x) and its coefficients in powers of x.
std::vector<double> confluent_1f1_coefficients(int nr, double c);
double confluent_1f1_polynomial(int nr, double c, double x);

// Horner evaluation of a coefficient list (ascending powers).
double evaluate_polynomial(const std::vector<double>& coeffs, double x);

// Orthonormal spherical harmonic Y_lm(theta, phi), Condon-Shortley phase.
std::complex<double> spherical_harmonic(int l, int m, double theta, double phi);

// theta-part of Y_lm for m >= 0 (real), used by the full harmonic.
double spherical_harmonic_theta(int l, int m, double theta);

}  // namespace curvosc
