#include "curvosc/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace curvosc {

namespace {

// log1p(-u)/u, stable for u -> 0 (limit -1).
double log1p_ratio(double u) {
  if (u == 0.0) return -1.0;
  return std::log1p(-u) / u;
}

}  // namespace

std::array<int, 2> indicial_exponents(int l) {
  if (l < 0) throw std::invalid_argument("indicial_exponents: l must be >= 0");
  return {l, -l - 1};
}

std::vector<double> radial_polynomial(const Curvature& curv, const QuantumNumbers& qn) {
  if (!is_admissible(curv, qn)) {
    throw NoBoundStateError("radial_polynomial: inadmissible quantum numbers");
  }
  const double c = qn.l + 1.5;
  if (curv.flat()) {
    return confluent_1f1_coefficients(qn.n_r, c);
  }
  const double b = qn.n_r + qn.l + 1.0 + 1.0 / curv.value();
  return gauss_2f1_coefficients(qn.n_r, b, c);
}

double normalization_integral(const Curvature& curv, const QuantumNumbers& qn) {
  const int n_r = qn.n_r;
  const int l = qn.l;
  const double kt = curv.value();
  if (curv.hyperbolic() && !is_admissible(curv, qn)) {
    throw DivergentNormError("normalization_integral: state at or beyond the bound cutoff");
  }
  if (n_r < 0 || l < 0) throw std::invalid_argument("normalization_integral: bad quantum numbers");

  const double log_poch = std::log(pochhammer(l + 1.5, n_r));
  const double log_fact = log_gamma(n_r + 1.0);
  if (kt == 0.0) {
    return std::exp(log_fact + log_gamma(l + 1.5) - std::log(2.0) - log_poch);
  }
  if (kt > 0.0) {
    const double log_kp = -(0.5 + l) * std::log(kt) + log_fact - std::log(2.0) -
                          std::log1p(kt * (1.0 + l + 2.0 * n_r)) - log_poch;
    return std::exp(log_kp + log_gamma(l + 1.5) + log_gamma(n_r + 0.5 + 1.0 / kt) -
                    log_gamma(n_r + l + 1.0 + 1.0 / kt));
  }
  const double ak = 1.0 / std::abs(kt);
  // admissible => ak - 2n_r - l = ak - n > 1 and ak - (2n_r + 1 + l) > 0
  const double log_km = -(1.5 + l) * std::log(std::abs(kt)) + log_fact +
                        std::log(pochhammer(ak - 2.0 * n_r - l, n_r)) - std::log(2.0) -
                        log_poch;
  return std::exp(log_km + log_gamma(l + 1.5) + log_gamma(ak - (2.0 * n_r + 1.0 + l)) -
                  log_gamma(ak + 0.5 - n_r));
}

double normalization_constant(const Curvature& curv, const QuantumNumbers& qn) {
  return 1.0 / std::sqrt(normalization_integral(curv, qn));
}

RadialEigenstate RadialEigenstate::make(const Curvature& curv, const QuantumNumbers& qn) {
  const double e = curvosc::energy(curv, qn);  // admissibility gate
  return RadialEigenstate(curv, qn, radial_polynomial(curv, qn),
                          normalization_constant(curv, qn), e);
}

double RadialEigenstate::poly_arg(double r) const {
  const double kt = curv_.value();
  return (kt == 0.0 ? 1.0 : kt) * r * r;
}

double RadialEigenstate::envelope(double r) const {
  const double kt = curv_.value();
  const double u = kt * r * r;
  if (u >= 1.0) return 0.0;  // at (and only at) the spherical wall
  if (std::abs(u) < 1e-8) {
    return std::exp(-0.5 * r * r * (1.0 + u * (0.5 + u / 3.0)));
  }
  return std::exp(std::log1p(-u) / (2.0 * kt));
}

double RadialEigenstate::polynomial(double r) const {
  return evaluate_polynomial(coeffs_, poly_arg(r));
}

double RadialEigenstate::radial_unnormalized(double r) const {
  if (r < 0.0 || !std::isfinite(r)) {
    throw RadialDomainError("radial: r must be finite and >= 0");
  }
  if (curv_.spherical()) {
    const double rk = curv_.domain_radius();
    if (r > rk) throw RadialDomainError("radial: r beyond the spherical wall");
    if (r == rk) return 0.0;
  }
  return std::pow(r, qn_.l) * envelope(r) * polynomial(r);
}

double RadialEigenstate::radial(double r) const { return norm_ * radial_unnormalized(r); }

RadialDerivatives RadialEigenstate::radial_derivatives(double r) const {
  if (!(r > 0.0)) {
    throw RadialDomainError("radial_derivatives: requires r > 0");
  }
  if (curv_.spherical() && r >= curv_.domain_radius()) {
    throw RadialDomainError("radial_derivatives: r beyond the spherical wall");
  }
  const double kt = curv_.value();
  const int l = qn_.l;
  const double u = kt * r * r;
  const double one = 1.0 - u;

  const double f = std::pow(r, l);
  const double fp = l > 0 ? l * std::pow(r, l - 1) : 0.0;
  const double fpp = l > 1 ? static_cast<double>(l) * (l - 1) * std::pow(r, l - 2) : 0.0;

  const double E = envelope(r);
  const double Ep = -r * E / one;
  const double Epp = E * (-1.0 / one + r * r * (1.0 - 2.0 * kt) / (one * one));

  // polynomial and its t-derivatives by Horner
  const double ct = (kt == 0.0 ? 1.0 : kt);
  const double t = ct * r * r;
  double P = 0.0, Pt = 0.0, Ptt = 0.0;
  for (size_t i = coeffs_.size(); i-- > 0;) {
    Ptt = Ptt * t + 2.0 * Pt;
    Pt = Pt * t + P;
    P = P * t + coeffs_[i];
  }
  const double Pr = 2.0 * ct * r * Pt;
  const double Prr = 2.0 * ct * Pt + 4.0 * ct * ct * r * r * Ptt;

  RadialDerivatives d;
  d.value = norm_ * f * E * P;
  d.first = norm_ * (fp * E * P + f * Ep * P + f * E * Pr);
  d.second = norm_ * (fpp * E * P + f * Epp * P + f * E * Prr + 2.0 * fp * Ep * P +
                      2.0 * fp * E * Pr + 2.0 * f * Ep * Pr);
  return d;
}

std::vector<double> RadialEigenstate::nodes() const {
  // Nodes of R in the open domain are the roots of P; bracket them on an
  // r-grid wide enough to contain every root (Cauchy bound in t).
  std::vector<double> out;
  if (coeffs_.size() < 2) return out;

  double cauchy = 0.0;
  const double lead = coeffs_.back();
  for (size_t i = 0; i + 1 < coeffs_.size(); ++i) {
    cauchy = std::max(cauchy, std::abs(coeffs_[i] / lead));
  }
  const double t_bound = 1.0 + cauchy;
  const double kt = curv_.value();
  double r_hi;
  if (curv_.spherical()) {
    r_hi = curv_.domain_radius();
  } else if (curv_.flat()) {
    r_hi = std::sqrt(t_bound);
  } else {
    r_hi = std::sqrt(t_bound / std::abs(kt));
  }

  const int grid = 8192;
  double prev_r = 0.0;
  double prev_v = polynomial(0.0);
  for (int i = 1; i <= grid; ++i) {
    const double r = r_hi * i / grid;
    const double v = polynomial(r);
    if (v == 0.0) {
      out.push_back(r);
    } else if (prev_v != 0.0 && std::signbit(v) != std::signbit(prev_v)) {
      double lo = prev_r, hi = r;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double vm = polynomial(mid);
        if (vm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (std::signbit(vm) == std::signbit(polynomial(lo))) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
    prev_r = r;
    prev_v = v;
  }
  return out;
}

std::complex<double> full_wavefunction(const RadialEigenstate& state, double r, double theta,
                                       double phi) {
  const QuantumNumbers& qn = state.quantum_numbers();
  return state.radial(r) * spherical_harmonic(qn.l, qn.m, theta, phi);
}

double orthogonality_weight(const Curvature& curv, int l, double rho) {
  if (l < 0) throw std::invalid_argument("orthogonality_weight: l must be >= 0");
  if (rho < 0.0) throw RadialDomainError("orthogonality_weight: rho must be >= 0");
  if (rho == 0.0) return 0.0;
  const double kt = curv.value();
  const double power = (2.0 * l + 2.0) * std::log(rho);
  if (kt == 0.0) {
    return std::exp(power - rho * rho);
  }
  const double u = kt * rho * rho;
  if (u >= 1.0) return 0.0;  // spherical wall
  // (1/kt - 1/2) log1p(-u), the 1/kt part rewritten as rho^2 log1p(-u)/u
  const double log_env = rho * rho * log1p_ratio(u) - 0.5 * std::log1p(-u);
  return std::exp(power + log_env);
}

}  // namespace curvosc
