#include "curvosc/spectrum.hpp"

#include <cmath>
#include <string>

namespace curvosc {

QuantumNumbers make_quantum_numbers(int n_r, int l, int m) {
  if (n_r < 0 || l < 0 || std::abs(m) > l) {
    throw std::invalid_argument("QuantumNumbers: need n_r >= 0, l >= 0, |m| <= l");
  }
  return QuantumNumbers{n_r, l, m};
}

double bound_state_cutoff(const Curvature& curv) {
  if (!curv.hyperbolic()) return std::numeric_limits<double>::infinity();
  return 1.0 / std::abs(curv.value()) - 1.0;
}

bool is_admissible(const Curvature& curv, int n) {
  if (n < 0) return false;
  return static_cast<double>(n) < bound_state_cutoff(curv);
}

bool is_admissible(const Curvature& curv, const QuantumNumbers& qn) {
  return is_admissible(curv, qn.principal());
}

int admissible_radial_count(const Curvature& curv, int l, int cap) {
  int count = 0;
  for (int n_r = 0; n_r < cap; ++n_r) {
    if (!is_admissible(curv, 2 * n_r + l)) break;
    ++count;
  }
  return count;
}

double energy_level_value(const Curvature& curv, int n) {
  const double nn = static_cast<double>(n);
  return (nn + 1.5) + 0.5 * curv.value() * nn * (nn + 2.0);
}

double energy(const Curvature& curv, const QuantumNumbers& qn) {
  const int n = qn.principal();
  if (!is_admissible(curv, n)) {
    throw NoBoundStateError("energy: n=" + std::to_string(n) +
                            " is not a bound state at kappa_tilde=" +
                            std::to_string(curv.value()));
  }
  return energy_level_value(curv, n);
}

double energy_gap(const Curvature& curv, int n) {
  if (!is_admissible(curv, n) || !is_admissible(curv, n + 1)) {
    throw NoBoundStateError("energy_gap: levels n=" + std::to_string(n) + ", n+1 must both be bound");
  }
  return 1.0 + curv.value() * (static_cast<double>(n) + 1.5);
}

std::int64_t degeneracy(int n) {
  if (n < 0) throw std::invalid_argument("degeneracy: n must be >= 0");
  const std::int64_t nn = n;
  return (nn + 1) * (nn + 2) / 2;
}

EnergyLevel energy_level(const Curvature& curv, int n) {
  return EnergyLevel{n, energy_level_value(curv, n), degeneracy(n)};
}

BoundStateCensus bound_state_census(const Curvature& curv) {
  BoundStateCensus census;
  census.finite = curv.hyperbolic();
  census.has_continuum = curv.hyperbolic();
  census.n_max = -1;
  census.total_states = 0;
  if (!curv.hyperbolic()) {
    return census;
  }

  const double cutoff = bound_state_cutoff(curv);
  const double rounded = std::round(cutoff);
  const bool integer_boundary = std::abs(cutoff - rounded) < 1e-9 && rounded >= 0.0;
  if (integer_boundary) {
    census.marginal_n = static_cast<int>(rounded);
  }
  // Spectral curve evaluated at the real cutoff: the scattering threshold.
  census.continuum_edge = (cutoff + 1.5) + 0.5 * curv.value() * cutoff * (cutoff + 2.0);
  // n_max: greatest integer strictly below the cutoff.
  int n_max;
  if (integer_boundary) {
    n_max = static_cast<int>(rounded) - 1;
  } else {
    n_max = static_cast<int>(std::floor(cutoff));
    if (static_cast<double>(n_max) >= cutoff) --n_max;
  }
  if (cutoff <= 0.0 || n_max < 0) {
    return census;  // empty census, not an error
  }
  census.n_max = n_max;
  census.levels.reserve(static_cast<size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    census.levels.push_back(energy_level(curv, n));
    census.total_states += census.levels.back().degeneracy;
  }
  return census;
}

HypergeometricParams hypergeometric_parameters(const Curvature& curv, int l, double energy) {
  const double kt = curv.value();
  if (kt == 0.0) {
    throw std::invalid_argument("hypergeometric_parameters: requires kappa_tilde != 0");
  }
  if (l < 0) throw std::invalid_argument("hypergeometric_parameters: l must be >= 0");
  const double A = 1.0 + kt * (l + 1.0);
  const double B = 1.0 + (2.0 * energy - 1.0) * kt + kt * kt;
  if (B < 0.0) {
    throw ComplexParameterError("hypergeometric_parameters: B_k < 0 (unphysical energy)");
  }
  const double sqB = std::sqrt(B);
  const double a = (A - sqB) / (2.0 * kt);
  const double b = (A + sqB) / (2.0 * kt);
  const double c = l + 1.5;

  // Consistency of the root pair against the sum/product identities.
  const double sum_expected = 1.0 / kt + l + 1.0;
  const double prod_expected = -((2.0 * energy - 3.0 - 2.0 * l) - kt * l * (l + 2.0)) / (4.0 * kt);
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs(a + b - sum_expected) > 1e-10 * scale ||
      std::abs(a * b - prod_expected) > 1e-10 * scale * scale) {
    throw std::logic_error("hypergeometric_parameters: root identities violated");
  }
  return make_hypergeometric_params(a, b, c);
}

}  // namespace curvosc
