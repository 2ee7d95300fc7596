#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "curvosc/curvature.hpp"
#include "curvosc/special.hpp"

namespace curvosc {

// Bound-state labels (n_r, l, m); the principal number is n = 2 n_r + l.
struct QuantumNumbers {
  int n_r;
  int l;
  int m;
  int principal() const { return 2 * n_r + l; }
};

QuantumNumbers make_quantum_numbers(int n_r, int l, int m = 0);

// Hyperbolic bound-state cutoff 1/|kt| - 1 (+inf for kt >= 0).
double bound_state_cutoff(const Curvature& curv);

// A principal number n hosts bound states iff n < 1/|kt| - 1 for kt < 0.
bool is_admissible(const Curvature& curv, int n);
bool is_admissible(const Curvature& curv, const QuantumNumbers& qn);

// Number of admissible radial levels n_r for fixed l (capped at cap).
int admissible_radial_count(const Curvature& curv, int l, int cap);

// Quantized dimensionless energy E_{n_r,l} = (2n_r+l+3/2) + kt/2 (2n_r+l)(2n_r+l+2).
// Throws NoBoundStateError for inadmissible hyperbolic quantum numbers.
double energy(const Curvature& curv, const QuantumNumbers& qn);

// Same formula as a function of the principal number alone, with no
// admissibility gate (the spectral curve through all integer n).
double energy_level_value(const Curvature& curv, int n);

// E_{n+1} - E_n = 1 + kt (n + 3/2); requires n and n+1 admissible.
double energy_gap(const Curvature& curv, int n);

// (n+1)(n+2)/2 states share the level n.
std::int64_t degeneracy(int n);

struct EnergyLevel {
  int n;
  double energy;
  std::int64_t degeneracy;
};

EnergyLevel energy_level(const Curvature& curv, int n);

struct BoundStateCensus {
  bool finite;                    // false for spherical/flat (countably infinite)
  bool has_continuum;             // hyperbolic scattering spectrum above the edge
  int n_max;                      // greatest admissible n; -1 when empty
  std::optional<int> marginal_n;  // integer boundary n = 1/|kt|-1, when present
  std::optional<double> continuum_edge;  // energy of the spectral-curve point at the cutoff
  std::vector<EnergyLevel> levels;       // all levels (finite case only)
  std::int64_t total_states;             // sum of degeneracies (finite case only)
};

// Enumerates the discrete spectrum. For kt >= 0 returns the infinite marker;
// levels are then generated on demand through energy_level().
BoundStateCensus bound_state_census(const Curvature& curv);

// Gauss parameters (a_k, b_k, c) of the radial equation at curvature kt != 0
// and the given angular momentum / energy (upper-sign convention).
HypergeometricParams hypergeometric_parameters(const Curvature& curv, int l, double energy);

}  // namespace curvosc
