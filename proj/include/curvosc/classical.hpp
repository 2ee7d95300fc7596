#pragma once

#include <array>
#include <vector>

#include "curvosc/curvature.hpp"

namespace curvosc {

// Phase-space point in spherical coordinates with conjugate momenta
// (dimensionless units, unit mass and coupling).
struct ClassicalState {
  double r;
  double theta;
  double phi;
  double p_r;
  double p_theta;
  double p_phi;
};

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

// H, the angular momenta J_i, the Noether momenta P_i of the underlying
// geodesic flow, and the deformed Fradkin tensor F_ij = P_i P_j + X_i X_j.
// J, F and H are constants of the oscillator motion; the P_i alone are not
// (they are geodesic constants) and are carried for the decompositions below.
struct ConservedSet {
  double hamiltonian;
  Vec3 angular_momentum;
  Vec3 noether_momentum;
  Mat3 fradkin;
};

ConservedSet evaluate_conserved(const Curvature& curv, const ClassicalState& state);

// 2H - sum P_i^2 - kt sum J_i^2 - 2U, zero pointwise.
double casimir_residual(const Curvature& curv, const ClassicalState& state);

// 2H - trace F - kt sum J_i^2, zero pointwise.
double trace_identity_residual(const Curvature& curv, const ClassicalState& state);

// Max relative deviation of each conserved group over a trajectory.
struct DriftReport {
  double hamiltonian = 0.0;
  double angular_momentum = 0.0;
  double noether_momentum = 0.0;  // O(1) under the oscillator; reported, not asserted
  double fradkin = 0.0;
  double max_conserved() const;  // over H, J, F
};

struct TrajectorySample {
  double t;
  ClassicalState state;    // in the original frame's chart when possible
  ConservedSet conserved;  // always rotated back to the original frame
};

struct TrajectoryResult {
  std::vector<TrajectorySample> samples;
  DriftReport drift;
  bool wall_abort = false;            // spherical wall approached within 1e-6
  bool energetically_unbound = false;  // hyperbolic H above the potential ceiling
  double t_reached = 0.0;
};

// Fixed-step 4th-order Runge-Kutta integration of Hamilton's equations.
// Near the coordinate poles (sin theta < 1e-6) the chart is rotated; the
// reported conserved quantities are rotation-covariant and given in the
// original frame. sample_stride = 0 picks roughly 1000 output samples.
TrajectoryResult integrate_trajectory(const Curvature& curv, const ClassicalState& initial,
                                      double t_end, double dt, int sample_stride = 0);

}  // namespace curvosc
