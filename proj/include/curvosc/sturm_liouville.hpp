#pragma once

#include <functional>
#include <vector>

#include "curvosc/curvature.hpp"

namespace curvosc {

// Self-adjoint radial problem (p g')' + lambda q g = 0 on [0, rho_end] with
//   p(rho) = rho^{2l+2} (1 - kt rho^2)^{1/kt + 1/2}
//   q(rho) = rho^{2l+2} (1 - kt rho^2)^{1/kt - 1/2}
// (flat limit: p = q = rho^{2l+2} e^{-rho^2}). Energies relate to the
// eigenvalue by lambda = (2E - 3) - (2 + 2kt + kt l) l.
//
// The solver discretizes in the arc-length variable w with rho = Sin_kt(w),
// where both coefficient functions collapse to
//   phat(w) = qhat(w) = rho(w)^{2l+2} (1 - kt rho^2)^{1/kt},
// the spherical wall becomes a polynomial-type zero and hyperbolic tails
// decay exponentially. rho_end / w_end record the actual domain.
struct SLProblem {
  Curvature curv;
  int l;
  double rho_end;
  double w_end;
  bool truncated_domain;      // true when the domain is a numerical cutoff
  double truncation_change;   // |d lambda| of the final domain-extension check
  int levels_hint;            // eigenvalue count the domain was sized for
  std::function<double(double)> p;  // of rho
  std::function<double(double)> q;  // of rho
};

// Sizes the domain for the first `levels` eigenvalues. The hyperbolic cutoff
// is chosen by a cheap fixed-step scan that keeps the truncation change well
// below the projected discretization error at `reference_grid`.
SLProblem build_sl_problem(const Curvature& curv, int l, int levels = 5,
                           int reference_grid = 4000);

// Flux-form finite differences on the uniform w-grid: N interior nodes at
// (i+1/2)h, fluxes at the edges, trapezoid-averaged diagonal mass. Zero flux
// where phat vanishes (origin; spherical wall), Dirichlet ghost at a
// truncated right end.
struct SLDiscretization {
  int n;
  double h;
  std::vector<double> stiff_diag, stiff_off;  // symmetric tridiagonal A
  std::vector<double> mass;                   // diagonal M > 0
  std::vector<double> sym_diag, sym_off;      // M^{-1/2} A M^{-1/2}
};
SLDiscretization discretize(const SLProblem& prob, int grid_size);

// Lowest `count` eigenvalues of a symmetric tridiagonal matrix by
// Sturm-sequence bisection (ascending).
std::vector<double> lowest_eigenvalues(const std::vector<double>& diag,
                                       const std::vector<double>& off, int count);

// Inverse-iteration eigenvector for an isolated eigenvalue (2-norm one).
std::vector<double> tridiagonal_eigenvector(const std::vector<double>& diag,
                                            const std::vector<double>& off, double lambda);

double energy_from_lambda(const Curvature& curv, int l, double lambda);
double lambda_from_energy(const Curvature& curv, int l, double energy);

struct SLSolveResult {
  std::vector<double> lambdas;               // at grid_size
  std::vector<double> lambdas_coarse;        // at grid_size/2
  std::vector<double> lambdas_extrapolated;  // Richardson over the two grids
  std::vector<double> energies;
  std::vector<double> energies_coarse;
  std::vector<double> energies_extrapolated;
  int grid_size;
  double rho_end;
  double w_end;
  bool truncated_domain;
  double truncation_change;
};

// Solves at grid_size/2 and grid_size and reports Richardson extrapolation.
// grid_size >= 100, 1 <= count <= 10; for hyperbolic curvature count must not
// exceed the discrete spectrum of the (curv, l) channel.
SLSolveResult solve_eigenvalues(const SLProblem& prob, int grid_size, int count);

}  // namespace curvosc
