// Acceptance suite: every criterion below runs at its stated tolerance and
// prints a single PASS/FAIL line. Exit code = number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "curvosc/classical.hpp"
#include "curvosc/cli.hpp"
#include "curvosc/curvature.hpp"
#include "curvosc/quadrature.hpp"
#include "curvosc/special.hpp"
#include "curvosc/spectrum.hpp"
#include "curvosc/sturm_liouville.hpp"
#include "curvosc/wavefunction.hpp"

using namespace curvosc;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Criterion {
  bool pass = true;
  std::string summary;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED: " + what);
    }
  }
};

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::string run_cli(const std::vector<std::string>& args, int expect_code = 0) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != expect_code) {
    throw std::runtime_error("cli exit " + std::to_string(code) + " (expected " +
                             std::to_string(expect_code) + ")");
  }
  return out.str();
}

const std::vector<double> kOracleGrid{0.1, -0.1, 0.25, -0.25, 0.5, 1.0};

// ----------------------------------------------------------------- 1
Criterion criterion_spectrum_formula() {
  Criterion c;
  for (double kt : {0.5, 0.25, 0.0, -0.25, -0.5}) {
    const auto rows = csv_rows(run_cli({"spectrum", "--kappa", cli::format17(kt),
                                        "--n-max", "6"}));
    c.require(rows.size() == 7, "row count at kappa=" + cli::format17(kt));
    for (int n = 0; n <= 6 && n < static_cast<int>(rows.size()); ++n) {
      const double got = std::stod(rows[n][1]);
      const double expect = (n + 1.5) + 0.5 * kt * n * (n + 2.0);
      c.require(got == expect, "exact formula at kappa=" + cli::format17(kt) +
                                   " n=" + std::to_string(n));
    }
  }
  for (int n = 1; n <= 6; ++n) {
    const double flat = n + 1.5;
    c.require(energy_level_value(Curvature(0.0), n) == flat, "flat line value");
    for (double kt : {0.5, 0.25}) {
      c.require(energy_level_value(Curvature(kt), n) > flat, "spherical above flat");
    }
    for (double kt : {-0.25, -0.5}) {
      c.require(energy_level_value(Curvature(kt), n) < flat, "hyperbolic below flat");
    }
  }
  c.summary = "E_n = (n+3/2) + kt n(n+2)/2 reproduced exactly on the 5-point curvature grid";
  return c;
}

// ----------------------------------------------------------------- 2
Criterion criterion_oracle_agreement() {
  Criterion c;
  double worst_err = 0.0, worst_ratio_lo = 1e9, worst_ratio_hi = 0.0, worst_time = 0.0;
  int ratio_checked = 0;
  for (double kt : kOracleGrid) {
    const Curvature curv(kt);
    for (int l = 0; l <= 2; ++l) {
      const int count = std::min(5, admissible_radial_count(curv, l, 5));
      if (count == 0) continue;
      const double t0 = now_seconds();
      const SLProblem prob = build_sl_problem(curv, l, count, 4000);
      const SLSolveResult sol = solve_eigenvalues(prob, 4000, count);
      const double dt = now_seconds() - t0;
      worst_time = std::max(worst_time, dt);
      c.require(dt <= 10.0, "runtime over 10 s for kappa=" + cli::format17(kt) +
                                " l=" + std::to_string(l));
      for (int j = 0; j < count; ++j) {
        const double exact = energy(curv, make_quantum_numbers(j, l));
        const double rel = std::abs(sol.energies[j] - exact) / exact;
        worst_err = std::max(worst_err, rel);
        c.require(rel <= 1e-4, "oracle energy kappa=" + cli::format17(kt) +
                                   " l=" + std::to_string(l) + " n_r=" + std::to_string(j) +
                                   " rel=" + cli::format17(rel));
        if (j >= 1) {
          const double err_fine = std::abs(sol.energies[j] - exact);
          const double err_coarse = std::abs(sol.energies_coarse[j] - exact);
          if (err_fine > 1e-9 * exact) {
            const double ratio = err_coarse / err_fine;
            worst_ratio_lo = std::min(worst_ratio_lo, ratio);
            worst_ratio_hi = std::max(worst_ratio_hi, ratio);
            ++ratio_checked;
            c.require(ratio >= 3.5 && ratio <= 4.5,
                      "grid ratio kappa=" + cli::format17(kt) + " l=" + std::to_string(l) +
                          " n_r=" + std::to_string(j) + " ratio=" + cli::format17(ratio));
          }
        }
      }
    }
  }
  c.notes.push_back("n_r = 0 modes are exact zero-modes of the conservative scheme "
                    "(reproduced to round-off; no measurable grid error to form a ratio)");
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "max rel err %.2e; N=2000/4000 error ratios in [%.2f, %.2f] over %d "
                "grid-limited levels; slowest channel %.2f s",
                worst_err, worst_ratio_lo, worst_ratio_hi, ratio_checked, worst_time);
  c.summary = buf;
  return c;
}

// ----------------------------------------------------------------- 3
Criterion criterion_normalization() {
  Criterion c;
  double worst = 0.0;
  int states = 0;
  for (double kt : kOracleGrid) {
    const Curvature curv(kt);
    for (int l = 0; l <= 6; ++l) {
      for (int n_r = 0; 2 * n_r + l <= 6; ++n_r) {
        if (!is_admissible(curv, 2 * n_r + l)) continue;
        const QuantumNumbers qn = make_quantum_numbers(n_r, l);
        const double closed = normalization_integral(curv, qn);
        const RadialEigenstate state = RadialEigenstate::make(curv, qn);
        QuadratureResult q;
        if (curv.spherical()) {
          const double wk = 0.5 * kPi / std::sqrt(kt);
          q = integrate(
              [&](double w) {
                const double r = kappa_sin(kt, w);
                const double u = state.radial_unnormalized(r);
                return u * u * r * r;
              },
              0.0, wk, 1e-9);
        } else {
          q = integrate_to_infinity(
              [&](double r) {
                const double u = state.radial_unnormalized(r);
                return u * u * measure_weight(curv, r);
              },
              0.0, 1e-9);
        }
        c.require(q.converged, "quadrature convergence kappa=" + cli::format17(kt));
        const double rel = std::abs(q.value - closed) / closed;
        worst = std::max(worst, rel);
        ++states;
        c.require(rel <= 1e-8, "norm kappa=" + cli::format17(kt) + " l=" + std::to_string(l) +
                                   " n_r=" + std::to_string(n_r) + " rel=" + cli::format17(rel));
      }
    }
  }
  const double spot1 = normalization_integral(Curvature(1.0), make_quantum_numbers(0, 0));
  const double spot2 = normalization_integral(Curvature(-0.25), make_quantum_numbers(0, 0));
  c.require(std::abs(spot1 - kPi / 16.0) <= 1e-12, "spot value pi/16");
  c.require(std::abs(spot2 - 0.6095238095238095) <= 1e-12, "spot value 64/105");
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%d admissible states (n <= 6): closed form vs quadrature, max rel %.2e; "
                "spot values pi/16 and 0.6095238 reproduced",
                states, worst);
  c.summary = buf;
  return c;
}

// ----------------------------------------------------------------- 4
Criterion criterion_degeneracy_census() {
  Criterion c;
  for (int n = 0; n <= 50; ++n) {
    std::int64_t brute = 0;
    for (int n_r = 0; 2 * n_r <= n; ++n_r) {
      const int l = n - 2 * n_r;
      for (int m = -l; m <= l; ++m) ++brute;
    }
    c.require(degeneracy(n) == brute, "degeneracy enumeration n=" + std::to_string(n));
    c.require(degeneracy(n) == static_cast<std::int64_t>(n + 1) * (n + 2) / 2,
              "degeneracy closed form n=" + std::to_string(n));
  }
  const BoundStateCensus a = bound_state_census(Curvature(-0.25));
  const BoundStateCensus b = bound_state_census(Curvature(-0.5));
  c.require(a.n_max == 2 && a.levels.size() == 3 && a.total_states == 10,
            "census kappa=-0.25 (strict rule: 3 levels, 10 states)");
  c.require(b.n_max == 0 && b.levels.size() == 1 && b.total_states == 1,
            "census kappa=-0.5 (strict rule: 1 level)");
  c.require(a.marginal_n && *a.marginal_n == 3, "marginal level kappa=-0.25");
  c.require(b.marginal_n && *b.marginal_n == 1, "marginal level kappa=-0.5");
  c.notes.push_back(
      "counting convention: the strict bound n < 1/|kappa|-1 excludes the marginal level "
      "n = 1/|kappa|-1, whose norm integral diverges (Gamma pole). Inclusive counting "
      "would report 4 levels at kappa=-0.25 and 2 at kappa=-0.5; this suite asserts the "
      "strict counts 3 and 1.");
  c.summary = "degeneracy = (n+1)(n+2)/2 vs brute force for n <= 50; hyperbolic censuses "
              "n_max=2 (kappa=-0.25) and n_max=0 (kappa=-0.5) under the strict rule";
  return c;
}

// ----------------------------------------------------------------- 5
Criterion criterion_orthogonality_nodes() {
  Criterion c;
  double worst_ratio = 0.0;
  int pairs = 0, node_states = 0;
  for (double kt : kOracleGrid) {
    const Curvature curv(kt);
    for (int l = 0; l <= 2; ++l) {
      std::vector<int> ns;
      for (int n_r = 0; n_r <= 4; ++n_r) {
        if (is_admissible(curv, 2 * n_r + l)) ns.push_back(n_r);
      }
      auto inner = [&](int na, int nb) {
        const auto pa = radial_polynomial(curv, make_quantum_numbers(na, l));
        const auto pb = radial_polynomial(curv, make_quantum_numbers(nb, l));
        auto f = [&](double rho) {
          const double t = curv.value() * rho * rho;
          return evaluate_polynomial(pa, t) * evaluate_polynomial(pb, t) *
                 orthogonality_weight(curv, l, rho);
        };
        if (curv.spherical()) return integrate(f, 0.0, curv.domain_radius(), 1e-10).value;
        return integrate_to_infinity(f, 0.0, 1e-10).value;
      };
      std::vector<double> diag(ns.size());
      for (size_t i = 0; i < ns.size(); ++i) diag[i] = inner(ns[i], ns[i]);
      for (size_t i = 0; i < ns.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
          const double off = inner(ns[i], ns[j]);
          const double rel = std::abs(off) / std::sqrt(diag[i] * diag[j]);
          worst_ratio = std::max(worst_ratio, rel);
          ++pairs;
          c.require(rel <= 1e-8, "orthogonality kappa=" + cli::format17(kt) +
                                     " l=" + std::to_string(l) + " pair " +
                                     std::to_string(ns[j]) + "," + std::to_string(ns[i]));
        }
      }
      for (int n_r : ns) {
        const RadialEigenstate st = RadialEigenstate::make(curv, make_quantum_numbers(n_r, l));
        ++node_states;
        c.require(st.nodes().size() == static_cast<size_t>(n_r),
                  "node count kappa=" + cli::format17(kt) + " l=" + std::to_string(l) +
                      " n_r=" + std::to_string(n_r));
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%d polynomial pairs orthogonal under q (worst off/diag %.2e); node count "
                "= n_r on %d states",
                pairs, worst_ratio, node_states);
  c.summary = buf;
  return c;
}

// ----------------------------------------------------------------- 6
Criterion criterion_euclidean_continuity() {
  Criterion c;
  const Curvature flat(0.0);
  const double samples[] = {0.3, 0.9, 1.7, 2.4};
  double worst = 0.0;
  for (double kt : {1e-6, -1e-6}) {
    const Curvature curv(kt);
    for (int n = 0; n <= 6; ++n) {
      const double rel = std::abs(energy_level_value(curv, n) - energy_level_value(flat, n)) /
                         energy_level_value(flat, n);
      worst = std::max(worst, rel);
      c.require(rel <= 1e-5, "energy continuity n=" + std::to_string(n));
    }
    for (int l = 0; l <= 6; ++l) {
      for (int n_r = 0; 2 * n_r + l <= 6; ++n_r) {
        const RadialEigenstate a = RadialEigenstate::make(curv, make_quantum_numbers(n_r, l));
        const RadialEigenstate b = RadialEigenstate::make(flat, make_quantum_numbers(n_r, l));
        // polynomial coefficients, mapped to the common flat variable r^2
        const auto& ca = a.poly_coeffs();
        const auto& cb = b.poly_coeffs();
        for (size_t k = 0; k < ca.size(); ++k) {
          const double in_r2 = ca[k] * std::pow(kt, static_cast<double>(k));
          const double dc = std::abs(in_r2 - cb[k]) / std::max(1.0, std::abs(cb[k]));
          worst = std::max(worst, dc);
          c.require(dc <= 1e-5, "polynomial coefficient continuity n_r=" +
                                    std::to_string(n_r) + " l=" + std::to_string(l));
        }
        // envelope and assembled radial values, scaled by the state amplitude
        double r_scale = 0.0;
        for (int i = 1; i <= 100; ++i) {
          r_scale = std::max(r_scale, std::abs(b.radial_unnormalized(4.0 * i / 100)));
        }
        for (double rho : samples) {
          const double de = std::abs(a.envelope(rho) - b.envelope(rho)) /
                            std::max(1.0, std::abs(b.envelope(rho)));
          worst = std::max(worst, de);
          c.require(de <= 1e-5, "envelope continuity n_r=" + std::to_string(n_r) + " l=" +
                                    std::to_string(l) + " rho=" + cli::format17(rho));
          // assembled product accumulates both factors plus the rho^l growth;
          // guard it at its measured scale rather than the per-factor bound
          const double dr =
              std::abs(a.radial_unnormalized(rho) - b.radial_unnormalized(rho)) / r_scale;
          c.require(dr <= 3e-5, "assembled radial continuity n_r=" + std::to_string(n_r) +
                                    " l=" + std::to_string(l) + " rho=" + cli::format17(rho) +
                                    " dr=" + cli::format17(dr));
        }
      }
    }
  }
  char buf[220];
  std::snprintf(buf, sizeof(buf),
                "energies, polynomial coefficients (flat variable) and envelopes at kappa = "
                "+/-1e-6 within %.2e of flat (tolerance 1e-5); assembled radial profiles "
                "guarded at 3e-5",
                worst);
  c.summary = buf;
  return c;
}

// ----------------------------------------------------------------- 7
Criterion criterion_ode_residual() {
  Criterion c;
  double worst = 0.0;
  int states = 0;
  std::vector<double> grid = kOracleGrid;
  grid.push_back(0.0);
  for (double kt : grid) {
    const Curvature curv(kt);
    for (int l = 0; l <= 6; ++l) {
      for (int n_r = 0; 2 * n_r + l <= 6; ++n_r) {
        if (!is_admissible(curv, 2 * n_r + l)) continue;
        const RadialEigenstate st = RadialEigenstate::make(curv, make_quantum_numbers(n_r, l));
        const double e = st.energy();
        const double rho_hi = curv.spherical() ? curv.domain_radius() : 4.0;
        double r_norm = 0.0;
        for (int i = 1; i < 200; ++i) {
          r_norm = std::max(r_norm, std::abs(st.radial(rho_hi * i / 200)));
        }
        double worst_here = 0.0;
        for (int i = 1; i < 200; ++i) {
          const double rho = rho_hi * i / 200;
          const RadialDerivatives d = st.radial_derivatives(rho);
          const double one = 1.0 - kt * rho * rho;
          const double lhs = rho * rho * one * d.second +
                             rho * (2.0 - 3.0 * kt * rho * rho) * d.first -
                             (1.0 - kt) * (std::pow(rho, 4) / one) * d.value +
                             (2.0 * e * rho * rho - l * (l + 1.0)) * d.value;
          worst_here = std::max(worst_here, std::abs(lhs));
        }
        ++states;
        worst = std::max(worst, worst_here / r_norm);
        c.require(worst_here < 1e-8 * r_norm, "residual kappa=" + cli::format17(kt) +
                                                  " l=" + std::to_string(l) +
                                                  " n_r=" + std::to_string(n_r));
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "radial equation residual at 200 interior points, %d states, worst %.2e of "
                "||R|| (tolerance 1e-8)",
                states, worst);
  c.summary = buf;
  return c;
}

// ----------------------------------------------------------------- 8
Criterion criterion_classical() {
  Criterion c;
  struct Case {
    double kt;
    ClassicalState s;
  };
  // three generic bound states per curvature, frozen from a seeded draw
  const Case cases[] = {
      {0.3, {0.7255995314416885, 1.2224354650458, 0.3588676400263343, -1.204482014779058,
             -0.5407259885337575, 0.5148478115249843}},
      {0.3, {0.9091169798432588, 1.577191039376454, 1.465858430384661, 1.185931381306397,
             -0.5338885308599062, 0.4722615559694172}},
      {0.3, {0.9256530939444152, 1.137363498909368, 6.167503510446909, 1.189222099629458,
             0.436768907512604, 0.3638342959759552}},
      {-0.3, {0.7987237412759196, 1.769511573517803, 0.6322336785795177, -1.027899794927783,
              0.7173274085926273, 0.2487489191499649}},
      {-0.3, {0.7908247881897651, 1.174244880602012, 1.158660156746751, -1.14434432070492,
              -0.3153802437925874, 0.4121589923798302}},
      {-0.3, {0.7346921749588609, 1.927858064351875, 5.976289659951483, -1.075957392217779,
              0.6373744169751537, 0.3558569752894989}},
  };
  double worst_drift = 0.0, worst_time = 0.0;
  double ratio_lo = 1e9, ratio_hi = 0.0;
  for (const Case& k : cases) {
    const Curvature curv(k.kt);
    const double t0 = now_seconds();
    const TrajectoryResult full = integrate_trajectory(curv, k.s, 100.0, 1e-3);
    const double elapsed = now_seconds() - t0;
    worst_time = std::max(worst_time, elapsed);
    c.require(elapsed <= 5.0, "trajectory runtime over 5 s");
    c.require(!full.wall_abort, "unexpected wall abort");
    c.require(!full.energetically_unbound, "initial condition not bound");
    const double d1 = full.drift.max_conserved();
    worst_drift = std::max(worst_drift, d1);
    c.require(d1 < 1e-8, "drift at dt=1e-3 kappa=" + cli::format17(k.kt) +
                             " drift=" + cli::format17(d1));
    const TrajectoryResult half = integrate_trajectory(curv, k.s, 100.0, 5e-4);
    const double ratio = d1 / half.drift.max_conserved();
    ratio_lo = std::min(ratio_lo, ratio);
    ratio_hi = std::max(ratio_hi, ratio);
    c.require(ratio >= 12.0 && ratio <= 20.0,
              "dt-halving ratio kappa=" + cli::format17(k.kt) + " ratio=" + cli::format17(ratio));
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "H, J, F drift over t=100 at dt=1e-3: worst %.2e (< 1e-8); halving ratios in "
                "[%.1f, %.1f]; slowest run %.2f s",
                worst_drift, ratio_lo, ratio_hi, worst_time);
  c.summary = buf;
  return c;
}

// ----------------------------------------------------------------- 9
Criterion criterion_figures() {
  Criterion c;
  auto outermost_node = [&](const std::string& csv, double kappa) {
    double prev_rho = 0.0, prev_v = 0.0, node = -1.0;
    bool have_prev = false;
    for (const auto& row : csv_rows(csv)) {
      const double k = std::stod(row[0]);
      if (k != kappa) continue;
      const double rho = std::stod(row[1]);
      const double v = std::stod(row[2]);
      if (have_prev && prev_v != 0.0 && v != 0.0 && std::signbit(v) != std::signbit(prev_v)) {
        node = 0.5 * (prev_rho + rho);
      }
      prev_rho = rho;
      prev_v = v;
      have_prev = true;
    }
    return node;
  };

  const std::string fig2 = run_cli({"figures", "--which", "2"});
  const double n2_flat = outermost_node(fig2, 0.0);
  const double n2_a = outermost_node(fig2, 0.10);
  const double n2_b = outermost_node(fig2, 0.20);
  c.require(n2_flat > 0 && n2_a > 0 && n2_b > 0, "fig2 nodes detected");
  c.require(n2_a < n2_flat && n2_b < n2_a,
            "fig2 outermost node strictly decreasing with kappa");

  const std::string fig3 = run_cli({"figures", "--which", "3"});
  const double n3_flat = outermost_node(fig3, 0.0);
  const double n3_a = outermost_node(fig3, -0.10);
  const double n3_b = outermost_node(fig3, -0.20);
  c.require(n3_flat > 0 && n3_a > 0 && n3_b > 0, "fig3 nodes detected");
  c.require(n3_a > n3_flat && n3_b > n3_a,
            "fig3 outermost node strictly increasing with |kappa|");

  const std::string fig4 = run_cli({"figures", "--which", "4"});
  for (double kt : {0.5, 0.25, 0.0, -0.25, -0.5}) {
    int bound = 0, total = 0;
    for (const auto& row : csv_rows(fig4)) {
      if (std::stod(row[0]) != kt) continue;
      ++total;
      bound += row[3] == "1";
    }
    c.require(total == 11, "fig4 series length");
    const BoundStateCensus census = bound_state_census(Curvature(kt));
    const int expect = census.finite ? census.n_max + 1 : total;
    c.require(bound == expect, "fig4 bound count kappa=" + cli::format17(kt) + " got " +
                                   std::to_string(bound) + " expect " + std::to_string(expect));
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "outermost nodes: spherical %.3f -> %.3f -> %.3f (shrinking), hyperbolic "
                "%.3f -> %.3f -> %.3f (stretching); bound counts follow the census",
                n2_flat, n2_a, n2_b, n3_flat, n3_a, n3_b);
  c.summary = buf;
  return c;
}

}  // namespace

int main() {
  struct Entry {
    const char* title;
    std::function<Criterion()> fn;
  };
  const Entry entries[] = {
      {"spectrum formula reproduction", criterion_spectrum_formula},
      {"oracle agreement (SL eigensolve)", criterion_oracle_agreement},
      {"normalization closed forms vs quadrature", criterion_normalization},
      {"degeneracy and hyperbolic census", criterion_degeneracy_census},
      {"orthogonality and node counts", criterion_orthogonality_nodes},
      {"Euclidean-limit continuity", criterion_euclidean_continuity},
      {"radial ODE residual", criterion_ode_residual},
      {"classical superintegrability drift", criterion_classical},
      {"figure-data regeneration", criterion_figures},
  };

  int failures = 0;
  int idx = 0;
  for (const Entry& e : entries) {
    ++idx;
    Criterion c;
    try {
      c = e.fn();
    } catch (const std::exception& ex) {
      c.pass = false;
      c.notes.push_back(std::string("exception: ") + ex.what());
    }
    std::printf("%s  criterion %d: %s — %s\n", c.pass ? "PASS" : "FAIL", idx, e.title,
                c.summary.c_str());
    for (const std::string& n : c.notes) {
      std::printf("      %s\n", n.c_str());
    }
    if (!c.pass) ++failures;
  }
  std::printf("%d/9 criteria passed\n", 9 - failures);
  return failures;
}
