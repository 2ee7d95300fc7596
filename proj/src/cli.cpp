#include "curvosc/cli.hpp"

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvosc/classical.hpp"
#include "curvosc/curvature.hpp"
#include "curvosc/quadrature.hpp"
#include "curvosc/spectrum.hpp"
#include "curvosc/sturm_liouville.hpp"
#include "curvosc/wavefunction.hpp"

namespace curvosc::cli {

namespace {

using Cell = std::variant<std::monostate, double, long long, std::string>;
using Row = std::vector<Cell>;

struct Table {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  // ordered key/value
  std::vector<std::string> notes;
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

std::string cell_csv(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return "";
  if (const double* d = std::get_if<double>(&c)) return format17(*d);
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

void emit_csv(const Table& t, std::ostream& out) {
  out << "# curvosc " << t.command << "\n";
  for (const auto& [k, v] : t.config) out << "# " << k << "=" << v << "\n";
  for (const std::string& n : t.notes) out << "# note: " << n << "\n";
  for (size_t i = 0; i < t.columns.size(); ++i) {
    out << (i ? "," : "") << t.columns[i];
  }
  out << "\n";
  for (const Row& r : t.rows) {
    for (size_t i = 0; i < r.size(); ++i) {
      out << (i ? "," : "") << cell_csv(r[i]);
    }
    out << "\n";
  }
}

void emit_json(const Table& t, std::ostream& out) {
  nlohmann::ordered_json j;
  j["command"] = t.command;
  nlohmann::ordered_json cfg;
  for (const auto& [k, v] : t.config) cfg[k] = v;
  j["config"] = std::move(cfg);
  j["notes"] = t.notes;
  j["columns"] = t.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const Row& r : t.rows) {
    nlohmann::ordered_json jr = nlohmann::ordered_json::array();
    for (const Cell& c : r) {
      if (std::holds_alternative<std::monostate>(c)) {
        jr.push_back(nullptr);
      } else if (const double* d = std::get_if<double>(&c)) {
        jr.push_back(*d);
      } else if (const long long* i = std::get_if<long long>(&c)) {
        jr.push_back(*i);
      } else {
        jr.push_back(std::get<std::string>(c));
      }
    }
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  out << j.dump(2) << "\n";
}

int emit(const Table& t, const std::string& format, const std::string& out_path,
         std::ostream& out, std::ostream& err) {
  std::ostringstream buf;
  if (format == "json") {
    emit_json(t, buf);
  } else {
    emit_csv(t, buf);
  }
  if (out_path.empty()) {
    out << buf.str();
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    err << "cannot open output path: " << out_path << "\n";
    return 2;
  }
  f << buf.str();
  return 0;
}

std::string gap_status(const Curvature& curv, int n) {
  if (!curv.hyperbolic()) return "bound";
  return is_admissible(curv, n) ? "bound" : "inadmissible";
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(double kappa, int n_max, const std::string& format,
                 const std::string& out_path, std::ostream& out, std::ostream& err) {
  const Curvature curv(kappa);
  Table t;
  t.command = "spectrum";
  t.config = {{"kappa", format17(kappa)}, {"n_max", std::to_string(n_max)}};
  t.columns = {"n", "energy", "degeneracy", "gap", "status"};
  for (int n = 0; n <= n_max; ++n) {
    Row row;
    row.emplace_back(static_cast<long long>(n));
    row.emplace_back(energy_level_value(curv, n));
    row.emplace_back(static_cast<long long>(degeneracy(n)));
    const bool gap_ok = n < n_max && is_admissible(curv, n) && is_admissible(curv, n + 1);
    if (gap_ok) {
      row.emplace_back(energy_gap(curv, n));
    } else {
      row.emplace_back(std::monostate{});
    }
    row.emplace_back(gap_status(curv, n));
    t.rows.push_back(std::move(row));
  }
  return emit(t, format, out_path, out, err);
}

// ------------------------------------------------------------------ census

int cmd_census(double kappa, int n_max, const std::string& format,
               const std::string& out_path, std::ostream& out, std::ostream& err) {
  const Curvature curv(kappa);
  const BoundStateCensus census = bound_state_census(curv);
  Table t;
  t.command = "census";
  t.config = {{"kappa", format17(kappa)}};
  t.config.emplace_back("finite", census.finite ? "true" : "false");
  t.config.emplace_back("has_continuum", census.has_continuum ? "true" : "false");
  t.config.emplace_back("n_max", std::to_string(census.n_max));
  t.config.emplace_back("marginal_n",
                        census.marginal_n ? std::to_string(*census.marginal_n) : "none");
  t.config.emplace_back("continuum_edge",
                        census.continuum_edge ? format17(*census.continuum_edge) : "none");
  t.config.emplace_back("total_states", std::to_string(census.total_states));
  if (census.finite && census.n_max < 0) {
    t.notes.push_back("empty census: no bound states at this curvature");
  }
  if (census.marginal_n) {
    t.notes.push_back(
        "strict counting: the marginal level n = 1/|kappa|-1 has a divergent norm and is "
        "excluded; inclusive counting would report one more level");
  }
  t.columns = {"n", "energy", "degeneracy"};
  if (census.finite) {
    for (const EnergyLevel& lv : census.levels) {
      t.rows.push_back({static_cast<long long>(lv.n), lv.energy,
                        static_cast<long long>(lv.degeneracy)});
    }
  } else {
    t.notes.push_back("infinite discrete spectrum; listing levels up to n_max flag");
    for (int n = 0; n <= n_max; ++n) {
      const EnergyLevel lv = energy_level(curv, n);
      t.rows.push_back({static_cast<long long>(lv.n), lv.energy,
                        static_cast<long long>(lv.degeneracy)});
    }
  }
  return emit(t, format, out_path, out, err);
}

// ------------------------------------------------------------------ wavefn

int cmd_wavefn(double kappa, int n_r, int l, int m, int samples, double r_max_opt,
               const std::string& format, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
  const Curvature curv(kappa);
  const QuantumNumbers qn = make_quantum_numbers(n_r, l, m);
  const RadialEigenstate state = RadialEigenstate::make(curv, qn);

  double r_max = r_max_opt;
  if (!(r_max > 0.0)) {
    if (curv.spherical()) {
      r_max = curv.domain_radius();
    } else {
      // radius holding 99.9% of the (unit) probability mass
      auto density = [&](double r) {
        const double v = state.radial(r);
        return v * v * measure_weight(curv, r);
      };
      r_max = 2.0;
      for (int iter = 0; iter < 40; ++iter) {
        if (integrate(density, 0.0, r_max, 1e-6).value >= 0.999) break;
        r_max *= 1.5;
      }
    }
  }

  Table t;
  t.command = "wavefn";
  t.config = {{"kappa", format17(kappa)}, {"n_r", std::to_string(n_r)},
              {"l", std::to_string(l)},   {"m", std::to_string(m)},
              {"samples", std::to_string(samples)}, {"r_max", format17(r_max)},
              {"energy", format17(state.energy())},
              {"norm_constant", format17(state.norm_constant())}};
  t.columns = {"r", "radial", "weight_radial_sq", "envelope"};
  for (int i = 0; i < samples; ++i) {
    const double r = r_max * i / samples;
    const double R = state.radial(r);
    const double w = (r > 0.0 && (!curv.spherical() || r < curv.domain_radius()))
                         ? measure_weight(curv, r)
                         : 0.0;
    t.rows.push_back({r, R, w * R * R, state.envelope(r)});
  }
  return emit(t, format, out_path, out, err);
}

// ------------------------------------------------------------------ verify

struct ChannelReport {
  std::vector<Row> rows;
  bool failed = false;
  bool nonconverged = false;
  bool convergence_warning = false;
};

ChannelReport verify_channel(double kappa, int l, int levels, int grid, double eigen_tol,
                             double quad_tol) {
  ChannelReport rep;
  const Curvature curv(kappa);
  const int count = std::min(levels, admissible_radial_count(curv, l, levels));
  if (count == 0) {
    Row row{std::string("note"), kappa, static_cast<long long>(l), std::monostate{},
            std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
            std::string("empty census: vacuous pass"), std::string("pass")};
    rep.rows.push_back(std::move(row));
    return rep;
  }

  try {
    const SLProblem prob = build_sl_problem(curv, l, count, grid);
    const SLSolveResult sol = solve_eigenvalues(prob, grid, count);
    for (int j = 0; j < count; ++j) {
      const double exact = energy(curv, make_quantum_numbers(j, l));
      const double got = sol.energies[j];
      const double rel = std::abs(got - exact) / std::abs(exact);
      const bool pass = rel <= eigen_tol;
      rep.failed = rep.failed || !pass;

      std::string extra;
      const double err_fine = std::abs(got - exact);
      const double err_coarse = std::abs(sol.energies_coarse[j] - exact);
      if (j >= 1 && err_fine > 1e-9 * std::abs(exact)) {
        const double ratio = err_coarse / err_fine;
        extra = "ratio=" + format17(ratio);
        if (ratio < 3.5 || ratio > 4.5) {
          rep.convergence_warning = true;
          extra += " convergence_warning";
        }
      } else if (j == 0) {
        extra = "zero_mode_exact";
      } else {
        extra = "below_ratio_floor";
      }
      rep.rows.push_back({std::string("sl_energy"), kappa, static_cast<long long>(l),
                          static_cast<long long>(j), exact, got, rel, eigen_tol, extra,
                          std::string(pass ? "pass" : "fail")});
    }

    // normalization closed form vs quadrature
    for (int j = 0; j < count; ++j) {
      const QuantumNumbers qn = make_quantum_numbers(j, l);
      const double closed = normalization_integral(curv, qn);
      const RadialEigenstate state = RadialEigenstate::make(curv, qn);
      auto integrand = [&](double r) {
        const double u = state.radial_unnormalized(r);
        return u * u * measure_weight(curv, r);
      };
      QuadratureResult q;
      if (curv.spherical()) {
        const double wk = 0.5 * 3.14159265358979323846 / std::sqrt(kappa);
        auto in_w = [&](double w) {
          const double r = kappa_sin(kappa, w);
          const double u = state.radial_unnormalized(r);
          // dr = Cos_k(w) dw and measure r^2/sqrt(1-k r^2) = r^2 / Cos_k(w)
          return u * u * r * r;
        };
        q = integrate(in_w, 0.0, wk, quad_tol * 0.1);
      } else if (curv.flat()) {
        q = integrate_to_infinity(integrand, 0.0, quad_tol * 0.1);
      } else {
        q = integrate_to_infinity(integrand, 0.0, quad_tol * 0.1);
      }
      if (!q.converged) {
        rep.nonconverged = true;
      }
      const double rel = std::abs(q.value - closed) / std::abs(closed);
      const bool pass = q.converged && rel <= quad_tol;
      rep.failed = rep.failed || !pass;
      rep.rows.push_back({std::string("norm_quadrature"), kappa, static_cast<long long>(l),
                          static_cast<long long>(j), closed, q.value, rel, quad_tol,
                          std::string(q.converged ? "" : "quadrature_nonconverged"),
                          std::string(pass ? "pass" : "fail")});
    }
  } catch (const ConvergenceError&) {
    rep.nonconverged = true;
    rep.rows.push_back({std::string("error"), kappa, static_cast<long long>(l),
                        std::monostate{}, std::monostate{}, std::monostate{},
                        std::monostate{}, std::monostate{},
                        std::string("oracle non-convergence"), std::string("fail")});
  }
  return rep;
}

int cmd_verify(std::vector<double> kappas, int l_max, int levels, int grid, double eigen_tol,
               double quad_tol, const std::string& format, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
  Table t;
  t.command = "verify";
  std::string klist;
  for (size_t i = 0; i < kappas.size(); ++i) klist += (i ? "," : "") + format17(kappas[i]);
  t.config = {{"kappas", klist},
              {"l_max", std::to_string(l_max)},
              {"levels", std::to_string(levels)},
              {"grid", std::to_string(grid)},
              {"eigen_tol", format17(eigen_tol)},
              {"quad_tol", format17(quad_tol)}};
  t.columns = {"check", "kappa", "l",   "n_r",   "expected",
               "observed", "rel_err", "tol", "extra", "result"};

  std::vector<std::future<ChannelReport>> futures;
  for (double kappa : kappas) {
    for (int l = 0; l <= l_max; ++l) {
      futures.push_back(std::async(std::launch::async, verify_channel, kappa, l, levels, grid,
                                   eigen_tol, quad_tol));
    }
  }
  bool failed = false, nonconverged = false, warning = false;
  for (auto& f : futures) {
    ChannelReport rep = f.get();
    failed = failed || rep.failed;
    nonconverged = nonconverged || rep.nonconverged;
    warning = warning || rep.convergence_warning;
    for (Row& r : rep.rows) t.rows.push_back(std::move(r));
  }
  if (warning) {
    t.notes.push_back("convergence-order warning: some grid ratios fall outside [3.5, 4.5]");
  }
  t.notes.push_back(failed || nonconverged ? "overall: FAIL" : "overall: all-pass");
  const int rc = emit(t, format, out_path, out, err);
  if (rc != 0) return rc;
  if (nonconverged) return 3;
  return failed ? 1 : 0;
}

// --------------------------------------------------------------- classical

int cmd_classical(double kappa, const ClassicalState& initial, double t_end, double dt,
                  int sample_every, const std::string& format, const std::string& out_path,
                  std::ostream& out, std::ostream& err) {
  const Curvature curv(kappa);
  TrajectoryResult traj = integrate_trajectory(curv, initial, t_end, dt, sample_every);

  Table t;
  t.command = "classical";
  t.config = {{"kappa", format17(kappa)},
              {"t_end", format17(t_end)},
              {"dt", format17(dt)},
              {"r0", format17(initial.r)},
              {"theta0", format17(initial.theta)},
              {"phi0", format17(initial.phi)},
              {"p_r0", format17(initial.p_r)},
              {"p_theta0", format17(initial.p_theta)},
              {"p_phi0", format17(initial.p_phi)}};
  t.columns = {"t", "r", "theta", "phi", "p_r", "p_theta", "p_phi", "energy", "J1", "J2", "J3"};
  for (const TrajectorySample& s : traj.samples) {
    t.rows.push_back({s.t, s.state.r, s.state.theta, s.state.phi, s.state.p_r,
                      s.state.p_theta, s.state.p_phi, s.conserved.hamiltonian,
                      s.conserved.angular_momentum[0], s.conserved.angular_momentum[1],
                      s.conserved.angular_momentum[2]});
  }
  t.notes.push_back("drift_hamiltonian=" + format17(traj.drift.hamiltonian));
  t.notes.push_back("drift_angular_momentum=" + format17(traj.drift.angular_momentum));
  t.notes.push_back("drift_fradkin=" + format17(traj.drift.fradkin));
  t.notes.push_back("drift_noether_momentum=" + format17(traj.drift.noether_momentum) +
                    " (geodesic constants; not conserved under the oscillator)");
  if (traj.energetically_unbound) {
    t.notes.push_back("unbound: energy above the hyperbolic potential ceiling");
  }
  if (traj.wall_abort) {
    t.notes.push_back("aborted: trajectory approached the spherical wall");
  }
  const int rc = emit(t, format, out_path, out, err);
  if (rc != 0) return rc;
  return traj.wall_abort ? 1 : 0;
}

// ----------------------------------------------------------------- figures

// Unnormalized radial profile rho^l (1-kt rho^2)^{1/(2kt)} P(kt rho^2), valid
// for any (n_r, l) including marginal hyperbolic levels that are plottable
// but not normalizable.
double radial_profile(double kt, int n_r, int l, double rho) {
  const double u = kt * rho * rho;
  double env;
  if (u >= 1.0) {
    env = 0.0;
  } else if (std::abs(u) < 1e-8) {
    env = std::exp(-0.5 * rho * rho * (1.0 + u * (0.5 + u / 3.0)));
  } else {
    env = std::exp(std::log1p(-u) / (2.0 * kt));
  }
  const double c = l + 1.5;
  const double poly = (kt == 0.0)
                          ? confluent_1f1_polynomial(n_r, c, rho * rho)
                          : gauss_2f1_polynomial(n_r, n_r + l + 1.0 + 1.0 / kt, c, u);
  return std::pow(rho, l) * env * poly;
}

void figure_series_radial(Table& t, double kappa, int n_r, int l, double rho_max,
                          int samples) {
  for (int i = 0; i <= samples; ++i) {
    const double rho = std::min(rho_max, rho_max * i / samples);
    t.rows.push_back({kappa, rho, radial_profile(kappa, n_r, l, rho)});
  }
}

int cmd_figures(int which, const std::string& format, const std::string& out_path,
                std::ostream& out, std::ostream& err) {
  Table t;
  t.command = "figures";
  t.config = {{"which", std::to_string(which)}};
  if (which == 1) {
    t.columns = {"kappa", "r", "potential"};
    const int samples = 400;
    for (double kappa : {-0.5, -0.25, 0.0, 0.25, 0.5}) {
      const Curvature curv(kappa);
      const double r_max = curv.spherical() ? 0.97 * curv.domain_radius() : 3.0;
      for (int i = 0; i <= samples; ++i) {
        const double r = r_max * i / samples;
        t.rows.push_back({kappa, r, potential(curv, r)});
      }
    }
  } else if (which == 2) {
    t.columns = {"kappa", "rho", "value"};
    figure_series_radial(t, 0.0, 2, 0, 4.5, 600);
    figure_series_radial(t, 0.10, 2, 0, Curvature(0.10).domain_radius(), 600);
    figure_series_radial(t, 0.20, 2, 0, Curvature(0.20).domain_radius(), 600);
  } else if (which == 3) {
    t.columns = {"kappa", "rho", "value"};
    t.notes.push_back(
        "kappa=-0.2 with n_r=2, l=0 is the marginal level n = 1/|kappa|-1: the profile is "
        "well defined but not normalizable (excluded from the census)");
    figure_series_radial(t, 0.0, 2, 0, 9.0, 600);
    figure_series_radial(t, -0.10, 2, 0, 9.0, 600);
    figure_series_radial(t, -0.20, 2, 0, 9.0, 600);
  } else {
    t.columns = {"kappa", "n", "energy", "bound"};
    for (double kappa : {0.5, 0.25, 0.0, -0.25, -0.5}) {
      const Curvature curv(kappa);
      for (int n = 0; n <= 10; ++n) {
        t.rows.push_back({kappa, static_cast<long long>(n), energy_level_value(curv, n),
                          static_cast<long long>(is_admissible(curv, n) ? 1 : 0)});
      }
    }
  }
  return emit(t, format, out_path, out, err);
}

}  // namespace

std::string format17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"curvature-parametrized quantum/classical oscillator toolkit"};
  app.require_subcommand(1);

  std::string format = "csv";
  std::string out_path;
  app.add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path);
  // options shared by subcommands are registered per-command below

  double kappa = 0.0;
  int n_max = 6;
  auto* sp = app.add_subcommand("spectrum", "energy levels, degeneracies and gaps");
  sp->add_option("--kappa", kappa)->required();
  sp->add_option("--n-max", n_max)->check(CLI::Range(0, 1000));
  sp->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  sp->add_option("--out", out_path);

  auto* ce = app.add_subcommand("census", "bound-state census");
  ce->add_option("--kappa", kappa)->required();
  ce->add_option("--n-max", n_max)->check(CLI::Range(0, 1000));
  ce->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  ce->add_option("--out", out_path);

  int nr = 0, l = 0, m = 0, samples = 400;
  double r_max = 0.0;
  auto* wf = app.add_subcommand("wavefn", "radial wavefunction table");
  wf->add_option("--kappa", kappa)->required();
  wf->add_option("--nr", nr)->check(CLI::Range(0, 100));
  wf->add_option("--l", l)->check(CLI::Range(0, 100));
  wf->add_option("--m", m);
  wf->add_option("--samples", samples)->check(CLI::Range(2, 1000000));
  wf->add_option("--r-max", r_max);
  wf->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  wf->add_option("--out", out_path);

  std::vector<double> kappas{0.1, 0.25, 0.5, 1.0, -0.1, -0.25};
  int l_max = 2, levels = 5, grid = 4000;
  double eigen_tol = 1e-4, quad_tol = 1e-8;
  auto* ve = app.add_subcommand("verify", "closed forms vs numerical oracle");
  ve->add_option("--kappa", kappas);
  ve->add_option("--l-max", l_max)->check(CLI::Range(0, 20));
  ve->add_option("--levels", levels)->check(CLI::Range(1, 10));
  ve->add_option("--grid", grid)->check(CLI::Range(100, 200000));
  ve->add_option("--tol", eigen_tol);
  ve->add_option("--quad-tol", quad_tol);
  ve->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  ve->add_option("--out", out_path);

  ClassicalState init{1.0, 1.5707963267948966, 0.0, 0.0, 0.0, 1.0};
  double t_end = 100.0, dt = 1e-3;
  int sample_every = 0;
  auto* cl = app.add_subcommand("classical", "trajectory integration and drift report");
  cl->add_option("--kappa", kappa)->required();
  cl->add_option("--r", init.r);
  cl->add_option("--theta", init.theta);
  cl->add_option("--phi", init.phi);
  cl->add_option("--pr", init.p_r);
  cl->add_option("--ptheta", init.p_theta);
  cl->add_option("--pphi", init.p_phi);
  cl->add_option("--t-end", t_end);
  cl->add_option("--dt", dt);
  cl->add_option("--sample-every", sample_every);
  cl->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  cl->add_option("--out", out_path);

  int which = 4;
  auto* fg = app.add_subcommand("figures", "plot-ready datasets");
  fg->add_option("--which", which)->required()->check(CLI::Range(1, 4));
  fg->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  fg->add_option("--out", out_path);

  std::vector<const char*> argv;
  argv.push_back("curvosc");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (sp->parsed()) return cmd_spectrum(kappa, n_max, format, out_path, out, err);
    if (ce->parsed()) return cmd_census(kappa, n_max, format, out_path, out, err);
    if (wf->parsed()) {
      return cmd_wavefn(kappa, nr, l, m, samples, r_max, format, out_path, out, err);
    }
    if (ve->parsed()) {
      return cmd_verify(kappas, l_max, levels, grid, eigen_tol, quad_tol, format, out_path,
                        out, err);
    }
    if (cl->parsed()) {
      return cmd_classical(kappa, init, t_end, dt, sample_every, format, out_path, out, err);
    }
    if (fg->parsed()) return cmd_figures(which, format, out_path, out, err);
  } catch (const ConvergenceError& e) {
    err << "non-convergence: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "no subcommand given\n";
  return 2;
}

}  // namespace curvosc::cli
