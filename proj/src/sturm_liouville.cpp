#include "curvosc/sturm_liouville.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "curvosc/spectrum.hpp"

namespace curvosc {

namespace {

double log1p_ratio(double u) {
  if (u == 0.0) return -1.0;
  return std::log1p(-u) / u;
}

// log of phat(w) = rho^{2l+2} (1 - kt rho^2)^{1/kt}; -inf at zeros.
double log_phat(double kt, int l, double w) {
  if (w <= 0.0) return -std::numeric_limits<double>::infinity();
  const double rho = kappa_sin(kt, w);
  if (rho <= 0.0) return -std::numeric_limits<double>::infinity();  // spherical wall
  const double u = kt * rho * rho;
  if (u >= 1.0) return -std::numeric_limits<double>::infinity();
  const double log_env = (kt == 0.0) ? -rho * rho : rho * rho * log1p_ratio(u);
  return (2.0 * l + 2.0) * std::log(rho) + log_env;
}

struct Tridiag {
  std::vector<double> diag, off;
};

// Assembles the symmetrized operator on N nodes over [0, w_end].
Tridiag assemble(double kt, int l, double w_end, int n, bool dirichlet_right) {
  const double h = w_end / n;
  std::vector<double> edge_p(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double lp = log_phat(kt, l, i * h);
    edge_p[i] = std::isfinite(lp) ? std::exp(lp) : 0.0;
  }
  edge_p[0] = 0.0;
  if (kt > 0.0) edge_p[n] = 0.0;  // natural zero at the spherical wall

  Tridiag t;
  t.diag.resize(n);
  t.off.resize(static_cast<size_t>(n) - 1);
  std::vector<double> mass(n);
  const double inv_h2 = 1.0 / (h * h);
  for (int i = 0; i < n; ++i) {
    const double left = edge_p[i];
    const double right =
        (i < n - 1) ? edge_p[i + 1] : (dirichlet_right ? 2.0 * edge_p[n] : edge_p[n]);
    t.diag[i] = (left + right) * inv_h2;
    mass[i] = 0.5 * (edge_p[i] + edge_p[i + 1]);
    if (!(mass[i] > 0.0)) {
      throw ConvergenceError("sturm_liouville: weight underflow on cell " + std::to_string(i));
    }
  }
  for (int i = 0; i + 1 < n; ++i) t.off[i] = -edge_p[i + 1] * inv_h2;

  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) s[i] = 1.0 / std::sqrt(mass[i]);
  for (int i = 0; i < n; ++i) t.diag[i] *= s[i] * s[i];
  for (int i = 0; i + 1 < n; ++i) t.off[i] *= s[i] * s[i + 1];
  return t;
}

std::vector<double> channel_lambdas(double kt, int l, double w_end, int n, int count) {
  const bool dirichlet = !(kt > 0.0);
  Tridiag t = assemble(kt, l, w_end, n, dirichlet);
  return lowest_eigenvalues(t.diag, t.off, count);
}

// Largest w with phat above the representable floor (relative to its peak).
double underflow_horizon(double kt, int l, double w_limit) {
  double peak = -std::numeric_limits<double>::infinity();
  const int scan = 512;
  for (int i = 1; i <= scan; ++i) {
    peak = std::max(peak, log_phat(kt, l, w_limit * i / scan));
  }
  double w = w_limit;
  while (w > 1.0 && log_phat(kt, l, w) < peak - 560.0) w *= 0.97;
  return w;
}

}  // namespace

double energy_from_lambda(const Curvature& curv, int l, double lambda) {
  const double kt = curv.value();
  return 0.5 * (lambda + (2.0 + 2.0 * kt + kt * l) * l + 3.0);
}

double lambda_from_energy(const Curvature& curv, int l, double energy) {
  const double kt = curv.value();
  return (2.0 * energy - 3.0) - (2.0 + 2.0 * kt + kt * l) * l;
}

SLProblem build_sl_problem(const Curvature& curv, int l, int levels, int reference_grid) {
  if (l < 0) throw std::invalid_argument("build_sl_problem: l must be >= 0");
  if (levels < 1) throw std::invalid_argument("build_sl_problem: levels must be >= 1");
  const double kt = curv.value();

  SLProblem prob{curv, l, 0.0, 0.0, false, 0.0, levels, nullptr, nullptr};
  prob.p = [kt, l](double rho) {
    if (rho <= 0.0) return 0.0;
    const double u = kt * rho * rho;
    if (u >= 1.0) return 0.0;
    const double le = (kt == 0.0) ? -rho * rho
                                  : rho * rho * log1p_ratio(u) + 0.5 * std::log1p(-u);
    return std::exp((2.0 * l + 2.0) * std::log(rho) + le);
  };
  prob.q = [kt, l](double rho) {
    if (rho <= 0.0) return 0.0;
    const double u = kt * rho * rho;
    if (u >= 1.0) return 0.0;
    const double le = (kt == 0.0) ? -rho * rho
                                  : rho * rho * log1p_ratio(u) - 0.5 * std::log1p(-u);
    return std::exp((2.0 * l + 2.0) * std::log(rho) + le);
  };

  if (curv.spherical()) {
    prob.w_end = 0.5 * 3.14159265358979323846 / std::sqrt(kt);
    prob.rho_end = curv.domain_radius();
    prob.truncated_domain = false;
    prob.truncation_change = 0.0;
    return prob;
  }

  const int n_top = 2 * (levels - 1) + l;
  const double flat_w = 2.0 * std::sqrt(2.0 * (n_top + 1.5)) + 4.0;

  if (curv.flat()) {
    prob.w_end = flat_w;
    prob.rho_end = flat_w;
    prob.truncated_domain = true;
    // Gaussian tails: one extension check for the record.
    const double h_s = 0.02;
    auto lam0 = channel_lambdas(0.0, l, flat_w, static_cast<int>(flat_w / h_s), levels);
    auto lam1 =
        channel_lambdas(0.0, l, flat_w + 4.0, static_cast<int>((flat_w + 4.0) / h_s), levels);
    double change = 0.0;
    for (int j = 0; j < levels; ++j) change = std::max(change, std::abs(lam1[j] - lam0[j]));
    prob.truncation_change = change;
    return prob;
  }

  // Hyperbolic: extend the domain until the eigenvalue change is dominated by
  // the projected discretization error of the reference grid. A channel with no
  // bound states gets the flat default domain (solves there are refused anyway).
  const int avail = admissible_radial_count(curv, l, levels);
  if (avail == 0) {
    prob.w_end = flat_w;
    prob.rho_end = kappa_sin(kt, prob.w_end);
    prob.truncated_domain = true;
    prob.truncation_change = 0.0;
    return prob;
  }
  const int k_eff = std::min(levels, avail);
  const double h_s = 0.02;
  const double w_cap = underflow_horizon(kt, l, 400.0);
  double w = std::min(std::max(8.0, flat_w), w_cap);
  const double step = std::max(2.0, 0.15 * w);
  auto lam_cur = channel_lambdas(kt, l, w, std::max(100, static_cast<int>(w / h_s)), k_eff);
  double change = 0.0;
  for (int iter = 0; iter < 60; ++iter) {
    const double w_next = std::min(w + step, w_cap);
    auto lam_next =
        channel_lambdas(kt, l, w_next, std::max(100, static_cast<int>(w_next / h_s)), k_eff);
    auto lam_coarse = channel_lambdas(kt, l, w_next,
                                      std::max(50, static_cast<int>(w_next / (2.0 * h_s))),
                                      k_eff);
    bool ok = true;
    change = 0.0;
    for (int j = 0; j < k_eff; ++j) {
      const double t_j = std::abs(lam_next[j] - lam_cur[j]);
      change = std::max(change, t_j);
      const double d_scan = std::abs(lam_coarse[j] - lam_next[j]) * (4.0 / 3.0);
      const double c_d = d_scan / (4.0 * h_s * h_s);
      const double w_ref = w_next / reference_grid;
      const double budget =
          std::max(0.08 * c_d * w_ref * w_ref, 1e-8 * std::max(1.0, std::abs(lam_next[j])));
      if (t_j > budget) ok = false;
    }
    if (ok || w_next >= w_cap) {
      prob.w_end = w_next;
      break;
    }
    w = w_next;
    lam_cur = std::move(lam_next);
  }
  if (prob.w_end == 0.0) prob.w_end = w;
  prob.rho_end = kappa_sin(kt, prob.w_end);
  prob.truncated_domain = true;
  prob.truncation_change = change;
  return prob;
}

SLDiscretization discretize(const SLProblem& prob, int grid_size) {
  if (grid_size < 50) throw std::invalid_argument("discretize: grid too small");
  const double kt = prob.curv.value();
  const int n = grid_size;
  const double h = prob.w_end / n;
  const bool dirichlet = !(kt > 0.0);

  std::vector<double> edge_p(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double lp = log_phat(kt, prob.l, i * h);
    edge_p[i] = std::isfinite(lp) ? std::exp(lp) : 0.0;
  }
  edge_p[0] = 0.0;
  if (kt > 0.0) edge_p[n] = 0.0;  // natural zero at the spherical wall

  SLDiscretization d;
  d.n = n;
  d.h = h;
  d.stiff_diag.resize(n);
  d.stiff_off.resize(static_cast<size_t>(n) - 1);
  d.mass.resize(n);
  const double inv_h2 = 1.0 / (h * h);
  for (int i = 0; i < n; ++i) {
    const double left = edge_p[i];
    const double right =
        (i < n - 1) ? edge_p[i + 1] : (dirichlet ? 2.0 * edge_p[n] : edge_p[n]);
    d.stiff_diag[i] = (left + right) * inv_h2;
    d.mass[i] = 0.5 * (edge_p[i] + edge_p[i + 1]);
    if (!(d.mass[i] > 0.0)) {
      throw ConvergenceError("discretize: weight underflow; domain too long");
    }
  }
  for (int i = 0; i + 1 < n; ++i) d.stiff_off[i] = -edge_p[i + 1] * inv_h2;

  d.sym_diag = d.stiff_diag;
  d.sym_off = d.stiff_off;
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) s[i] = 1.0 / std::sqrt(d.mass[i]);
  for (int i = 0; i < n; ++i) d.sym_diag[i] *= s[i] * s[i];
  for (int i = 0; i + 1 < n; ++i) d.sym_off[i] *= s[i] * s[i + 1];
  return d;
}

std::vector<double> lowest_eigenvalues(const std::vector<double>& diag,
                                       const std::vector<double>& off, int count) {
  const int n = static_cast<int>(diag.size());
  if (n < 1 || count < 1 || count > n) {
    throw std::invalid_argument("lowest_eigenvalues: bad sizes");
  }
  std::vector<double> e2(static_cast<size_t>(std::max(0, n - 1)));
  double max_e2 = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    e2[i] = off[i] * off[i];
    max_e2 = std::max(max_e2, e2[i]);
  }
  const double pivmin = std::max(1e-290, max_e2 * 1e-290);

  // Sturm count: number of eigenvalues strictly below x.
  auto count_below = [&](double x) {
    int cnt = 0;
    double p = diag[0] - x;
    if (std::abs(p) < pivmin) p = -pivmin;
    if (p < 0.0) ++cnt;
    for (int i = 1; i < n; ++i) {
      p = diag[i] - x - e2[i - 1] / p;
      if (std::abs(p) < pivmin) p = -pivmin;
      if (p < 0.0) ++cnt;
    }
    return cnt;
  };

  double lo = diag[0], hi = diag[0];
  for (int i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }

  std::vector<double> out(count);
  for (int j = 0; j < count; ++j) {
    double a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid == a || mid == b) break;
      if (count_below(mid) >= j + 1) {
        b = mid;
      } else {
        a = mid;
      }
      if (b - a <= 1e-14 * std::max(1.0, std::abs(mid))) break;
    }
    out[j] = 0.5 * (a + b);
    lo = out[j];  // eigenvalues ascend; shrink the bracket
  }
  return out;
}

std::vector<double> tridiagonal_eigenvector(const std::vector<double>& diag,
                                            const std::vector<double>& off, double lambda) {
  const int n = static_cast<int>(diag.size());
  if (n < 2) throw std::invalid_argument("tridiagonal_eigenvector: n must be >= 2");

  // LU of (T - lambda I) with partial pivoting, gttrf-style.
  std::vector<double> d(n), dl(static_cast<size_t>(n) - 1), du(static_cast<size_t>(n) - 1);
  std::vector<double> du2(std::max(0, n - 2), 0.0);
  std::vector<int> piv(static_cast<size_t>(n) - 1);
  for (int i = 0; i < n; ++i) d[i] = diag[i] - lambda;
  for (int i = 0; i + 1 < n; ++i) dl[i] = du[i] = off[i];

  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = 1e-300;
      const double fact = dl[i] / d[i];
      dl[i] = fact;
      d[i + 1] -= fact * du[i];
      if (i + 2 < n) du2[i] = 0.0;
      piv[i] = 0;
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      piv[i] = 1;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = 1e-300;

  auto solve = [&](std::vector<double>& b) {
    for (int i = 0; i + 1 < n; ++i) {
      if (piv[i] == 0) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl[i] * b[i];
      }
    }
    b[n - 1] /= d[n - 1];
    b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (int i = n - 3; i >= 0; --i) {
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
  };

  // deterministic pseudo-random start
  std::vector<double> v(n);
  unsigned long long state = 0x9e3779b97f4a7c15ull;
  for (int i = 0; i < n; ++i) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    v[i] = ((state >> 16) % 10007) / 10007.0 - 0.5;
  }
  for (int iter = 0; iter < 3; ++iter) {
    solve(v);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw ConvergenceError("tridiagonal_eigenvector: inverse iteration failed");
    }
    for (double& x : v) x /= norm;
  }
  return v;
}

SLSolveResult solve_eigenvalues(const SLProblem& prob, int grid_size, int count) {
  if (grid_size < 100) {
    throw std::invalid_argument("solve_eigenvalues: grid_size must be >= 100");
  }
  if (count < 1 || count > 10) {
    throw std::invalid_argument("solve_eigenvalues: count must be in [1, 10]");
  }
  if (prob.curv.hyperbolic()) {
    const int avail = admissible_radial_count(prob.curv, prob.l, count);
    if (count > avail) {
      throw NoBoundStateError("solve_eigenvalues: count exceeds the discrete spectrum (" +
                              std::to_string(avail) + " levels for this channel)");
    }
  }

  SLSolveResult res;
  res.grid_size = grid_size;
  res.rho_end = prob.rho_end;
  res.w_end = prob.w_end;
  res.truncated_domain = prob.truncated_domain;
  res.truncation_change = prob.truncation_change;

  SLDiscretization fine = discretize(prob, grid_size);
  SLDiscretization coarse = discretize(prob, grid_size / 2);
  res.lambdas = lowest_eigenvalues(fine.sym_diag, fine.sym_off, count);
  res.lambdas_coarse = lowest_eigenvalues(coarse.sym_diag, coarse.sym_off, count);
  // radial problems have simple spectrum; a collapsed gap means the solve is junk
  for (int j = 0; j + 1 < count; ++j) {
    if (res.lambdas[j + 1] - res.lambdas[j] <= 1e-10 * std::max(1.0, std::abs(res.lambdas[j + 1]))) {
      throw ConvergenceError("solve_eigenvalues: eigenvalue gap below 1e-10 (not simple)");
    }
  }
  res.lambdas_extrapolated.resize(count);
  res.energies.resize(count);
  res.energies_coarse.resize(count);
  res.energies_extrapolated.resize(count);
  for (int j = 0; j < count; ++j) {
    res.lambdas_extrapolated[j] = (4.0 * res.lambdas[j] - res.lambdas_coarse[j]) / 3.0;
    res.energies[j] = energy_from_lambda(prob.curv, prob.l, res.lambdas[j]);
    res.energies_coarse[j] = energy_from_lambda(prob.curv, prob.l, res.lambdas_coarse[j]);
    res.energies_extrapolated[j] =
        energy_from_lambda(prob.curv, prob.l, res.lambdas_extrapolated[j]);
  }
  return res;
}

}  // namespace curvosc
