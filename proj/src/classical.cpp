#include "curvosc/classical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace curvosc {

namespace {

void validate_state(const Curvature& curv, const ClassicalState& s, const char* who) {
  if (!(s.r > 0.0) || !std::isfinite(s.r)) {
    throw std::invalid_argument(std::string(who) + ": r must be finite and > 0");
  }
  if (!(s.theta > 0.0) || !(s.theta < 3.14159265358979323846)) {
    throw std::invalid_argument(std::string(who) + ": theta must lie in (0, pi)");
  }
  if (curv.spherical() && s.r * s.r * curv.value() >= 1.0) {
    throw RadialDomainError(std::string(who) + ": r beyond the spherical wall");
  }
}

Vec3 matvec(const Mat3& m, const Vec3& v) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i) {
    out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  }
  return out;
}

Mat3 matmul(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
    }
  }
  return out;
}

Mat3 transpose(const Mat3& m) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i][j] = m[j][i];
  }
  return out;
}

constexpr Mat3 kIdentity{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
// quarter turn about the x-axis, moves the coordinate poles to the equator
constexpr Mat3 kQuarterTurnX{{{1, 0, 0}, {0, 0, 1}, {0, -1, 0}}};

struct Deriv {
  double r, theta, phi, p_r, p_theta, p_phi;
};

Deriv hamilton_rhs(double kt, const ClassicalState& s) {
  const double st = std::sin(s.theta);
  const double ct = std::cos(s.theta);
  const double one = 1.0 - kt * s.r * s.r;
  const double r2 = s.r * s.r;
  Deriv d;
  d.r = one * s.p_r;
  d.theta = s.p_theta / r2;
  d.phi = s.p_phi / (r2 * st * st);
  d.p_r = kt * s.r * s.p_r * s.p_r +
          (s.p_theta * s.p_theta + s.p_phi * s.p_phi / (st * st)) / (r2 * s.r) -
          s.r / (one * one);
  d.p_theta = s.p_phi * s.p_phi * ct / (r2 * st * st * st);
  d.p_phi = 0.0;
  return d;
}

ClassicalState advance(const ClassicalState& s, const Deriv& d, double dt) {
  return ClassicalState{s.r + dt * d.r,         s.theta + dt * d.theta,
                        s.phi + dt * d.phi,     s.p_r + dt * d.p_r,
                        s.p_theta + dt * d.p_theta, s.p_phi + dt * d.p_phi};
}

// Rotates the chart: position and angular momentum transform as vectors,
// (r, p_r) are rotation scalars, and (p_theta, p_phi) are rebuilt from J.
ClassicalState rotate_chart(const ClassicalState& s, const Mat3& rot) {
  const double st = std::sin(s.theta), ct = std::cos(s.theta);
  const double sp = std::sin(s.phi), cp = std::cos(s.phi);
  const Vec3 n{st * cp, st * sp, ct};
  const Vec3 j{-(sp * s.p_theta + ct * cp * s.p_phi / st),
               cp * s.p_theta - ct * sp * s.p_phi / st, s.p_phi};
  const Vec3 n2 = matvec(rot, n);
  const Vec3 j2 = matvec(rot, j);
  const double theta2 = std::acos(std::clamp(n2[2], -1.0, 1.0));
  const double phi2 = std::atan2(n2[1], n2[0]);
  const double p_theta2 = j2[1] * std::cos(phi2) - j2[0] * std::sin(phi2);
  return ClassicalState{s.r, theta2, phi2, s.p_r, p_theta2, j2[2]};
}

bool finite_state(const ClassicalState& s) {
  return std::isfinite(s.r) && std::isfinite(s.theta) && std::isfinite(s.phi) &&
         std::isfinite(s.p_r) && std::isfinite(s.p_theta) && std::isfinite(s.p_phi);
}

}  // namespace

double DriftReport::max_conserved() const {
  return std::max({hamiltonian, angular_momentum, fradkin});
}

ConservedSet evaluate_conserved(const Curvature& curv, const ClassicalState& s) {
  validate_state(curv, s, "evaluate_conserved");
  const double kt = curv.value();
  const double st = std::sin(s.theta), ct = std::cos(s.theta);
  const double sp = std::sin(s.phi), cp = std::cos(s.phi);
  const double one = 1.0 - kt * s.r * s.r;
  const double sq = std::sqrt(one);
  const double r = s.r;

  ConservedSet c;
  c.hamiltonian = 0.5 * (one * s.p_r * s.p_r +
                         (s.p_theta * s.p_theta + s.p_phi * s.p_phi / (st * st)) / (r * r)) +
                  0.5 * r * r / one;
  c.angular_momentum = {-(sp * s.p_theta + ct * cp * s.p_phi / st),
                        cp * s.p_theta - ct * sp * s.p_phi / st, s.p_phi};
  c.noether_momentum = {sq * (st * cp * s.p_r + ct * cp * s.p_theta / r - sp * s.p_phi / (r * st)),
                        sq * (st * sp * s.p_r + ct * sp * s.p_theta / r + cp * s.p_phi / (r * st)),
                        sq * (ct * s.p_r - st * s.p_theta / r)};
  const Vec3 x{r * st * cp / sq, r * st * sp / sq, r * ct / sq};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      c.fradkin[i][j] = c.noether_momentum[i] * c.noether_momentum[j] + x[i] * x[j];
    }
  }
  return c;
}

double casimir_residual(const Curvature& curv, const ClassicalState& s) {
  const ConservedSet c = evaluate_conserved(curv, s);
  double p2 = 0.0, j2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    p2 += c.noether_momentum[i] * c.noether_momentum[i];
    j2 += c.angular_momentum[i] * c.angular_momentum[i];
  }
  return 2.0 * c.hamiltonian - p2 - curv.value() * j2 - 2.0 * potential(curv, s.r);
}

double trace_identity_residual(const Curvature& curv, const ClassicalState& s) {
  const ConservedSet c = evaluate_conserved(curv, s);
  double tr = 0.0, j2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    tr += c.fradkin[i][i];
    j2 += c.angular_momentum[i] * c.angular_momentum[i];
  }
  return 2.0 * c.hamiltonian - tr - curv.value() * j2;
}

TrajectoryResult integrate_trajectory(const Curvature& curv, const ClassicalState& initial,
                                      double t_end, double dt, int sample_stride) {
  if (!(dt > 0.0) || !(t_end > 0.0)) {
    throw std::invalid_argument("integrate_trajectory: need dt > 0 and t_end > 0");
  }
  validate_state(curv, initial, "integrate_trajectory");
  const double kt = curv.value();
  const double wall_r2 = curv.spherical() ? (1.0 - 1e-6) / kt : 0.0;

  const long long steps = std::llround(t_end / dt);
  if (sample_stride <= 0) {
    sample_stride = static_cast<int>(std::max<long long>(1, steps / 1000));
  }

  TrajectoryResult out;
  ClassicalState s = initial;
  Mat3 chart_to_orig = kIdentity;  // v_orig = C v_chart

  auto conserved_orig = [&](const ClassicalState& st) {
    ConservedSet c = evaluate_conserved(curv, st);
    c.angular_momentum = matvec(chart_to_orig, c.angular_momentum);
    c.noether_momentum = matvec(chart_to_orig, c.noether_momentum);
    c.fradkin = matmul(matmul(chart_to_orig, c.fradkin), transpose(chart_to_orig));
    return c;
  };

  const ConservedSet ref = conserved_orig(s);
  double j_scale = 1e-12, f_scale = 1e-12, p_scale = 1e-12;
  for (int i = 0; i < 3; ++i) {
    j_scale = std::max(j_scale, std::abs(ref.angular_momentum[i]));
    p_scale = std::max(p_scale, std::abs(ref.noether_momentum[i]));
    for (int j = 0; j < 3; ++j) f_scale = std::max(f_scale, std::abs(ref.fradkin[i][j]));
  }
  const double h_scale = std::max(1e-12, std::abs(ref.hamiltonian));

  if (curv.hyperbolic() && ref.hamiltonian >= 0.5 / std::abs(kt)) {
    out.energetically_unbound = true;
  }

  out.samples.push_back({0.0, s, ref});

  for (long long step = 0; step < steps; ++step) {
    if (curv.spherical() && s.r * s.r >= wall_r2) {
      out.wall_abort = true;
      break;
    }
    if (std::sin(s.theta) < 1e-6) {
      s = rotate_chart(s, kQuarterTurnX);
      chart_to_orig = matmul(chart_to_orig, transpose(kQuarterTurnX));
    }

    const Deriv k1 = hamilton_rhs(kt, s);
    const Deriv k2 = hamilton_rhs(kt, advance(s, k1, 0.5 * dt));
    const Deriv k3 = hamilton_rhs(kt, advance(s, k2, 0.5 * dt));
    const Deriv k4 = hamilton_rhs(kt, advance(s, k3, dt));
    s = ClassicalState{
        s.r + dt / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r),
        s.theta + dt / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta),
        s.phi + dt / 6.0 * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi),
        s.p_r + dt / 6.0 * (k1.p_r + 2.0 * k2.p_r + 2.0 * k3.p_r + k4.p_r),
        s.p_theta + dt / 6.0 * (k1.p_theta + 2.0 * k2.p_theta + 2.0 * k3.p_theta + k4.p_theta),
        s.p_phi};
    if (!finite_state(s) || s.r <= 0.0) {
      out.wall_abort = curv.spherical();
      break;
    }
    if (curv.spherical() && s.r * s.r >= wall_r2) {
      out.wall_abort = true;
      break;
    }
    out.t_reached = (step + 1) * dt;

    const ConservedSet c = conserved_orig(s);
    out.drift.hamiltonian =
        std::max(out.drift.hamiltonian, std::abs(c.hamiltonian - ref.hamiltonian) / h_scale);
    double dj = 0.0, dp = 0.0, df = 0.0;
    for (int i = 0; i < 3; ++i) {
      dj = std::max(dj, std::abs(c.angular_momentum[i] - ref.angular_momentum[i]));
      dp = std::max(dp, std::abs(c.noether_momentum[i] - ref.noether_momentum[i]));
      for (int j = 0; j < 3; ++j) {
        df = std::max(df, std::abs(c.fradkin[i][j] - ref.fradkin[i][j]));
      }
    }
    out.drift.angular_momentum = std::max(out.drift.angular_momentum, dj / j_scale);
    out.drift.noether_momentum = std::max(out.drift.noether_momentum, dp / p_scale);
    out.drift.fradkin = std::max(out.drift.fradkin, df / f_scale);

    if ((step + 1) % sample_stride == 0 || step + 1 == steps) {
      out.samples.push_back({(step + 1) * dt, s, c});
    }
  }
  return out;
}

}  // namespace curvosc
