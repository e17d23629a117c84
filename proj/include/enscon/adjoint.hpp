#pragma once

#include "enscon/flow.hpp"

namespace enscon {

// Output map p: coordinate projection selecting a subset of the state
// coordinates (identity = all of them).
struct OutputMap {
  std::vector<int> indices;  // empty means identity

  static OutputMap identity() { return {}; }
  static OutputMap select(std::vector<int> idx) { return {std::move(idx)}; }
  static OutputMap last_coordinate(int ambient_dim) { return {{ambient_dim - 1}}; }

  int output_dim(int ambient_dim) const {
    return indices.empty() ? ambient_dim : static_cast<int>(indices.size());
  }
  Vec apply(const Vec& z) const {
    if (indices.empty()) return z;
    Vec out(indices.size());
    for (std::size_t a = 0; a < indices.size(); ++a) out[a] = z[indices[a]];
    return out;
  }
  // v^T Dp for a row covector v in output space
  Vec pullback(const Vec& v, int ambient_dim) const {
    if (indices.empty()) return v;
    Vec out = Vec::Zero(ambient_dim);
    for (std::size_t a = 0; a < indices.size(); ++a) out[indices[a]] = v[a];
    return out;
  }
};

// Covectors psi_k on the substep grid (row covectors stored as vectors).
struct AdjointBundle {
  std::vector<std::vector<Vec>> psi;  // [member][0..S*M]

  const Vec& at(int member, int substep) const { return psi[member][substep]; }
  const Vec& initial(int member) const { return psi[member].front(); }
  const Vec& terminal(int member) const { return psi[member].back(); }
};

// Continuous Pontryagin adjoint integrated backward along the stored
// trajectory:
//   psi_k(T) = -(p(z_k(T)) - c_k)^T Dp,   psi_dot = -psi sum_i u_i Df_i(z).
// Midpoint states for the backward RK4 come from cubic Hermite interpolation
// of the stored substep states.
inline AdjointBundle adjoint_pass(const ControlFamily& family, const ControlSchedule& sched,
                                  const TrajectoryBundle& traj, const std::vector<Vec>& targets,
                                  const OutputMap& pmap) {
  const int N = traj.members();
  if (static_cast<int>(targets.size()) != N)
    throw std::invalid_argument("adjoint_pass: target count mismatch");
  const int total = traj.total_substeps();
  const double h = traj.substep_width();
  const int n = family.ambient_dim();

  AdjointBundle out;
  out.psi.resize(N);
  parallel_for_members(N, [&](int k) {
    auto& psis = out.psi[k];
    psis.assign(total + 1, Vec());
    const Vec resid = pmap.apply(traj.terminal(k)) - targets[k];
    Vec psi = -pmap.pullback(resid, n);
    psis[total] = psi;
    for (int idx = total - 1; idx >= 0; --idx) {
      const int j = idx / traj.substeps;  // control interval
      const Vec u = sched.values.row(j);
      const Vec& z1 = traj.state(k, idx + 1);  // state at the later time
      const Vec& z0 = traj.state(k, idx);
      const Vec f1 = family.drift(z1, u);
      const Vec f0 = family.drift(z0, u);
      const Vec zmid = 0.5 * (z0 + z1) + (h / 8.0) * (f1 - f0);  // t - h/2
      auto rhs = [&](const Vec& p, const Vec& z) -> Vec {
        return -(family.drift_jacobian(z, u).transpose() * p);
      };
      // RK4 with step -h
      const Vec k1 = rhs(psi, z1);
      const Vec k2 = rhs(psi - 0.5 * h * k1, zmid);
      const Vec k3 = rhs(psi - 0.5 * h * k2, zmid);
      const Vec k4 = rhs(psi - h * k3, z0);
      psi = psi - (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      psis[idx] = psi;
    }
  });
  return out;
}

// Gradient of the discretized Bolza loss
//   J = 1/2 sum_k |p(z_k(T)) - c_k|^2 + beta/2 sum_{j,i} u_{j,i}^2 dt
// by reverse-mode transposition of the exact forward RK4 steps (and of the
// sphere re-projection when present). Matches finite differences of the same
// discretization to rounding.
struct DiscreteGradient {
  Mat gradient;  // S x r
  double loss = 0.0;
};

inline DiscreteGradient discrete_gradient(const ControlFamily& family,
                                          const ControlSchedule& sched, const Ensemble& start,
                                          const std::vector<Vec>& targets, const OutputMap& pmap,
                                          double beta, int substeps = 4,
                                          const TrajectoryBundle* forward = nullptr) {
  if (beta < 0) throw std::invalid_argument("discrete_gradient: beta must be >= 0");
  const int N = start.size();
  if (static_cast<int>(targets.size()) != N)
    throw std::invalid_argument("discrete_gradient: target count mismatch");

  TrajectoryBundle local;
  if (!forward) {
    local = flow_ensemble(family, sched, start, substeps);
    forward = &local;
  }
  const TrajectoryBundle& traj = *forward;
  const bool on_sphere = family.manifold().kind == ManifoldKind::Sphere2;
  const int S = sched.steps();
  const int r = sched.control_count();
  const int n = family.ambient_dim();
  const double h = traj.substep_width();
  const double dt = sched.dt();

  DiscreteGradient out;
  out.gradient = beta * dt * sched.values;
  out.loss = 0.5 * beta * dt * sched.values.squaredNorm();

  std::vector<Mat> member_grad(N);
  std::vector<double> member_loss(N, 0.0);
  parallel_for_members(N, [&](int k) {
    Mat G = Mat::Zero(S, r);
    const Vec resid = pmap.apply(traj.terminal(k)) - targets[k];
    member_loss[k] = 0.5 * resid.squaredNorm();
    Vec lam = pmap.pullback(resid, n);  // dJ/dz, row covector
    int idx = traj.total_substeps() - 1;
    for (int j = S - 1; j >= 0; --j) {
      const Vec u = sched.values.row(j);
      for (int m = 0; m < traj.substeps; ++m, --idx) {
        if (on_sphere) {
          // z_post = z_pre / |z_pre|
          const Vec& zp = traj.pre_projection[k][idx];
          const double nz = zp.norm();
          const Vec nrm = zp / nz;
          lam = (lam - nrm.dot(lam) * nrm) / nz;
        }
        const auto& st = traj.stages[k][idx];
        const Vec& z0 = traj.state(k, idx);
        const Vec y2 = z0 + 0.5 * h * st.k1;
        const Vec y3 = z0 + 0.5 * h * st.k2;
        const Vec y4 = z0 + h * st.k3;
        auto stage_pull = [&](const Vec& kb, const Vec& y) -> Vec {
          G.row(j) += (family.generator_matrix(y).transpose() * kb).transpose();
          return family.drift_jacobian(y, u).transpose() * kb;
        };
        const Vec yb4 = stage_pull((h / 6.0) * lam, y4);
        const Vec yb3 = stage_pull((h / 3.0) * lam + h * yb4, y3);
        const Vec yb2 = stage_pull((h / 3.0) * lam + 0.5 * h * yb3, y2);
        const Vec yb1 = stage_pull((h / 6.0) * lam + 0.5 * h * yb2, z0);
        lam += yb1 + yb2 + yb3 + yb4;
      }
    }
    member_grad[k] = std::move(G);
  });
  for (int k = 0; k < N; ++k) {
    out.gradient += member_grad[k];
    out.loss += member_loss[k];
  }
  return out;
}

}  // namespace enscon
