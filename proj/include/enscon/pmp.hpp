#pragma once

#include "enscon/problem.hpp"

namespace enscon {

// First-order optimality diagnostics along a schedule:
//   F_i(t) = sum_k psi_k(t) f_i(z_k(t)),
//   stationarity residual  sup_{j,i} | beta u_{j,i} - Fbar_i(j) |
//   maximized Hamiltonian  M(t_j) = (1 / (2 beta)) sum_i F_i(t_j)^2.
// M is conserved along extremals of the time-autonomous system, so its
// relative spread measures distance from extremality plus discretization.
struct PMPReport {
  double stationarity_residual = 0.0;
  std::vector<double> hamiltonian;  // M at the control-grid nodes t_0..t_S
  double hamiltonian_mean = 0.0;
  double hamiltonian_spread = 0.0;  // max |M - mean| / |mean|
};

inline PMPReport pmp_residual(const TrainingProblem& prob, const ControlSchedule& sched) {
  if (!(prob.beta > 0))
    throw std::invalid_argument("pmp_residual: beta must be positive (normal case only)");

  const TrajectoryBundle traj = flow_ensemble(prob.family, sched, prob.start, prob.substeps);
  const AdjointBundle adj = adjoint_pass(prob.family, sched, traj, prob.targets, prob.pmap);

  const int N = traj.members();
  const int S = sched.steps();
  const int M = traj.substeps;
  const int r = prob.family.control_count();

  // F_i at every substep node
  Mat F = Mat::Zero(traj.total_substeps() + 1, r);
  for (int idx = 0; idx <= traj.total_substeps(); ++idx)
    for (int k = 0; k < N; ++k)
      F.row(idx) += (prob.family.generator_matrix(traj.state(k, idx)).transpose() *
                     adj.at(k, idx))
                        .transpose();

  PMPReport rep;
  for (int j = 0; j < S; ++j) {
    // trapezoid mean of F over the interval's substep nodes
    Vec mean = Vec::Zero(r);
    for (int m = 0; m <= M; ++m) {
      const double w = (m == 0 || m == M) ? 0.5 : 1.0;
      mean += w * F.row(j * M + m).transpose();
    }
    mean /= double(M);
    for (int i = 0; i < r; ++i)
      rep.stationarity_residual =
          std::max(rep.stationarity_residual, std::abs(prob.beta * sched.values(j, i) - mean[i]));
  }

  rep.hamiltonian.resize(S + 1);
  for (int j = 0; j <= S; ++j)
    rep.hamiltonian[j] = 0.5 / prob.beta * F.row(j * M).squaredNorm();
  double mean = 0.0;
  for (double m : rep.hamiltonian) mean += m;
  mean /= rep.hamiltonian.size();
  rep.hamiltonian_mean = mean;
  if (mean != 0.0)
    for (double m : rep.hamiltonian)
      rep.hamiltonian_spread = std::max(rep.hamiltonian_spread, std::abs(m - mean) / std::abs(mean));
  return rep;
}

}  // namespace enscon
