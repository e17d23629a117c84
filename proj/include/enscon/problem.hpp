#pragma once

#include "enscon/adjoint.hpp"

namespace enscon {

// One training/steering instance of the Bolza problem.
struct TrainingProblem {
  ControlFamily family;
  Ensemble start;
  std::vector<Vec> targets;  // c(x^k) in R^s
  OutputMap pmap;
  double beta = 1e-4;
  double horizon = 1.0;  // T
  int steps = 20;        // S
  int substeps = 4;      // RK4 substeps per interval

  TrainingProblem(ControlFamily fam, Ensemble γ0, std::vector<Vec> tg, OutputMap p, double b,
                  double T, int S, int M = 4)
      : family(std::move(fam)),
        start(std::move(γ0)),
        targets(std::move(tg)),
        pmap(std::move(p)),
        beta(b),
        horizon(T),
        steps(S),
        substeps(M) {
    if (static_cast<int>(targets.size()) != start.size())
      throw std::invalid_argument("TrainingProblem: one target per ensemble member required");
    const int sdim = pmap.output_dim(family.ambient_dim());
    for (const Vec& t : targets)
      if (t.size() != sdim)
        throw std::invalid_argument("TrainingProblem: target dimension != output dimension");
    if (beta < 0) throw std::invalid_argument("TrainingProblem: beta must be >= 0");
    if (!(horizon > 0) || steps < 1 || substeps < 1)
      throw std::invalid_argument("TrainingProblem: bad discretization");
  }

  ControlSchedule zero_schedule() const {
    return ControlSchedule::zero(horizon, steps, family.control_count());
  }
};

// J = 1/2 sum_k |p(z_k(T)) - c_k|^2 + beta/2 integral sum_i u_i^2 dt
inline double loss(const TrainingProblem& prob, const ControlSchedule& sched) {
  const TrajectoryBundle traj = flow_ensemble(prob.family, sched, prob.start, prob.substeps);
  double J = 0.5 * prob.beta * sched.dt() * sched.values.squaredNorm();
  for (int k = 0; k < prob.start.size(); ++k)
    J += 0.5 * (prob.pmap.apply(traj.terminal(k)) - prob.targets[k]).squaredNorm();
  return J;
}

// per-member terminal discrepancies |p(z_k(T)) - c_k|
inline std::vector<double> terminal_discrepancies(const TrainingProblem& prob,
                                                  const ControlSchedule& sched) {
  const TrajectoryBundle traj = flow_ensemble(prob.family, sched, prob.start, prob.substeps);
  std::vector<double> out(prob.start.size());
  for (int k = 0; k < prob.start.size(); ++k)
    out[k] = (prob.pmap.apply(traj.terminal(k)) - prob.targets[k]).norm();
  return out;
}

}  // namespace enscon
