#pragma once

#include <random>

#include "enscon/problem.hpp"

namespace enscon {

struct OptimizerConfig {
  int max_iterations = 500;
  double initial_step = 1.0;
  double armijo_c1 = 1e-4;        // sufficient-decrease constant, in (0,1)
  double backtrack_factor = 0.5;  // step shrink per rejected trial
  int max_backtracks = 60;
  double grad_tolerance = 1e-10;
  std::uint64_t seed = 0;
  double init_amplitude = 1e-2;   // i.i.d. uniform noise on the start schedule

  void validate() const {
    if (max_iterations < 0 || !(initial_step > 0) || !(grad_tolerance > 0) ||
        !(init_amplitude >= 0) || max_backtracks < 1)
      throw std::invalid_argument("OptimizerConfig: parameters must be positive");
    if (!(armijo_c1 > 0 && armijo_c1 < 1) || !(backtrack_factor > 0 && backtrack_factor < 1))
      throw std::invalid_argument("OptimizerConfig: c1 and backtrack factor must be in (0,1)");
  }
};

struct IterationRecord {
  int iteration;
  double loss;
  double grad_norm;
  double step;
};

struct OptimizeResult {
  ControlSchedule schedule;
  std::vector<IterationRecord> history;
  double final_loss = 0.0;
  bool converged = false;           // hit the gradient tolerance
  bool line_search_failed = false;  // no Armijo step within max_backtracks
};

// Monotone gradient descent with Armijo backtracking. The trial step is the
// Barzilai-Borwein spectral step (alternating the two BB formulas), which the
// line search then safeguards; accepted iterations strictly decrease the loss.
inline OptimizeResult optimize(const TrainingProblem& prob, const OptimizerConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> noise(-cfg.init_amplitude, cfg.init_amplitude);

  const int S = prob.steps, r = prob.family.control_count();
  Mat U(S, r);
  for (int j = 0; j < S; ++j)
    for (int i = 0; i < r; ++i) U(j, i) = noise(rng);

  auto eval_grad = [&](const Mat& V) {
    return discrete_gradient(prob.family, ControlSchedule(prob.horizon, V), prob.start,
                             prob.targets, prob.pmap, prob.beta, prob.substeps);
  };
  auto eval_loss = [&](const Mat& V) { return loss(prob, ControlSchedule(prob.horizon, V)); };

  DiscreteGradient cur = eval_grad(U);
  OptimizeResult res{ControlSchedule(prob.horizon, U), {}, cur.loss};
  res.history.push_back({0, cur.loss, cur.gradient.norm(), 0.0});

  double step = cfg.initial_step;
  Mat Uprev, Gprev;
  bool have_prev = false;

  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const double gn2 = cur.gradient.squaredNorm();
    const double gn = std::sqrt(gn2);
    if (gn <= cfg.grad_tolerance) {
      res.converged = true;
      break;
    }
    if (have_prev) {
      const Mat sM = U - Uprev;
      const Mat yM = cur.gradient - Gprev;
      const double sy = (sM.array() * yM.array()).sum();
      if (sy > 0) {
        const double bb = (it % 2 == 0) ? sM.squaredNorm() / sy : sy / yM.squaredNorm();
        step = std::clamp(bb, 1e-10, 1e8);
      }
    }
    double st = step;
    bool accepted = false;
    Mat Utrial;
    double Jtrial = 0.0;
    for (int bt = 0; bt < cfg.max_backtracks; ++bt) {
      Utrial = U - st * cur.gradient;
      Jtrial = eval_loss(Utrial);
      if (Jtrial <= cur.loss - cfg.armijo_c1 * st * gn2) {
        accepted = true;
        break;
      }
      st *= cfg.backtrack_factor;
    }
    if (!accepted) {
      res.line_search_failed = true;
      break;
    }
    Uprev = U;
    Gprev = cur.gradient;
    have_prev = true;
    U = Utrial;
    cur = eval_grad(U);
    res.history.push_back({it, cur.loss, cur.gradient.norm(), st});
  }

  res.schedule = ControlSchedule(prob.horizon, U);
  res.final_loss = cur.loss;
  return res;
}

}  // namespace enscon
