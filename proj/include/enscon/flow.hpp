#pragma once

#include <atomic>
#include <thread>

#include "enscon/control_family.hpp"
#include "enscon/ensemble.hpp"

namespace enscon {

// process-wide worker count for per-member parallel maps (1 = sequential)
inline std::atomic<int>& thread_count() {
  static std::atomic<int> n{1};
  return n;
}

// ordered-result parallel map over ensemble members; reduction order is fixed
// so results are bitwise deterministic for any worker count
template <class F>
void parallel_for_members(int n, F&& body) {
  const int workers = std::min<int>(thread_count().load(), n);
  if (workers <= 1) {
    for (int k = 0; k < n; ++k) body(k);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (int k = next.fetch_add(1); k < n; k = next.fetch_add(1)) body(k);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct IntegrationError : std::runtime_error {
  IntegrationError(int member_, int substep_)
      : std::runtime_error("integration failure: non-finite state (member " +
                           std::to_string(member_) + ", substep " + std::to_string(substep_) + ")"),
        member(member_),
        substep(substep_) {}
  int member;
  int substep;
};

// Forward states on the substep grid plus the RK4 stage cache needed for
// exact adjoints. For sphere states, pre-projection states are kept so the
// normalization enters the reverse pass exactly.
struct TrajectoryBundle {
  ManifoldSpec manifold;
  double horizon = 0.0;
  int steps = 0;         // control intervals S
  int substeps = 0;      // RK4 substeps per interval M

  struct Stage {
    Vec k1, k2, k3;
  };
  std::vector<std::vector<Vec>> states;          // [member][0..S*M], post-projection
  std::vector<std::vector<Stage>> stages;        // [member][S*M]
  std::vector<std::vector<Vec>> pre_projection;  // sphere only, [member][S*M]
  double max_projection_drift = 0.0;             // max | |z|-1 | before projection

  int total_substeps() const { return steps * substeps; }
  double substep_width() const { return horizon / total_substeps(); }
  int members() const { return static_cast<int>(states.size()); }

  const Vec& state(int member, int substep) const { return states[member][substep]; }
  const Vec& terminal(int member) const { return states[member].back(); }
  // state at control-grid node j (j = 0..S)
  const Vec& node_state(int member, int j) const { return states[member][j * substeps]; }
  double node_time(int j) const { return horizon * j / steps; }
};

namespace detail {

inline Vec rk4_step(const ControlFamily& fam, const Vec& z, const Vec& u, double h,
                    TrajectoryBundle::Stage& stage) {
  stage.k1 = fam.drift(z, u);
  stage.k2 = fam.drift(z + 0.5 * h * stage.k1, u);
  stage.k3 = fam.drift(z + 0.5 * h * stage.k2, u);
  const Vec k4 = fam.drift(z + h * stage.k3, u);
  return z + (h / 6.0) * (stage.k1 + 2.0 * stage.k2 + 2.0 * stage.k3 + k4);
}

}  // namespace detail

// Fixed-step RK4 flow of the whole ensemble under one schedule. Sphere states
// are re-projected (z / |z|) after every substep with the drift recorded.
inline TrajectoryBundle flow_ensemble(const ControlFamily& family, const ControlSchedule& sched,
                                      const Ensemble& start, int substeps = 4) {
  if (!(start.manifold == family.manifold()))
    throw std::invalid_argument("flow_ensemble: ensemble on the wrong manifold");
  if (sched.control_count() != family.control_count())
    throw std::invalid_argument("flow_ensemble: schedule control count mismatch");
  if (substeps < 1) throw std::invalid_argument("flow_ensemble: substeps must be >= 1");

  const bool on_sphere = family.manifold().kind == ManifoldKind::Sphere2;
  const int N = start.size();
  const int S = sched.steps();
  const double h = sched.horizon / (S * substeps);

  TrajectoryBundle traj;
  traj.manifold = family.manifold();
  traj.horizon = sched.horizon;
  traj.steps = S;
  traj.substeps = substeps;
  traj.states.resize(N);
  traj.stages.resize(N);
  if (on_sphere) traj.pre_projection.resize(N);
  std::vector<double> drift(N, 0.0);

  parallel_for_members(N, [&](int k) {
    auto& zs = traj.states[k];
    auto& st = traj.stages[k];
    zs.reserve(S * substeps + 1);
    st.resize(S * substeps);
    zs.push_back(start.points[k]);
    Vec z = start.points[k];
    int idx = 0;
    for (int j = 0; j < S; ++j) {
      const Vec u = sched.values.row(j);
      for (int m = 0; m < substeps; ++m, ++idx) {
        z = detail::rk4_step(family, z, u, h, st[idx]);
        if (!z.allFinite()) throw IntegrationError(k, idx);
        if (on_sphere) {
          traj.pre_projection[k].push_back(z);
          drift[k] = std::max(drift[k], std::abs(z.norm() - 1.0));
          z /= z.norm();
        }
        zs.push_back(z);
      }
    }
  });
  for (double d : drift) traj.max_projection_drift = std::max(traj.max_projection_drift, d);
  return traj;
}

}  // namespace enscon
