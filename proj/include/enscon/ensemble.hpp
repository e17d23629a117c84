#pragma once

#include <vector>

#include "enscon/constants.hpp"
#include "enscon/manifold.hpp"

namespace enscon {

// N pairwise-distinct points evolved by a single control signal.
struct Ensemble {
  ManifoldSpec manifold;
  std::vector<Vec> points;

  Ensemble(ManifoldSpec m, std::vector<Vec> pts) : manifold(m), points(std::move(pts)) {
    if (points.empty()) throw std::invalid_argument("Ensemble: empty");
    for (const Vec& p : points)
      if (p.size() != manifold.ambient_dim())
        throw std::invalid_argument("Ensemble: point dimension mismatch");
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t j = i + 1; j < points.size(); ++j)
        if (manifold_distance(manifold, points[i], points[j]) < tol::kEnsembleSeparation)
          throw std::invalid_argument("Ensemble: members are not pairwise distinct");
  }

  int size() const { return static_cast<int>(points.size()); }
};

// Piecewise-constant control u(t) on a uniform grid over [0, T].
struct ControlSchedule {
  double horizon;   // T
  Mat values;       // steps x r

  ControlSchedule(double T, Mat v) : horizon(T), values(std::move(v)) {
    if (!(horizon > 0)) throw std::invalid_argument("ControlSchedule: T must be positive");
    if (values.rows() < 1) throw std::invalid_argument("ControlSchedule: need at least one step");
  }

  static ControlSchedule zero(double T, int steps, int r) {
    return ControlSchedule(T, Mat::Zero(steps, r));
  }

  int steps() const { return static_cast<int>(values.rows()); }
  int control_count() const { return static_cast<int>(values.cols()); }
  double dt() const { return horizon / steps(); }
};

}  // namespace enscon
