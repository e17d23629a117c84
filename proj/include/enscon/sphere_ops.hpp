#pragma once

#include <functional>
#include <stdexcept>

#include "enscon/constants.hpp"
#include "enscon/manifold.hpp"
#include "enscon/polynomial.hpp"

namespace enscon {

inline void require_on_sphere(const Vec& x) {
  if (x.size() != 3 || std::abs(x.norm() - 1.0) > tol::kSphereOps)
    throw std::invalid_argument("sphere op: point is not on the unit sphere");
}

inline Point sphere_point(const Vec& x) { return Point(ManifoldSpec::sphere2(), x); }

// spherical gradient: grad F - <grad F, x> x, the tangential projection of
// the ambient gradient
inline TangentVector spherical_gradient(const Polynomial3& F, const Point& x) {
  require_on_sphere(x.coords);
  const Vec g = eval_gradient3(F, x.coords);
  Vec v = g - g.dot(x.coords) * x.coords;
  return TangentVector(x, std::move(v));
}

// Hamiltonian field of the area form: x cross grad(phi); tangent by
// construction
inline TangentVector hamiltonian_field(const Polynomial3& phi, const Point& x) {
  require_on_sphere(x.coords);
  const Vec g = eval_gradient3(phi, x.coords);
  Eigen::Vector3d v = Eigen::Vector3d(x.coords).cross(Eigen::Vector3d(g));
  return TangentVector(x, Vec(v));
}

// Spherical divergence of the tangential projection of an ambient field,
// computed from that field's value and Jacobian as  div X - 3 <X, x>.
// The formula recovers the intrinsic divergence when the extension is
// radially linear; for Hamiltonian fields both sides are zero identically.
template <class Field>
double spherical_divergence(const Field& X, const Point& x) {
  require_on_sphere(x.coords);
  const Vec v = X.value(x.coords);
  const Mat J = X.jacobian(x.coords);
  return J.trace() - 3.0 * v.dot(x.coords);
}

// An ambient field given by callables; adapter for analytic (non-polynomial)
// extensions in tests and oracles.
struct AnalyticField {
  std::function<Vec(const Vec&)> value_fn;
  std::function<Mat(const Vec&)> jacobian_fn;
  Vec value(const Vec& x) const { return value_fn(x); }
  Mat jacobian(const Vec& x) const { return jacobian_fn(x); }
};

}  // namespace enscon
