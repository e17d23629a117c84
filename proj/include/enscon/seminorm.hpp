#pragma once

#include "enscon/vector_field.hpp"

namespace enscon {

// Grid lower bound of the seminorm ||X||_{r,K}: the sup over the sample grid
// of the Euclidean field magnitude, plus (for r = 1) the sup of the Jacobian
// max-entry norm. Derivative orders above 1 are not provided.
template <class Field>
double seminorm(const Field& X, const CompactBox& K, int order) {
  if (order < 0 || order > 1) throw std::invalid_argument("seminorm: order must be 0 or 1");
  double sup_value = 0.0, sup_jac = 0.0;
  K.for_each_grid_point([&](const Vec& x) {
    sup_value = std::max(sup_value, X.value(x).norm());
    if (order >= 1) {
      const Mat J = X.jacobian(x);
      sup_jac = std::max(sup_jac, J.cwiseAbs().maxCoeff());
    }
  });
  return sup_value + sup_jac;
}

}  // namespace enscon
