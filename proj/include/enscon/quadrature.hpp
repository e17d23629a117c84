#pragma once

#include <Eigen/Eigenvalues>
#include <functional>

#include "enscon/manifold.hpp"

namespace enscon {

struct QuadratureRule {
  Vec nodes;
  Vec weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

namespace detail {

// Gauss rule from the Jacobi matrix of an orthonormal recurrence
//   x p_m = c_{m+1} p_{m+1} + a_m p_m + c_m p_{m-1},   p_0 = 1/sqrt(mass).
// Nodes are the eigenvalues (computed without eigenvectors, so large rules
// stay cheap); weights come from the Christoffel function
//   w_i = 1 / sum_{m<Q} p_m(x_i)^2,
// evaluated with dynamic rescaling so edge-node underflow degrades gracefully
// to zero weights instead of overflowing.
inline QuadratureRule gauss_rule(int q, double mass, const std::function<double(int)>& offdiag) {
  if (q < 1) throw std::invalid_argument("gauss_rule: need at least one node");
  Vec diag = Vec::Zero(q), sub(q - 1 > 0 ? q - 1 : 0);
  for (int m = 1; m < q; ++m) sub[m - 1] = offdiag(m);
  Eigen::SelfAdjointEigenSolver<Mat> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  QuadratureRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights = Vec::Zero(q);
  const double p0 = 1.0 / std::sqrt(mass);
  for (int i = 0; i < q; ++i) {
    const double x = rule.nodes[i];
    double pm1 = 0.0, p = p0, sum = p0 * p0, scale = 1.0;
    for (int m = 0; m + 1 < q; ++m) {
      const double cm = m >= 1 ? offdiag(m) : 0.0;
      const double pn = (x * p - cm * pm1) / offdiag(m + 1);
      pm1 = p;
      p = pn;
      sum += p * p;
      if (std::abs(p) > 1e140) {
        constexpr double s = 1e-140;
        p *= s;
        pm1 *= s;
        sum *= s * s;
        scale *= s;
      }
    }
    rule.weights[i] = (scale * scale) / sum;
  }
  return rule;
}

}  // namespace detail

// Gauss-Hermite rule for the probabilists' weight e^{-x^2/2}:
//   sum_i w_i f(x_i)  ~=  integral f(x) e^{-x^2/2} dx,
// exact for polynomials of degree <= 2q - 1.
inline QuadratureRule gauss_hermite(int q) {
  return detail::gauss_rule(q, std::sqrt(2.0 * std::numbers::pi),
                            [](int m) { return std::sqrt(double(m)); });
}

// Gauss-Legendre rule on [-1, 1], exact for polynomials of degree <= 2q - 1.
inline QuadratureRule gauss_legendre(int q) {
  return detail::gauss_rule(q, 2.0,
                            [](int m) { return m / std::sqrt(4.0 * m * m - 1.0); });
}

}  // namespace enscon
