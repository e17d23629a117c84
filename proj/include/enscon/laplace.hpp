#pragma once

#include <functional>

#include "enscon/harmonics.hpp"
#include "enscon/quadrature.hpp"

namespace enscon {

// product quadrature on the unit sphere: Gauss-Legendre in cos(theta) times a
// uniform phi grid; exact for spherical polynomials of degree <= min(2 q_t - 1,
// q_phi - 1); weights sum to 4 pi
struct SphereQuadrature {
  std::vector<Vec> points;
  std::vector<double> weights;
  int exact_degree = 0;
};

inline SphereQuadrature sphere_quadrature(int q_theta, int q_phi) {
  const QuadratureRule gl = gauss_legendre(q_theta);
  SphereQuadrature out;
  out.exact_degree = std::min(2 * q_theta - 1, q_phi - 1);
  out.points.reserve(static_cast<std::size_t>(q_theta) * q_phi);
  out.weights.reserve(out.points.capacity());
  for (int i = 0; i < q_theta; ++i) {
    const double t = gl.nodes[i];  // cos(theta)
    const double st = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (int j = 0; j < q_phi; ++j) {
      const double ph = kTwoPi * j / q_phi;
      Vec x(3);
      x << st * std::cos(ph), st * std::sin(ph), t;
      out.points.push_back(std::move(x));
      out.weights.push_back(gl.weights[i] * kTwoPi / q_phi);
    }
  }
  return out;
}

// Truncated Laplace series: L2 projection of a function on S^2 onto the real
// solid-harmonic basis of degree <= n. Basis elements are exact harmonic
// polynomials; coefficients and norms come from the same quadrature rule, so
// projecting a truncated series reproduces it to rounding.
class LaplaceSeries {
 public:
  struct Term {
    int degree;
    HarmonicPolynomial basis;
    double norm_sq;  // L2(S^2) norm of the basis element
    double coef;
  };

  int order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }

  double eval(const Vec& x) const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.coef * t.basis.poly.eval(x);
    return s;
  }

  friend LaplaceSeries laplace_project(const std::function<double(const Vec&)>& f, int n,
                                       int quad_degree);

 private:
  int order_ = 0;
  std::vector<Term> terms_;
};

// L2(S^2) projection onto spherical harmonics of degree <= n. quad_degree = 0
// picks the default rule exact to degree 2n + 2.
inline LaplaceSeries laplace_project(const std::function<double(const Vec&)>& f, int n,
                                     int quad_degree = 0) {
  if (n < 0) throw std::invalid_argument("laplace_project: negative order");
  const int deg = quad_degree > 0 ? quad_degree : 2 * n + 2;
  if (deg < 2 * n) throw std::invalid_argument("laplace_project: quadrature degree insufficient");
  const SphereQuadrature quad = sphere_quadrature((deg + 2) / 2, deg + 1);

  LaplaceSeries series;
  series.order_ = n;
  for (int l = 0; l <= n; ++l) {
    for (auto& h : solid_harmonic_basis(l)) {
      LaplaceSeries::Term term{l, std::move(h), 0.0, 0.0};
      double inner = 0.0;
      for (std::size_t i = 0; i < quad.points.size(); ++i) {
        const double y = term.basis.poly.eval(quad.points[i]);
        term.norm_sq += quad.weights[i] * y * y;
        inner += quad.weights[i] * y * f(quad.points[i]);
      }
      term.coef = inner / term.norm_sq;
      series.terms_.push_back(std::move(term));
    }
  }
  return series;
}

}  // namespace enscon
