#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "enscon/constants.hpp"

namespace enscon {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class ManifoldKind { Euclidean, Torus, Sphere2, Product };

// Where states live. Product is Euclidean(d) x Euclidean(s), the M x C
// construction used for classification; it behaves like Euclidean(d+s)
// but remembers the split.
struct ManifoldSpec {
  ManifoldKind kind = ManifoldKind::Euclidean;
  int d = 1;  // base dimension (Euclidean/Torus) or first factor of Product
  int s = 0;  // second factor of Product

  static ManifoldSpec euclidean(int d) {
    require_dim(d);
    return {ManifoldKind::Euclidean, d, 0};
  }
  static ManifoldSpec torus(int d) {
    require_dim(d);
    return {ManifoldKind::Torus, d, 0};
  }
  static ManifoldSpec sphere2() { return {ManifoldKind::Sphere2, 2, 0}; }
  static ManifoldSpec product(int d, int s) {
    require_dim(d);
    require_dim(s);
    return {ManifoldKind::Product, d, s};
  }

  // number of stored coordinates
  int ambient_dim() const {
    switch (kind) {
      case ManifoldKind::Euclidean: return d;
      case ManifoldKind::Torus: return d;
      case ManifoldKind::Sphere2: return 3;
      case ManifoldKind::Product: return d + s;
    }
    return d;
  }
  // intrinsic dimension
  int dim() const { return kind == ManifoldKind::Sphere2 ? 2 : ambient_dim(); }

  bool operator==(const ManifoldSpec& o) const {
    return kind == o.kind && d == o.d && s == o.s;
  }

  std::string str() const {
    switch (kind) {
      case ManifoldKind::Euclidean: return "R^" + std::to_string(d);
      case ManifoldKind::Torus: return "T^" + std::to_string(d);
      case ManifoldKind::Sphere2: return "S^2";
      case ManifoldKind::Product: return "R^" + std::to_string(d) + " x R^" + std::to_string(s);
    }
    return "?";
  }

 private:
  static void require_dim(int d) {
    if (d < 1) throw std::invalid_argument("ManifoldSpec: dimension must be positive");
  }
};

inline double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

// A point subject to its manifold constraint. Torus coordinates are stored
// reduced to [0, 2pi); sphere points must be unit up to tol::kSphereUnit.
struct Point {
  ManifoldSpec manifold;
  Vec coords;

  Point(ManifoldSpec m, Vec c) : manifold(m), coords(std::move(c)) {
    if (coords.size() != manifold.ambient_dim())
      throw std::invalid_argument("Point: coordinate count does not match manifold");
    if (manifold.kind == ManifoldKind::Sphere2) {
      if (std::abs(coords.norm() - 1.0) > tol::kSphereUnit)
        throw std::invalid_argument("Point: sphere point is not unit length");
    } else if (manifold.kind == ManifoldKind::Torus) {
      for (int i = 0; i < coords.size(); ++i) coords[i] = wrap_angle(coords[i]);
    }
  }
};

// Ambient-component tangent vector. Sphere tangency is enforced relative to
// the vector's own magnitude.
struct TangentVector {
  Point base;
  Vec components;

  TangentVector(Point b, Vec v) : base(std::move(b)), components(std::move(v)) {
    if (components.size() != base.coords.size())
      throw std::invalid_argument("TangentVector: component count mismatch");
    if (base.manifold.kind == ManifoldKind::Sphere2) {
      const double n = components.norm();
      if (n > 0 && std::abs(components.dot(base.coords)) > tol::kSphereTangent * n)
        throw std::invalid_argument("TangentVector: not tangent to the sphere");
    }
  }
};

// distance used for ensemble distinctness checks
inline double manifold_distance(const ManifoldSpec& m, const Vec& a, const Vec& b) {
  switch (m.kind) {
    case ManifoldKind::Torus: {
      double s2 = 0.0;
      for (int i = 0; i < a.size(); ++i) {
        double da = std::abs(wrap_angle(a[i]) - wrap_angle(b[i]));
        da = std::min(da, kTwoPi - da);
        s2 += da * da;
      }
      return std::sqrt(s2);
    }
    default:
      return (a - b).norm();
  }
}

// Compact sampling domain for seminorms and truncation reports. Bounds are
// per stored coordinate; for Sphere2 the two coordinates are the spherical
// angles (theta, phi) of the sample grid.
struct CompactBox {
  ManifoldSpec manifold;
  std::vector<std::pair<double, double>> bounds;
  std::vector<int> resolution;

  CompactBox(ManifoldSpec m, std::vector<std::pair<double, double>> b, std::vector<int> res)
      : manifold(m), bounds(std::move(b)), resolution(std::move(res)) {
    const std::size_t naxes = bounds.size();
    if (naxes == 0 || resolution.size() != naxes)
      throw std::invalid_argument("CompactBox: empty or mismatched axes");
    for (std::size_t i = 0; i < naxes; ++i) {
      if (resolution[i] < 2) throw std::invalid_argument("CompactBox: resolution must be >= 2");
      if (!(bounds[i].first < bounds[i].second))
        throw std::invalid_argument("CompactBox: empty bounds");
    }
  }

  // full-range torus box
  static CompactBox full_torus(int d, int res) {
    std::vector<std::pair<double, double>> b(d, {0.0, kTwoPi});
    return CompactBox(ManifoldSpec::torus(d), b, std::vector<int>(d, res));
  }
  static CompactBox cube(int d, double lo, double hi, int res) {
    std::vector<std::pair<double, double>> b(d, {lo, hi});
    return CompactBox(ManifoldSpec::euclidean(d), b, std::vector<int>(d, res));
  }
  static CompactBox whole_sphere(int res_theta, int res_phi) {
    return CompactBox(ManifoldSpec::sphere2(),
                      {{0.0, std::numbers::pi}, {0.0, kTwoPi}},
                      {res_theta, res_phi});
  }

  std::size_t grid_size() const {
    std::size_t n = 1;
    for (int r : resolution) n *= static_cast<std::size_t>(r);
    return n;
  }

  // Enumerate grid points in ambient coordinates (sphere boxes produce unit
  // vectors from the angle grid).
  template <class F>
  void for_each_grid_point(F&& f) const {
    const int naxes = static_cast<int>(bounds.size());
    std::vector<int> idx(naxes, 0);
    Vec u(naxes);
    while (true) {
      for (int i = 0; i < naxes; ++i) {
        const auto [lo, hi] = bounds[i];
        u[i] = lo + (hi - lo) * idx[i] / double(resolution[i] - 1);
      }
      if (manifold.kind == ManifoldKind::Sphere2) {
        Vec x(3);
        const double th = u[0], ph = u[1];
        x << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th);
        f(x);
      } else {
        f(u);
      }
      int axis = naxes - 1;
      while (axis >= 0 && ++idx[axis] == resolution[axis]) idx[axis--] = 0;
      if (axis < 0) break;
    }
  }
};

}  // namespace enscon
