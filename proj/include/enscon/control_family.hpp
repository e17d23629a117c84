#pragma once

#include <memory>
#include <string>

#include "enscon/harmonics.hpp"
#include "enscon/vector_field.hpp"

namespace enscon {

enum class FamilyKind { GH, Torus1, TorusD, SphereSymp, SphereFull, ProductGH };

// One of the named control-affine systems. Exposes the generator fields both
// symbolically (exact brackets, Jacobians at any depth) and through
// closed-form drift evaluations used by the integrator hot path.
//
// Generator ordering:
//   GH(d):        f_i = e^{-gamma} d/dz_i (i<d), then g_i = d/dz_i
//   Torus1:       d/dphi, sin(phi) d/dphi, sin(2 phi) d/dphi
//   TorusD(d):    f0_i, f1_i, f2_i blocks, then g_i = (sum_j sin phi_j) d/dphi_i
//   SphereSymp:   ham l1, ham l2, ham l3, ham q, ham c
//   SphereFull:   SphereSymp plus grad_S l3, grad_S q
//   ProductGH:    GH(d+s) on R^{d+s} = M x C, with base point nu in R^s
class ControlFamily {
 public:
  static ControlFamily gh(int d) { return ControlFamily(FamilyKind::GH, d, 0, Vec()); }
  static ControlFamily torus1() { return ControlFamily(FamilyKind::Torus1, 1, 0, Vec()); }
  static ControlFamily torus_d(int d) { return ControlFamily(FamilyKind::TorusD, d, 0, Vec()); }
  static ControlFamily sphere_symp() {
    return ControlFamily(FamilyKind::SphereSymp, 2, 0, Vec());
  }
  static ControlFamily sphere_full() {
    return ControlFamily(FamilyKind::SphereFull, 2, 0, Vec());
  }
  static ControlFamily product_gh(int d, int s, Vec nu) {
    if (nu.size() != s) throw std::invalid_argument("product_gh: |nu| != s");
    return ControlFamily(FamilyKind::ProductGH, d, s, std::move(nu));
  }

  // "gh:2", "torus:1", "torus:3", "sphere:symp", "sphere:full", "product-gh:2,1"
  static ControlFamily parse(const std::string& id, Vec nu = Vec());

  FamilyKind kind() const { return kind_; }
  ManifoldSpec manifold() const { return manifold_; }
  int control_count() const { return r_; }
  int ambient_dim() const { return manifold_.ambient_dim(); }
  const Vec& base_point() const { return nu_; }
  std::string id() const;

  const FieldAny& generator(int i) const {
    if (i < 0 || i >= r_) throw std::out_of_range("ControlFamily: generator index");
    return gens_[i];
  }

  // sum_i u_i f_i(z)
  Vec drift(const Vec& z, const Vec& u) const;
  // d/dz of the drift
  Mat drift_jacobian(const Vec& z, const Vec& u) const;
  // f_i(z)
  Vec generator_value(int i, const Vec& z) const;
  // all generators side by side: columns f_1(z) .. f_r(z)
  Mat generator_matrix(const Vec& z) const;

 private:
  ControlFamily(FamilyKind kind, int d, int s, Vec nu);
  void build_generators();

  FamilyKind kind_;
  int d_;
  int s_;
  int r_ = 0;
  ManifoldSpec manifold_;
  Vec nu_;
  std::vector<FieldAny> gens_;
};

// --- implementation ---------------------------------------------------------

inline ControlFamily::ControlFamily(FamilyKind kind, int d, int s, Vec nu)
    : kind_(kind), d_(d), s_(s), manifold_(ManifoldSpec::euclidean(1)), nu_(std::move(nu)) {
  switch (kind_) {
    case FamilyKind::GH:
      manifold_ = ManifoldSpec::euclidean(d_);
      r_ = 2 * d_;
      break;
    case FamilyKind::Torus1:
      manifold_ = ManifoldSpec::torus(1);
      r_ = 3;
      break;
    case FamilyKind::TorusD:
      manifold_ = ManifoldSpec::torus(d_);
      r_ = 4 * d_;
      break;
    case FamilyKind::SphereSymp:
      manifold_ = ManifoldSpec::sphere2();
      r_ = 5;
      break;
    case FamilyKind::SphereFull:
      manifold_ = ManifoldSpec::sphere2();
      r_ = 7;
      break;
    case FamilyKind::ProductGH:
      manifold_ = ManifoldSpec::product(d_, s_);
      r_ = 2 * (d_ + s_);
      break;
  }
  build_generators();
}

inline void ControlFamily::build_generators() {
  gens_.clear();
  const int n = ambient_dim();
  switch (kind_) {
    case FamilyKind::GH:
    case FamilyKind::ProductGH: {
      for (int i = 0; i < n; ++i) {  // f_i = e^{-gamma} d/dz_i
        std::vector<GaussFun> comp(n, GaussFun::constant(n, 0.0));
        comp[i] = GaussFun::gaussian(PolyD::constant(n, 1.0), 1);
        gens_.emplace_back(GaussField(manifold_, std::move(comp)));
      }
      for (int i = 0; i < n; ++i) {  // g_i = d/dz_i
        std::vector<GaussFun> comp(n, GaussFun::constant(n, 0.0));
        comp[i] = GaussFun::constant(n, 1.0);
        gens_.emplace_back(GaussField(manifold_, std::move(comp)));
      }
      break;
    }
    case FamilyKind::Torus1: {
      auto mk = [&](TrigFun f) {
        gens_.emplace_back(TrigField(manifold_, {std::move(f)}));
      };
      mk(TrigFun::constant(1, 1.0));
      mk(TrigFun::sinusoid(1, 0, 1, true));
      mk(TrigFun::sinusoid(1, 0, 2, true));
      break;
    }
    case FamilyKind::TorusD: {
      auto unit = [&](int i, TrigFun f) {
        std::vector<TrigFun> comp(n, TrigFun(n));  // zero components
        comp[i] = std::move(f);
        return TrigField(manifold_, std::move(comp));
      };
      for (int i = 0; i < n; ++i) gens_.emplace_back(unit(i, TrigFun::constant(n, 1.0)));
      for (int i = 0; i < n; ++i) gens_.emplace_back(unit(i, TrigFun::sinusoid(n, i, 1, true)));
      for (int i = 0; i < n; ++i) gens_.emplace_back(unit(i, TrigFun::sinusoid(n, i, 2, true)));
      for (int i = 0; i < n; ++i) {  // g_i = (sum_j sin phi_j) d/dphi_i
        TrigFun s(n);
        s = TrigFun::sinusoid(n, 0, 1, true);
        for (int j = 1; j < n; ++j) s = s + TrigFun::sinusoid(n, j, 1, true);
        gens_.emplace_back(unit(i, std::move(s)));
      }
      break;
    }
    case FamilyKind::SphereSymp:
    case FamilyKind::SphereFull: {
      gens_.emplace_back(hamiltonian_field3(harmonic_l1().poly));
      gens_.emplace_back(hamiltonian_field3(harmonic_l2().poly));
      gens_.emplace_back(hamiltonian_field3(harmonic_l3().poly));
      gens_.emplace_back(hamiltonian_field3(harmonic_q().poly));
      gens_.emplace_back(hamiltonian_field3(harmonic_c().poly));
      if (kind_ == FamilyKind::SphereFull) {
        gens_.emplace_back(spherical_gradient_field(harmonic_l3().poly));
        gens_.emplace_back(spherical_gradient_field(harmonic_q().poly));
      }
      break;
    }
  }
}

inline Vec ControlFamily::drift(const Vec& z, const Vec& u) const {
  if (u.size() != r_) throw std::invalid_argument("drift: control size mismatch");
  const int n = ambient_dim();
  switch (kind_) {
    case FamilyKind::GH:
    case FamilyKind::ProductGH: {
      const double w = std::exp(-0.5 * z.squaredNorm());
      return w * u.head(n) + u.tail(n);
    }
    case FamilyKind::Torus1: {
      Vec out(1);
      out[0] = u[0] + u[1] * std::sin(z[0]) + u[2] * std::sin(2 * z[0]);
      return out;
    }
    case FamilyKind::TorusD: {
      double sum_sin = 0.0;
      for (int j = 0; j < n; ++j) sum_sin += std::sin(z[j]);
      Vec out(n);
      for (int k = 0; k < n; ++k)
        out[k] = u[k] + u[n + k] * std::sin(z[k]) + u[2 * n + k] * std::sin(2 * z[k]) +
                 u[3 * n + k] * sum_sin;
      return out;
    }
    default: {  // sphere families: weighted sum of polynomial generators
      Vec out = Vec::Zero(n);
      for (int i = 0; i < r_; ++i)
        if (u[i] != 0.0) out += u[i] * gens_[i].value(z);
      return out;
    }
  }
}

inline Mat ControlFamily::drift_jacobian(const Vec& z, const Vec& u) const {
  const int n = ambient_dim();
  switch (kind_) {
    case FamilyKind::GH:
    case FamilyKind::ProductGH: {
      const double w = std::exp(-0.5 * z.squaredNorm());
      return -w * u.head(n) * z.transpose();
    }
    case FamilyKind::Torus1: {
      Mat J(1, 1);
      J(0, 0) = u[1] * std::cos(z[0]) + 2 * u[2] * std::cos(2 * z[0]);
      return J;
    }
    case FamilyKind::TorusD: {
      Mat J = Mat::Zero(n, n);
      for (int k = 0; k < n; ++k) {
        J(k, k) = u[n + k] * std::cos(z[k]) + 2 * u[2 * n + k] * std::cos(2 * z[k]);
        for (int b = 0; b < n; ++b) J(k, b) += u[3 * n + k] * std::cos(z[b]);
      }
      return J;
    }
    default: {
      Mat J = Mat::Zero(n, n);
      for (int i = 0; i < r_; ++i)
        if (u[i] != 0.0) J += u[i] * gens_[i].jacobian(z);
      return J;
    }
  }
}

inline Vec ControlFamily::generator_value(int i, const Vec& z) const {
  if (i < 0 || i >= r_) throw std::out_of_range("ControlFamily: generator index");
  return gens_[i].value(z);
}

inline Mat ControlFamily::generator_matrix(const Vec& z) const {
  const int n = ambient_dim();
  Mat G = Mat::Zero(n, r_);
  switch (kind_) {
    case FamilyKind::GH:
    case FamilyKind::ProductGH: {
      const double w = std::exp(-0.5 * z.squaredNorm());
      G.leftCols(n) = w * Mat::Identity(n, n);
      G.rightCols(n) = Mat::Identity(n, n);
      break;
    }
    case FamilyKind::Torus1:
      G(0, 0) = 1.0;
      G(0, 1) = std::sin(z[0]);
      G(0, 2) = std::sin(2 * z[0]);
      break;
    case FamilyKind::TorusD: {
      double sum_sin = 0.0;
      for (int j = 0; j < n; ++j) sum_sin += std::sin(z[j]);
      for (int k = 0; k < n; ++k) {
        G(k, k) = 1.0;
        G(k, n + k) = std::sin(z[k]);
        G(k, 2 * n + k) = std::sin(2 * z[k]);
        G(k, 3 * n + k) = sum_sin;
      }
      break;
    }
    default:
      for (int i = 0; i < r_; ++i) G.col(i) = gens_[i].value(z);
  }
  return G;
}

// the fields-module entry point: generator as a tangent vector at a point
inline TangentVector eval_generator(const ControlFamily& family, int i, const Point& x) {
  if (!(x.manifold == family.manifold()))
    throw std::invalid_argument("eval_generator: point on the wrong manifold");
  return TangentVector(x, family.generator_value(i, x.coords));
}

inline std::string ControlFamily::id() const {
  switch (kind_) {
    case FamilyKind::GH: return "gh:" + std::to_string(d_);
    case FamilyKind::Torus1: return "torus:1";
    case FamilyKind::TorusD: return "torus:" + std::to_string(d_);
    case FamilyKind::SphereSymp: return "sphere:symp";
    case FamilyKind::SphereFull: return "sphere:full";
    case FamilyKind::ProductGH:
      return "product-gh:" + std::to_string(d_) + "," + std::to_string(s_);
  }
  return "?";
}

inline ControlFamily ControlFamily::parse(const std::string& id, Vec nu) {
  const auto colon = id.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("bad family id: " + id);
  const std::string head = id.substr(0, colon), tail = id.substr(colon + 1);
  if (head == "gh") return gh(std::stoi(tail));
  if (head == "torus") {
    const int d = std::stoi(tail);
    return d == 1 ? torus1() : torus_d(d);
  }
  if (head == "sphere") {
    if (tail == "symp") return sphere_symp();
    if (tail == "full") return sphere_full();
    throw std::invalid_argument("bad sphere family: " + id);
  }
  if (head == "product-gh") {
    const auto comma = tail.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad family id: " + id);
    const int d = std::stoi(tail.substr(0, comma));
    const int s = std::stoi(tail.substr(comma + 1));
    if (nu.size() == 0) nu = Vec::Zero(s);
    return product_gh(d, s, std::move(nu));
  }
  throw std::invalid_argument("unknown family id: " + id);
}

}  // namespace enscon
