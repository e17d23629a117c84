#pragma once

#include <variant>
#include <vector>

#include "enscon/scalar_algebras.hpp"

namespace enscon {

// Vector field whose components live in one of the closed scalar algebras.
// Partial derivatives of every component are materialized at construction, so
// values and Jacobians are analytic and brackets of brackets stay exact.
template <class A>
class SymField {
 public:
  SymField(ManifoldSpec m, std::vector<A> components)
      : manifold_(m), comp_(std::move(components)) {
    const int n = static_cast<int>(comp_.size());
    partials_.reserve(n);
    for (const A& c : comp_) {
      std::vector<A> row;
      row.reserve(n);
      for (int a = 0; a < n; ++a) row.push_back(c.partial(a));
      partials_.push_back(std::move(row));
    }
  }

  const ManifoldSpec& manifold() const { return manifold_; }
  int ambient_dim() const { return static_cast<int>(comp_.size()); }
  const std::vector<A>& components() const { return comp_; }

  Vec value(const Vec& x) const {
    Vec v(ambient_dim());
    for (int i = 0; i < v.size(); ++i) v[i] = comp_[i].eval(x);
    return v;
  }

  Mat jacobian(const Vec& x) const {
    const int n = ambient_dim();
    Mat J(n, n);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a) J(i, a) = partials_[i][a].eval(x);
    return J;
  }

  // [X, Y]_c = sum_a ( X_a dY_c/dx_a - Y_a dX_c/dx_a )
  friend SymField bracket(const SymField& X, const SymField& Y) {
    const int n = X.ambient_dim();
    std::vector<A> out;
    out.reserve(n);
    for (int c = 0; c < n; ++c) {
      A acc = A::constant(X.comp_[0].nvars(), 0.0);
      for (int a = 0; a < n; ++a)
        acc = acc + X.comp_[a] * Y.partials_[c][a] - Y.comp_[a] * X.partials_[c][a];
      out.push_back(std::move(acc));
    }
    return SymField(X.manifold_, std::move(out));
  }

 private:
  ManifoldSpec manifold_;
  std::vector<A> comp_;
  std::vector<std::vector<A>> partials_;
};

using GaussField = SymField<GaussFun>;
using TrigField = SymField<TrigFun>;
using PolyField = SymField<PolyFun>;

// Type-erased evaluable field; brackets are defined within one algebra only.
class FieldAny {
 public:
  FieldAny(GaussField f) : field_(std::move(f)) {}
  FieldAny(TrigField f) : field_(std::move(f)) {}
  FieldAny(PolyField f) : field_(std::move(f)) {}

  const ManifoldSpec& manifold() const {
    return std::visit([](const auto& f) -> const ManifoldSpec& { return f.manifold(); }, field_);
  }
  Vec value(const Vec& x) const {
    return std::visit([&](const auto& f) { return f.value(x); }, field_);
  }
  Mat jacobian(const Vec& x) const {
    return std::visit([&](const auto& f) { return f.jacobian(x); }, field_);
  }

  friend FieldAny lie_bracket(const FieldAny& X, const FieldAny& Y) {
    if (!(X.manifold() == Y.manifold()))
      throw std::invalid_argument("lie_bracket: fields live on different manifolds");
    return std::visit(
        [&](const auto& fx) -> FieldAny {
          using T = std::decay_t<decltype(fx)>;
          const auto* fy = std::get_if<T>(&Y.field_);
          if (!fy) throw std::invalid_argument("lie_bracket: incompatible field algebras");
          return FieldAny(bracket(fx, *fy));
        },
        X.field_);
  }

 private:
  std::variant<GaussField, TrigField, PolyField> field_;
};

// evaluate a field as a tangent vector at a manifold point
inline TangentVector eval_field(const FieldAny& X, const Point& x) {
  return TangentVector(x, X.value(x.coords));
}

// ambient polynomial extension of the spherical gradient:
// grad F - <grad F, x> x, componentwise polynomial
inline PolyField spherical_gradient_field(const Polynomial3& F) {
  const PolyD Fd = to_double_poly(F);
  std::vector<PolyFun> comp;
  PolyD radial(3);
  for (int j = 0; j < 3; ++j) radial = radial + PolyD::variable(3, j) * Fd.partial(j);
  for (int i = 0; i < 3; ++i)
    comp.emplace_back(Fd.partial(i) - PolyD::variable(3, i) * radial);
  return PolyField(ManifoldSpec::sphere2(), std::move(comp));
}

// ambient polynomial Hamiltonian field x cross grad(phi)
inline PolyField hamiltonian_field3(const Polynomial3& phi) {
  const PolyD p = to_double_poly(phi);
  const auto x = [](int i) { return PolyD::variable(3, i); };
  std::vector<PolyFun> comp;
  comp.emplace_back(x(1) * p.partial(2) - x(2) * p.partial(1));
  comp.emplace_back(x(2) * p.partial(0) - x(0) * p.partial(2));
  comp.emplace_back(x(0) * p.partial(1) - x(1) * p.partial(0));
  return PolyField(ManifoldSpec::sphere2(), std::move(comp));
}

}  // namespace enscon
