#pragma once

// Closed differential algebras housing the scalar components of the control
// families' vector fields. Each supports +, -, *, exact partial derivatives
// and pointwise evaluation, which makes iterated Lie brackets exact at any
// nesting depth:
//   GaussFun: sum_j P_j(z) e^{-j gamma(z)} on R^d       (GH systems)
//   TrigFun:  trigonometric polynomials on T^d           (torus systems)
//   PolyFun:  polynomials on R^3                         (sphere systems)

#include <complex>
#include <map>

#include "enscon/polynomial.hpp"

namespace enscon {

using PolyD = Polynomial<double>;

class GaussFun {
 public:
  explicit GaussFun(int nvars = 1) : nvars_(nvars) {}

  static GaussFun polynomial(PolyD p) {
    GaussFun f(p.nvars());
    if (!p.is_zero()) f.layers_[0] = std::move(p);
    return f;
  }
  // P(z) * e^{-j gamma(z)}
  static GaussFun gaussian(PolyD p, int j) {
    GaussFun f(p.nvars());
    if (!p.is_zero()) f.layers_[j] = std::move(p);
    return f;
  }
  static GaussFun constant(int nvars, double c) {
    return polynomial(PolyD::constant(nvars, c));
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return layers_.empty(); }
  const std::map<int, PolyD>& layers() const { return layers_; }

  friend GaussFun operator+(const GaussFun& a, const GaussFun& b) {
    GaussFun out = a;
    for (const auto& [j, p] : b.layers_) out.accumulate(j, p);
    return out;
  }
  friend GaussFun operator-(const GaussFun& a, const GaussFun& b) {
    GaussFun out = a;
    for (const auto& [j, p] : b.layers_) out.accumulate(j, -p);
    return out;
  }
  friend GaussFun operator*(const GaussFun& a, const GaussFun& b) {
    GaussFun out(a.nvars_);
    for (const auto& [ja, pa] : a.layers_)
      for (const auto& [jb, pb] : b.layers_) out.accumulate(ja + jb, pa * pb);
    return out;
  }

  // d/dz_i (P e^{-j gamma}) = (dP/dz_i - j z_i P) e^{-j gamma}
  GaussFun partial(int i) const {
    GaussFun out(nvars_);
    for (const auto& [j, p] : layers_) {
      PolyD q = p.partial(i);
      if (j != 0) q = q - PolyD::variable(nvars_, i, double(j)) * p;
      out.accumulate(j, q);
    }
    return out;
  }

  double eval(const Vec& z) const {
    const double gamma = 0.5 * z.squaredNorm();
    double sum = 0.0;
    for (const auto& [j, p] : layers_) sum += p.eval(z) * std::exp(-double(j) * gamma);
    return sum;
  }

 private:
  void accumulate(int j, PolyD p) {
    if (p.is_zero()) return;
    auto it = layers_.find(j);
    if (it == layers_.end()) {
      layers_.emplace(j, std::move(p));
    } else {
      it->second = it->second + p;
      if (it->second.is_zero()) layers_.erase(it);
    }
  }

  int nvars_;
  std::map<int, PolyD> layers_;  // gaussian power -> polynomial factor
};

// Trigonometric polynomial sum_k c_k e^{i k.phi} with Hermitian coefficients
// (real-valued). Products convolve frequencies, derivatives multiply by i k_i.
class TrigFun {
 public:
  using Freq = std::array<std::int16_t, kMaxVars>;

  explicit TrigFun(int nvars = 1) : nvars_(nvars) {}

  static TrigFun constant(int nvars, double c) {
    TrigFun f(nvars);
    f.add(Freq{}, c);
    return f;
  }
  static TrigFun sinusoid(int nvars, int axis, int k, bool sine) {
    // sin(k phi) = (e^{ik} - e^{-ik}) / 2i ; cos(k phi) = (e^{ik} + e^{-ik}) / 2
    TrigFun f(nvars);
    Freq fp{}, fm{};
    fp[axis] = static_cast<std::int16_t>(k);
    fm[axis] = static_cast<std::int16_t>(-k);
    if (sine) {
      f.add(fp, std::complex<double>(0, -0.5));
      f.add(fm, std::complex<double>(0, 0.5));
    } else {
      f.add(fp, 0.5);
      f.add(fm, 0.5);
    }
    return f;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return coef_.empty(); }
  const std::map<Freq, std::complex<double>>& coef() const { return coef_; }

  friend TrigFun operator+(const TrigFun& a, const TrigFun& b) {
    TrigFun out = a;
    for (const auto& [k, c] : b.coef_) out.add(k, c);
    return out;
  }
  friend TrigFun operator-(const TrigFun& a, const TrigFun& b) {
    TrigFun out = a;
    for (const auto& [k, c] : b.coef_) out.add(k, -c);
    return out;
  }
  friend TrigFun operator*(const TrigFun& a, const TrigFun& b) {
    TrigFun out(a.nvars_);
    for (const auto& [ka, ca] : a.coef_)
      for (const auto& [kb, cb] : b.coef_) {
        Freq k{};
        for (int i = 0; i < a.nvars_; ++i) k[i] = static_cast<std::int16_t>(ka[i] + kb[i]);
        out.add(k, ca * cb);
      }
    return out;
  }

  TrigFun partial(int i) const {
    TrigFun out(nvars_);
    for (const auto& [k, c] : coef_)
      out.add(k, c * std::complex<double>(0, double(k[i])));
    return out;
  }

  double eval(const Vec& phi) const {
    std::complex<double> sum = 0.0;
    for (const auto& [k, c] : coef_) {
      double arg = 0.0;
      for (int i = 0; i < nvars_; ++i) arg += double(k[i]) * phi[i];
      sum += c * std::exp(std::complex<double>(0, arg));
    }
    return sum.real();
  }

 private:
  void add(const Freq& k, std::complex<double> c) {
    if (c == std::complex<double>(0.0)) return;
    auto [it, fresh] = coef_.emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (std::abs(it->second) == 0.0) coef_.erase(it);
    }
  }

  int nvars_;
  std::map<Freq, std::complex<double>> coef_;
};

// Plain polynomial scalar on R^3 (sphere families work with ambient
// polynomial extensions).
class PolyFun {
 public:
  explicit PolyFun(int nvars = 3) : poly_(nvars) {}
  explicit PolyFun(PolyD p) : poly_(std::move(p)) {}

  static PolyFun constant(int nvars, double c) { return PolyFun(PolyD::constant(nvars, c)); }

  int nvars() const { return poly_.nvars(); }
  bool is_zero() const { return poly_.is_zero(); }
  const PolyD& poly() const { return poly_; }

  friend PolyFun operator+(const PolyFun& a, const PolyFun& b) { return PolyFun(a.poly_ + b.poly_); }
  friend PolyFun operator-(const PolyFun& a, const PolyFun& b) { return PolyFun(a.poly_ - b.poly_); }
  friend PolyFun operator*(const PolyFun& a, const PolyFun& b) { return PolyFun(a.poly_ * b.poly_); }
  PolyFun partial(int i) const { return PolyFun(poly_.partial(i)); }
  double eval(const Vec& x) const { return poly_.eval(x); }

 private:
  PolyD poly_;
};

// double-coefficient copy of an exact rational polynomial
inline PolyD to_double_poly(const Polynomial3& p) {
  PolyD out(3);
  for (const auto& [e, c] : p.terms()) out.add_term(e, c.to_double());
  return out;
}

}  // namespace enscon
