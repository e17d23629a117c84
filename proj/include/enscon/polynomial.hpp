#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "enscon/manifold.hpp"
#include "enscon/rational.hpp"

namespace enscon {

// Sparse multivariate polynomial with a runtime variable count (<= kMaxVars).
// Zero coefficients are never stored.
inline constexpr int kMaxVars = 8;

using Exponents = std::array<std::uint8_t, kMaxVars>;

template <class Coef>
class Polynomial {
 public:
  explicit Polynomial(int nvars = 1) : nvars_(nvars) {
    if (nvars < 1 || nvars > kMaxVars) throw std::invalid_argument("Polynomial: bad nvars");
  }

  static Polynomial constant(int nvars, Coef c) {
    Polynomial p(nvars);
    p.add_term(Exponents{}, c);
    return p;
  }
  static Polynomial variable(int nvars, int i, Coef c = Coef(1)) {
    Polynomial p(nvars);
    Exponents e{};
    e[i] = 1;
    p.add_term(e, c);
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, Coef>& terms() const { return terms_; }

  void add_term(const Exponents& e, const Coef& c) {
    if (coef_is_zero(c)) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (coef_is_zero(it->second)) terms_.erase(it);
    }
  }

  int total_degree() const {
    int deg = 0;
    for (const auto& [e, c] : terms_) {
      int d = 0;
      for (int i = 0; i < nvars_; ++i) d += e[i];
      deg = std::max(deg, d);
    }
    return deg;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
    return out;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e{};
        for (int i = 0; i < a.nvars_; ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
        out.add_term(e, ca * cb);
      }
    return out;
  }
  Polynomial operator*(const Coef& s) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) out.add_term(e, c * s);
    return out;
  }
  Polynomial operator-() const { return *this * Coef(-1); }

  Polynomial partial(int i) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponents d = e;
      d[i] -= 1;
      out.add_term(d, c * Coef(static_cast<int>(e[i])));
    }
    return out;
  }

  double eval(const Vec& x) const {
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
      double t = coef_to_double(c);
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) t *= x[i];
      sum += t;
    }
    return sum;
  }

 private:
  void check(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("Polynomial: nvars mismatch");
  }
  static bool coef_is_zero(const Coef& c) {
    if constexpr (std::is_same_v<Coef, Rational>) return c.is_zero();
    else return c == Coef(0);
  }
  static double coef_to_double(const Coef& c) {
    if constexpr (std::is_same_v<Coef, Rational>) return c.to_double();
    else return static_cast<double>(c);
  }

  int nvars_;
  std::map<Exponents, Coef> terms_;
};

// Polynomials on R^3 with exact rational coefficients; the currency of the
// spherical-harmonic machinery.
using Polynomial3 = Polynomial<Rational>;

inline Polynomial3 p3() { return Polynomial3(3); }
inline Polynomial3 p3_const(Rational c) { return Polynomial3::constant(3, c); }
inline Polynomial3 p3_var(int i) { return Polynomial3::variable(3, i); }

// exact Laplacian d^2/dx1^2 + d^2/dx2^2 + d^2/dx3^2
inline Polynomial3 laplacian3(const Polynomial3& f) {
  Polynomial3 out(3);
  for (int i = 0; i < 3; ++i) out = out + f.partial(i).partial(i);
  return out;
}

inline std::array<Polynomial3, 3> gradient3(const Polynomial3& f) {
  return {f.partial(0), f.partial(1), f.partial(2)};
}

inline Vec eval_gradient3(const Polynomial3& f, const Vec& x) {
  Vec g(3);
  for (int i = 0; i < 3; ++i) g[i] = f.partial(i).eval(x);
  return g;
}

}  // namespace enscon
