#pragma once

#include <functional>
#include <map>

#include "enscon/polynomial.hpp"
#include "enscon/quadrature.hpp"

namespace enscon {

// probabilists' Hermite polynomial He_m by the three-term recurrence
// He_{m+1} = z He_m - m He_{m-1},  He_0 = 1, He_1 = z
inline double hermite_value(int m, double z) {
  double pm1 = 0.0, p = 1.0;
  for (int k = 0; k < m; ++k) {
    const double pn = z * p - double(k) * pm1;
    pm1 = p;
    p = pn;
  }
  return p;
}

// exact-coefficient He_m as a univariate polynomial (used by identity tests)
inline Polynomial<Rational> hermite_polynomial(int m) {
  Polynomial<Rational> pm1(1), p = Polynomial<Rational>::constant(1, Rational(1));
  const Polynomial<Rational> z = Polynomial<Rational>::variable(1, 0);
  for (int k = 0; k < m; ++k) {
    Polynomial<Rational> pn = z * p - pm1 * Rational(k);
    pm1 = std::move(p);
    p = std::move(pn);
  }
  return p;
}

using MultiIndex = Exponents;

inline int multi_total(const MultiIndex& m, int d) {
  int t = 0;
  for (int i = 0; i < d; ++i) t += m[i];
  return t;
}

inline std::vector<MultiIndex> multi_indices_up_to(int d, int n) {
  std::vector<MultiIndex> out;
  MultiIndex m{};
  std::function<void(int, int)> rec = [&](int axis, int remaining) {
    if (axis == d) {
      out.push_back(m);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      m[axis] = static_cast<std::uint8_t>(v);
      rec(axis + 1, remaining - v);
    }
    m[axis] = 0;
  };
  rec(0, n);
  return out;
}

inline double hermite_value_multi(const MultiIndex& m, const Vec& z) {
  double p = 1.0;
  for (int i = 0; i < z.size(); ++i) p *= hermite_value(m[i], z[i]);
  return p;
}

// Truncated expansion Y(z) e^{gamma(z)} ~ sum_m c_m He_m(z), |m| <= n.
struct HermiteSeries {
  int dimension = 1;
  int order = 0;
  std::map<MultiIndex, double> coef;

  // S_n(z) = sum c_m He_m(z)
  double eval_series(const Vec& z) const {
    double s = 0.0;
    for (const auto& [m, c] : coef) s += c * hermite_value_multi(m, z);
    return s;
  }
  // S_n(z) e^{-gamma(z)}
  double eval_weighted(const Vec& z) const {
    return eval_series(z) * std::exp(-0.5 * z.squaredNorm());
  }
  // d/dz_i (S_n e^{-gamma}) = - sum_m c_m He_{m+e_i} e^{-gamma}
  double eval_weighted_partial(int axis, const Vec& z) const {
    double s = 0.0;
    for (const auto& [m, c] : coef) {
      MultiIndex up = m;
      up[axis] += 1;
      s += c * hermite_value_multi(up, z);
    }
    return -s * std::exp(-0.5 * z.squaredNorm());
  }
};

struct HermiteOptions {
  // Gauss-Hermite nodes per axis; 0 means the default 2n + 8
  int nodes_per_axis = 0;
};

// Fourier-Hermite coefficients of Y e^{gamma}:
//   c_m = (integral Y(z) He_m(z) dz) / ((2 pi)^{d/2} m!)
// by Gauss-Hermite product quadrature. Y must be compactly supported or decay
// faster than the Gaussian weight.
inline HermiteSeries hermite_coeffs(const std::function<double(const Vec&)>& Y, int d, int n,
                                    const HermiteOptions& opt = {}) {
  if (d < 1 || d > 3) throw std::invalid_argument("hermite_coeffs: dimension cap is 3");
  if (n < 0) throw std::invalid_argument("hermite_coeffs: negative order");
  const int q = opt.nodes_per_axis > 0 ? opt.nodes_per_axis : 2 * n + 8;
  // exactness degree 2q-1 must cover the He_m He_n products appearing in the
  // projection of order-n data
  if (2 * q - 1 < 2 * n + 2)
    throw std::invalid_argument("hermite_coeffs: quadrature order insufficient for this n");
  const QuadratureRule rule = gauss_hermite(q);

  // modified weights w_i e^{x_i^2/2}: finite wherever w_i did not underflow
  std::vector<double> mod(q);
  std::vector<int> live;
  for (int i = 0; i < q; ++i) {
    if (rule.weights[i] == 0.0) continue;
    mod[i] = rule.weights[i] * std::exp(0.5 * rule.nodes[i] * rule.nodes[i]);
    live.push_back(i);
  }

  const auto indices = multi_indices_up_to(d, n);
  HermiteSeries series;
  series.dimension = d;
  series.order = n;

  std::vector<int> idx(d, 0);
  Vec z(d);
  const std::size_t npts = [&] {
    std::size_t t = 1;
    for (int a = 0; a < d; ++a) t *= live.size();
    return t;
  }();
  std::vector<double> acc(indices.size(), 0.0);
  for (std::size_t lin = 0; lin < npts; ++lin) {
    std::size_t rem = lin;
    double w = 1.0;
    for (int a = 0; a < d; ++a) {
      const int i = live[rem % live.size()];
      rem /= live.size();
      z[a] = rule.nodes[i];
      w *= mod[i];
    }
    const double y = Y(z);
    if (y == 0.0) continue;
    const double wy = w * y;
    for (std::size_t t = 0; t < indices.size(); ++t)
      acc[t] += wy * hermite_value_multi(indices[t], z);
  }

  const double mass = std::pow(2.0 * std::numbers::pi, 0.5 * d);
  for (std::size_t t = 0; t < indices.size(); ++t) {
    double fact = 1.0;
    for (int a = 0; a < d; ++a)
      for (int k = 2; k <= indices[t][a]; ++k) fact *= k;
    series.coef[indices[t]] = acc[t] / (mass * fact);
  }
  return series;
}

// Observed truncation behaviour of S_n e^{-gamma} against the target Y on a
// compact box: uniform error, derivative sup and the bound ell it witnesses.
struct TruncationReport {
  int order = 0;
  double sup_error = 0.0;
  double deriv_sup = 0.0;
  double ell = 0.0;
};

inline TruncationReport truncation_report(const HermiteSeries& series,
                                          const std::function<double(const Vec&)>& Y,
                                          const CompactBox& K) {
  TruncationReport rep;
  rep.order = series.order;
  K.for_each_grid_point([&](const Vec& z) {
    rep.sup_error = std::max(rep.sup_error, std::abs(series.eval_weighted(z) - Y(z)));
    for (int a = 0; a < series.dimension; ++a)
      rep.deriv_sup = std::max(rep.deriv_sup, std::abs(series.eval_weighted_partial(a, z)));
  });
  rep.ell = rep.deriv_sup;
  return rep;
}

}  // namespace enscon
