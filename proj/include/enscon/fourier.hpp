#pragma once

#include <complex>
#include <functional>
#include <map>

#include "enscon/hermite.hpp"

namespace enscon {

// Real trigonometric series on T^d up to total degree n:
//   Y(phi) ~ a_0 + sum_{k canonical} ( a_k cos(k.phi) + b_k sin(k.phi) ),
// where "canonical" means the first nonzero frequency component is positive.
struct FourierSeries {
  using Freq = std::array<std::int16_t, kMaxVars>;
  int dimension = 1;
  int order = 0;
  std::map<Freq, std::pair<double, double>> coef;  // k -> (a_k, b_k)

  double eval(const Vec& phi) const {
    double s = 0.0;
    for (const auto& [k, ab] : coef) {
      double arg = 0.0;
      for (int i = 0; i < dimension; ++i) arg += double(k[i]) * phi[i];
      s += ab.first * std::cos(arg) + ab.second * std::sin(arg);
    }
    return s;
  }
  double eval_partial(int axis, const Vec& phi) const {
    double s = 0.0;
    for (const auto& [k, ab] : coef) {
      double arg = 0.0;
      for (int i = 0; i < dimension; ++i) arg += double(k[i]) * phi[i];
      s += double(k[axis]) * (-ab.first * std::sin(arg) + ab.second * std::cos(arg));
    }
    return s;
  }
};

struct FourierOptions {
  int grid_per_axis = 0;  // 0: default max(2n + 1, 48)
};

// trapezoid-rule projection; spectrally accurate on the torus
inline FourierSeries fourier_project(const std::function<double(const Vec&)>& Y, int d, int n,
                                     const FourierOptions& opt = {}) {
  if (d < 1 || d > 3) throw std::invalid_argument("fourier_project: dimension cap is 3");
  const int P = opt.grid_per_axis > 0 ? opt.grid_per_axis : std::max(2 * n + 1, 48);
  if (P < 2 * n + 1) throw std::invalid_argument("fourier_project: grid too coarse for this n");

  FourierSeries series;
  series.dimension = d;
  series.order = n;

  // canonical frequencies with |k|_1 <= n
  std::vector<FourierSeries::Freq> freqs;
  {
    FourierSeries::Freq k{};
    std::function<void(int, int, bool)> rec = [&](int axis, int remaining, bool lead_set) {
      if (axis == d) {
        freqs.push_back(k);
        return;
      }
      const int lo = lead_set ? -remaining : 0;
      for (int v = lo; v <= remaining; ++v) {
        k[axis] = static_cast<std::int16_t>(v);
        rec(axis + 1, remaining - std::abs(v), lead_set || v > 0);
      }
      k[axis] = 0;
    };
    rec(0, n, false);
  }

  std::size_t npts = 1;
  for (int a = 0; a < d; ++a) npts *= P;
  std::vector<std::complex<double>> hat(freqs.size(), 0.0);
  Vec phi(d);
  for (std::size_t lin = 0; lin < npts; ++lin) {
    std::size_t rem = lin;
    for (int a = 0; a < d; ++a) {
      phi[a] = kTwoPi * double(rem % P) / P;
      rem /= P;
    }
    const double y = Y(phi);
    for (std::size_t t = 0; t < freqs.size(); ++t) {
      double arg = 0.0;
      for (int a = 0; a < d; ++a) arg += double(freqs[t][a]) * phi[a];
      hat[t] += y * std::exp(std::complex<double>(0.0, -arg));
    }
  }
  for (std::size_t t = 0; t < freqs.size(); ++t) {
    const std::complex<double> c = hat[t] / double(npts);
    const bool is_zero_freq = freqs[t] == FourierSeries::Freq{};
    const double a = is_zero_freq ? c.real() : 2.0 * c.real();
    const double b = is_zero_freq ? 0.0 : -2.0 * c.imag();
    if (a != 0.0 || b != 0.0) series.coef[freqs[t]] = {a, b};
  }
  return series;
}

inline TruncationReport fourier_report(const FourierSeries& series,
                                       const std::function<double(const Vec&)>& Y,
                                       const CompactBox& K) {
  TruncationReport rep;
  rep.order = series.order;
  K.for_each_grid_point([&](const Vec& phi) {
    rep.sup_error = std::max(rep.sup_error, std::abs(series.eval(phi) - Y(phi)));
    for (int a = 0; a < series.dimension; ++a)
      rep.deriv_sup = std::max(rep.deriv_sup, std::abs(series.eval_partial(a, phi)));
  });
  rep.ell = rep.deriv_sup;
  return rep;
}

}  // namespace enscon
