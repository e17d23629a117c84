#pragma once

#include <stdexcept>
#include <vector>

#include "enscon/polynomial.hpp"

namespace enscon {

// Restriction to the unit sphere of a homogeneous harmonic polynomial.
// Both invariants are checked exactly in rational arithmetic.
struct HarmonicPolynomial {
  Polynomial3 poly;
  int degree;

  HarmonicPolynomial(Polynomial3 p, int k) : poly(std::move(p)), degree(k) {
    for (const auto& [e, c] : poly.terms()) {
      if (e[0] + e[1] + e[2] != k)
        throw std::invalid_argument("HarmonicPolynomial: not homogeneous of the stated degree");
    }
    if (!laplacian3(poly).is_zero())
      throw std::invalid_argument("HarmonicPolynomial: Laplacian is not zero");
  }
};

// The library's fixed low-degree harmonics: three independent linear ones,
// one quadratic, one cubic. Simplest exact-coefficient choices.
inline HarmonicPolynomial harmonic_l1() { return {p3_var(0), 1}; }
inline HarmonicPolynomial harmonic_l2() { return {p3_var(1), 1}; }
inline HarmonicPolynomial harmonic_l3() { return {p3_var(2), 1}; }
inline HarmonicPolynomial harmonic_q() { return {p3_var(0) * p3_var(1), 2}; }
inline HarmonicPolynomial harmonic_c() {
  return {p3_var(2) * (p3_var(0) * p3_var(0) - p3_var(1) * p3_var(1)), 3};
}

namespace detail {

// Re((x1 + i x2)^m) and Im((x1 + i x2)^m), harmonic for every m.
inline std::pair<Polynomial3, Polynomial3> sectoral_pair(int m) {
  Polynomial3 re = p3_const(Rational(1));
  Polynomial3 im(3);
  for (int k = 0; k < m; ++k) {
    Polynomial3 nre = re * p3_var(0) - im * p3_var(1);
    Polynomial3 nim = re * p3_var(1) + im * p3_var(0);
    re = std::move(nre);
    im = std::move(nim);
  }
  return {re, im};
}

inline std::int64_t double_factorial(int n) {
  std::int64_t r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

// Homogenized associated-Legendre factor q_{l,m}(x3, r^2): a polynomial of
// degree l-m satisfying the standard three-term recurrence
//   (l-m) q_{l,m} = (2l-1) x3 q_{l-1,m} - (l-1+m) r^2 q_{l-2,m}.
inline Polynomial3 legendre_factor(int l, int m) {
  const Polynomial3 z = p3_var(2);
  const Polynomial3 r2 = p3_var(0) * p3_var(0) + p3_var(1) * p3_var(1) + p3_var(2) * p3_var(2);
  Polynomial3 qmm = p3_const(Rational(double_factorial(2 * m - 1)));
  if (l == m) return qmm;
  Polynomial3 qm1 = z * Rational(double_factorial(2 * m + 1));
  if (l == m + 1) return qm1;
  Polynomial3 prev2 = qmm, prev1 = qm1;
  for (int ll = m + 2; ll <= l; ++ll) {
    Polynomial3 cur =
        (z * prev1 * Rational(2 * ll - 1) - r2 * prev2 * Rational(ll - 1 + m)) * Rational(1, ll - m);
    prev2 = std::move(prev1);
    prev1 = std::move(cur);
  }
  return prev1;
}

}  // namespace detail

// Real solid harmonics of degree l: 2l+1 homogeneous harmonic polynomials
// with exact rational coefficients, pairwise L2-orthogonal on the sphere
// (not normalized). Order: m = 0, then (cos, sin) pairs for m = 1..l.
inline std::vector<HarmonicPolynomial> solid_harmonic_basis(int l) {
  std::vector<HarmonicPolynomial> out;
  out.reserve(2 * l + 1);
  out.emplace_back(detail::legendre_factor(l, 0), l);
  for (int m = 1; m <= l; ++m) {
    const auto [re, im] = detail::sectoral_pair(m);
    const Polynomial3 q = detail::legendre_factor(l, m);
    out.emplace_back(q * re, l);
    out.emplace_back(q * im, l);
  }
  return out;
}

}  // namespace enscon
