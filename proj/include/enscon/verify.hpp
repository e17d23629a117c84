#pragma once

// Named property suites behind `verify`: fixed-seed numerical checks of the
// identities each module is supposed to satisfy. Each check reports pass/fail
// plus a short measurement string.

#include <random>

#include "enscon/evaluation_rank.hpp"
#include "enscon/fourier.hpp"
#include "enscon/laplace.hpp"
#include "enscon/optimize.hpp"
#include "enscon/pmp.hpp"
#include "enscon/seminorm.hpp"
#include "enscon/serialization.hpp"
#include "enscon/sphere_ops.hpp"

namespace enscon {

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace verify_detail {

inline Vec random_unit3(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec x(3);
  do {
    for (int i = 0; i < 3; ++i) x[i] = g(rng);
  } while (x.norm() < 1e-3);
  return x / x.norm();
}

inline Vec random_tangent(const Vec& x, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec v(3);
  for (int i = 0; i < 3; ++i) v[i] = g(rng);
  v -= v.dot(x) * x;
  return v;
}

// random small-integer combination of the degree-k solid harmonics
inline HarmonicPolynomial random_harmonic(int k, std::mt19937_64& rng) {
  const auto basis = solid_harmonic_basis(k);
  std::uniform_int_distribution<int> coeff(-3, 3);
  Polynomial3 p(3);
  bool nonzero = false;
  while (!nonzero) {
    p = Polynomial3(3);
    for (const auto& b : basis) {
      const int c = coeff(rng);
      if (c != 0) {
        p = p + b.poly * Rational(c);
        nonzero = true;
      }
    }
  }
  return HarmonicPolynomial(std::move(p), k);
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-30, std::abs(want));
}

// central-difference Jacobian of any evaluable field
template <class Field>
Mat fd_jacobian(const Field& X, const Vec& x, double eps = 1e-6) {
  const int n = static_cast<int>(x.size());
  Mat J(n, n);
  for (int a = 0; a < n; ++a) {
    Vec xp = x, xm = x;
    xp[a] += eps;
    xm[a] -= eps;
    J.col(a) = (X.value(xp) - X.value(xm)) / (2 * eps);
  }
  return J;
}

}  // namespace verify_detail

// --- geometry ----------------------------------------------------------------

inline std::vector<PropertyResult> verify_geometry() {
  namespace vd = verify_detail;
  std::vector<PropertyResult> out;
  std::mt19937_64 rng(20240901);

  {  // Euler identities for homogeneous harmonics, exact differentiation
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const int k = 1 + trial % 4;
      const auto F = vd::random_harmonic(k, rng);
      const Vec x = vd::random_unit3(rng) * 1.3;
      const Vec g = eval_gradient3(F.poly, x);
      worst = std::max(worst, vd::rel_err(g.dot(x), k * F.poly.eval(x)));
      Mat H(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) H(i, j) = F.poly.partial(i).partial(j).eval(x);
      worst = std::max(worst, (H * x - (k - 1) * g).norm() /
                                  std::max(1e-30, ((k - 1) * g).norm() + 1.0));
    }
    out.push_back({"geometry/euler_identities", worst < tol::kExact,
                   "max rel err " + fmt_double(worst)});
  }

  {  // divergence of the bracket of spherical gradients
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const int k = 1 + trial % 4, l = 1 + (trial / 2) % 4;
      const auto F = vd::random_harmonic(k, rng), G = vd::random_harmonic(l, rng);
      const Vec x = vd::random_unit3(rng);
      const FieldAny B =
          lie_bracket(FieldAny(spherical_gradient_field(F.poly)),
                      FieldAny(spherical_gradient_field(G.poly)));
      const double got = spherical_divergence(B, sphere_point(x));
      const Vec gF = eval_gradient3(F.poly, x), gG = eval_gradient3(G.poly, x);
      const double want =
          (k - l) * (k + l + 3) * (gF.dot(gG) - double(k) * l * F.poly.eval(x) * G.poly.eval(x));
      const double scale = (k + l + 3) * (gF.norm() * gG.norm() +
                                          k * l * std::abs(F.poly.eval(x) * G.poly.eval(x)));
      worst = std::max(worst, std::abs(got - want) / std::max(1.0, scale));
    }
    out.push_back({"geometry/div_of_bracket", worst < tol::kMixed,
                   "max rel err " + fmt_double(worst)});
  }

  {  // corollary cases k = 1 (zero) and k = 2 (-12 x3 f)
    bool pass = true;
    std::string detail;
    for (int k = 1; k <= 2; ++k) {
      const auto [re, im] = detail::sectoral_pair(k);
      (void)im;
      const Polynomial3 f = re, g = p3_var(2);
      const FieldAny B = lie_bracket(FieldAny(spherical_gradient_field(f)),
                                     FieldAny(spherical_gradient_field(g)));
      for (int trial = 0; trial < 25; ++trial) {
        const Vec x = vd::random_unit3(rng);
        const double got = spherical_divergence(B, sphere_point(x));
        const double want = -(k - 1.0) * (k + 4.0) * k * x[2] * f.eval(x);
        if (std::abs(got - want) > tol::kMixed * std::max(1.0, std::abs(want))) pass = false;
      }
      detail += "k=" + std::to_string(k) + " ok; ";
    }
    out.push_back({"geometry/div_of_bracket_corollary", pass, detail});
  }

  {  // gradient and Hamiltonian fields are pointwise orthogonal
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto F = vd::random_harmonic(1 + trial % 4, rng);
      const Vec x = vd::random_unit3(rng);
      const Point p = sphere_point(x);
      const Vec grad = spherical_gradient(F.poly, p).components;
      const Vec ham = hamiltonian_field(F.poly, p).components;
      worst = std::max(worst,
                       std::abs(grad.dot(ham)) / std::max(1.0, grad.norm() * ham.norm()));
    }
    out.push_back({"geometry/gradient_hamiltonian_orthogonal", worst < tol::kExact,
                   "max |<grad,ham>| (normalized) " + fmt_double(worst)});
  }

  {  // exact harmonicity of the generated solid-harmonic basis
    bool pass = true;
    for (int l = 0; l <= 6 && pass; ++l)
      for (const auto& h : solid_harmonic_basis(l))
        if (!laplacian3(h.poly).is_zero()) pass = false;
    out.push_back({"geometry/solid_harmonics_exact", pass, "degrees 0..6"});
  }

  return out;
}

// --- fields ------------------------------------------------------------------

inline std::vector<PropertyResult> verify_fields() {
  namespace vd = verify_detail;
  std::vector<PropertyResult> out;
  std::mt19937_64 rng(20240902);
  std::normal_distribution<double> g;

  const std::vector<ControlFamily> families = {
      ControlFamily::gh(1),          ControlFamily::gh(2),
      ControlFamily::torus1(),       ControlFamily::torus_d(2),
      ControlFamily::sphere_symp(),  ControlFamily::sphere_full(),
      ControlFamily::product_gh(2, 1, Vec::Zero(1))};

  {  // analytic vs central-difference Jacobians, 100 random points per family
    double worst = 0.0;
    for (const auto& fam : families) {
      for (int trial = 0; trial < 100; ++trial) {
        Vec x(fam.ambient_dim());
        for (int i = 0; i < x.size(); ++i) x[i] = g(rng);
        if (fam.manifold().kind == ManifoldKind::Sphere2) x /= x.norm();
        for (int i = 0; i < fam.control_count(); ++i) {
          const auto& field = fam.generator(i);
          const Mat Ja = field.jacobian(x);
          const Mat Jf = vd::fd_jacobian(field, x);
          worst = std::max(worst, (Ja - Jf).cwiseAbs().maxCoeff() /
                                      std::max(1.0, Ja.cwiseAbs().maxCoeff()));
        }
      }
    }
    out.push_back({"fields/jacobian_vs_fd", worst < tol::kFiniteDiff,
                   "max rel err " + fmt_double(worst)});
  }

  {  // Jacobi identity at random points
    double worst = 0.0;
    for (const auto& fam : families) {
      if (fam.control_count() < 3) continue;
      const FieldAny &X = fam.generator(0), &Y = fam.generator(1), &Z = fam.generator(2);
      const FieldAny J1 = lie_bracket(X, lie_bracket(Y, Z));
      const FieldAny J2 = lie_bracket(Y, lie_bracket(Z, X));
      const FieldAny J3 = lie_bracket(Z, lie_bracket(X, Y));
      for (int trial = 0; trial < 20; ++trial) {
        Vec x(fam.ambient_dim());
        for (int i = 0; i < x.size(); ++i) x[i] = g(rng);
        if (fam.manifold().kind == ManifoldKind::Sphere2) x /= x.norm();
        worst = std::max(worst, (J1.value(x) + J2.value(x) + J3.value(x)).norm());
      }
    }
    out.push_back({"fields/jacobi_identity", worst < 1e-8, "max residual " + fmt_double(worst)});
  }

  {  // ad_{g1}^m f1 = (-1)^m He_m(z) e^{-gamma} d/dz for GH(1)
    const ControlFamily gh1 = ControlFamily::gh(1);
    FieldAny ad = gh1.generator(0);  // f1
    const FieldAny g1 = gh1.generator(1);
    double worst = 0.0;
    for (int m = 1; m <= 5; ++m) {
      ad = lie_bracket(g1, ad);
      for (int trial = 0; trial < 20; ++trial) {
        Vec z(1);
        z[0] = 2.5 * (g(rng) / 3.0);
        const double want =
            std::pow(-1.0, m) * hermite_value(m, z[0]) * std::exp(-0.5 * z[0] * z[0]);
        worst = std::max(worst, std::abs(ad.value(z)[0] - want));
      }
    }
    out.push_back({"fields/gh_hermite_brackets", worst < tol::kMixed,
                   "max abs err " + fmt_double(worst)});
  }

  {  // torus bracket [sin, sin 2] = (sin 3 - 3 sin)/2, the oracle-settled half
    const ControlFamily t1 = ControlFamily::torus1();
    const FieldAny br = lie_bracket(t1.generator(1), t1.generator(2));
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      Vec phi(1);
      phi[0] = std::uniform_real_distribution<double>(0, kTwoPi)(rng);
      const double want = 0.5 * (std::sin(3 * phi[0]) - 3 * std::sin(phi[0]));
      worst = std::max(worst, std::abs(br.value(phi)[0] - want));
    }
    out.push_back({"fields/torus1_bracket_half_factor", worst < tol::kExact,
                   "max abs err " + fmt_double(worst)});
  }

  {  // T^2 monomial field cos(phi2) d/dphi1 = [f0_2, g_1]
    const ControlFamily t2 = ControlFamily::torus_d(2);
    const FieldAny br = lie_bracket(t2.generator(1), t2.generator(6));  // [f0_2, g_1]
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      Vec phi(2);
      phi[0] = std::uniform_real_distribution<double>(0, kTwoPi)(rng);
      phi[1] = std::uniform_real_distribution<double>(0, kTwoPi)(rng);
      const Vec v = br.value(phi);
      worst = std::max(worst, std::abs(v[0] - std::cos(phi[1])) + std::abs(v[1]));
    }
    out.push_back({"fields/torus_d_monomial_bracket", worst < 1e-10,
                   "max abs err " + fmt_double(worst)});
  }

  {  // symplectic sphere generators are divergence-free
    const ControlFamily ss = ControlFamily::sphere_symp();
    double worst = 0.0;
    for (int i = 0; i < ss.control_count(); ++i)
      for (int trial = 0; trial < 40; ++trial) {
        const Vec x = vd::random_unit3(rng);
        worst = std::max(worst,
                         std::abs(spherical_divergence(ss.generator(i), sphere_point(x))));
      }
    out.push_back({"fields/sphere_symp_divergence_free", worst < 1e-10,
                   "max |div| " + fmt_double(worst)});
  }

  {  // bracket-generation ranks
    std::vector<Vec> pts;
    std::mt19937_64 prng(7);
    std::normal_distribution<double> pg;
    auto draw2 = [&] {
      Vec v(2);
      v << pg(prng), pg(prng);
      return v;
    };
    bool pass = true;
    std::string detail;
    for (int N = 1; N <= 3; ++N) {
      pts.clear();
      for (int k = 0; k < N; ++k) pts.push_back(draw2());
      const auto rep = evaluation_rank(ControlFamily::gh(2),
                                       Ensemble(ManifoldSpec::euclidean(2), pts), 3);
      pass = pass && rep.full_rank();
      detail += "gh2 N=" + std::to_string(N) + " rank " + std::to_string(rep.rank) + "/" +
                std::to_string(rep.target_rank()) + "; ";
    }
    {
      std::vector<Vec> ph;
      for (double v : {0.4, 2.1, 4.4}) {
        Vec p(1);
        p[0] = v;
        ph.push_back(p);
      }
      const auto rep =
          evaluation_rank(ControlFamily::torus1(), Ensemble(ManifoldSpec::torus(1), ph), 2);
      pass = pass && rep.full_rank();
      detail += "torus1 N=3 rank " + std::to_string(rep.rank) + "/" +
                std::to_string(rep.target_rank());
    }
    out.push_back({"fields/bracket_generation_rank", pass, detail});
  }

  {  // depth-1 rank deficiency is reported, not failed: GH(2), symmetric N=2
    Vec a(2), b(2);
    a << 0.7, 0.3;
    b << -0.7, -0.3;
    const Ensemble e(ManifoldSpec::euclidean(2), {a, b});
    const auto rep = evaluation_rank(ControlFamily::gh(2), e, 1);
    const bool deeper_ok = evaluation_rank(ControlFamily::gh(2), e, 3).full_rank();
    out.push_back({"fields/rank_depth1_expected_insufficient",
                   rep.rank == 2 && !rep.full_rank() && deeper_ok,
                   "rank " + std::to_string(rep.rank) + " < " + std::to_string(rep.target_rank()) +
                       " (expected at depth 1; full at depth 3)"});
  }

  {  // seminorm examples
    const ControlFamily gh1 = ControlFamily::gh(1);
    const double s0 = seminorm(gh1.generator(0), CompactBox::cube(1, -3, 3, 601), 0);
    const ControlFamily t1 = ControlFamily::torus1();
    const double s1 = seminorm(t1.generator(2), CompactBox::full_torus(1, 2001), 1);
    const bool pass = std::abs(s0 - 1.0) < 1e-6 && std::abs(s1 - 3.0) < 1e-4;
    out.push_back({"fields/seminorm_examples", pass,
                   "gh f1 r0: " + fmt_double(s0) + ", torus sin2 r1: " + fmt_double(s1)});
  }

  return out;
}

// --- approximation -----------------------------------------------------------

inline std::vector<PropertyResult> verify_approximation() {
  namespace vd = verify_detail;
  std::vector<PropertyResult> out;

  {  // integral He_m^2 e^{-gamma} / sqrt(2 pi) = m!
    const QuadratureRule rule = gauss_hermite(64);
    double worst = 0.0;
    double fact = 1.0;
    for (int m = 0; m <= 10; ++m) {
      if (m > 0) fact *= m;
      double acc = 0.0;
      for (int i = 0; i < rule.size(); ++i) {
        const double h = hermite_value(m, rule.nodes[i]);
        acc += rule.weights[i] * h * h;
      }
      worst = std::max(worst, vd::rel_err(acc / std::sqrt(2 * std::numbers::pi), fact));
    }
    out.push_back({"approximation/hermite_norm_identity", worst < 1e-10,
                   "max rel err " + fmt_double(worst)});
  }

  {  // He'_{m+1} = (m+1) He_m with exact coefficients
    bool pass = true;
    for (int m = 0; m <= 10; ++m) {
      const auto lhs = hermite_polynomial(m + 1).partial(0);
      const auto rhs = hermite_polynomial(m) * Rational(m + 1);
      if (!(lhs - rhs).is_zero()) pass = false;
    }
    out.push_back({"approximation/hermite_derivative_identity", pass, "m <= 10, exact"});
  }

  {  // trivial coefficient examples
    HermiteOptions opt;
    opt.nodes_per_axis = 64;
    const auto s0 = hermite_coeffs(
        [](const Vec& z) { return std::exp(-0.5 * z[0] * z[0]); }, 1, 6, opt);
    const auto s1 = hermite_coeffs(
        [](const Vec& z) { return z[0] * std::exp(-0.5 * z[0] * z[0]); }, 1, 6, opt);
    double worst = 0.0;
    for (const auto& [m, c] : s0.coef) worst = std::max(worst, std::abs(c - (m[0] == 0)));
    for (const auto& [m, c] : s1.coef) worst = std::max(worst, std::abs(c - (m[0] == 1)));
    out.push_back({"approximation/hermite_trivial_coeffs", worst < 1e-12,
                   "max abs err " + fmt_double(worst)});
  }

  {  // derivative series = negated index shift (d = 1, smooth bump)
    const double a = 2.5, s = 0.8;
    auto bump = [&](const Vec& z) {
      const double t = (z[0] - s) / a;
      return std::abs(t) < 1 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0;
    };
    auto dbump = [&](const Vec& z) {
      const double t = (z[0] - s) / a;
      if (std::abs(t) >= 1) return 0.0;
      const double u = 1.0 - t * t;
      return std::exp(1.0 - 1.0 / u) * (-2.0 * t / (u * u)) / a;
    };
    HermiteOptions opt;
    opt.nodes_per_axis = 12800;
    const auto cy = hermite_coeffs(bump, 1, 10, opt);
    const auto cp = hermite_coeffs(dbump, 1, 11, opt);
    double worst = 0.0;
    for (const auto& [m, c] : cy.coef) {
      MultiIndex up = m;
      up[0] += 1;
      worst = std::max(worst, std::abs(cp.coef.at(up) + c));
    }
    out.push_back(
        {"approximation/derivative_shift_identity", worst < 1e-8, "max abs err " + fmt_double(worst)});
  }

  {  // Bessel / Parseval sanity: sum c_m^2 m! sqrt(2pi) <= ||Y e^gamma||^2_w
    const double a = 2.5, s = 0.8;
    auto bump = [&](const Vec& z) {
      const double t = (z[0] - s) / a;
      return std::abs(t) < 1 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0;
    };
    HermiteOptions opt;
    opt.nodes_per_axis = 3200;
    const auto cy = hermite_coeffs(bump, 1, 12, opt);
    double lhs = 0.0;
    for (const auto& [m, c] : cy.coef) {
      double fact = 1.0;
      for (int k = 2; k <= m[0]; ++k) fact *= k;
      lhs += c * c * fact * std::sqrt(2 * std::numbers::pi);
    }
    const QuadratureRule rule = gauss_hermite(3200);
    double rhs = 0.0;
    for (int i = 0; i < rule.size(); ++i) {
      if (rule.weights[i] == 0.0) continue;
      Vec z(1);
      z[0] = rule.nodes[i];
      const double ye = bump(z) * std::exp(0.5 * z[0] * z[0]);
      rhs += rule.weights[i] * ye * ye;
    }
    out.push_back({"approximation/parseval_sanity", lhs <= rhs * (1 + 1e-10),
                   fmt_double(lhs) + " <= " + fmt_double(rhs)});
  }

  {  // truncation ladder on the bump: errors strictly decrease, ell spread < 20%
    const double a = 2.5, s = 0.8;
    auto bump = [&](const Vec& z) {
      const double t = (z[0] - s) / a;
      return std::abs(t) < 1 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0;
    };
    HermiteOptions opt;
    opt.nodes_per_axis = 3000;
    const CompactBox K = CompactBox::cube(1, -a - 2 + s, a + 2 + s, 2401);
    std::vector<TruncationReport> ladder;
    for (int n : {4, 8, 12, 16})
      ladder.push_back(truncation_report(hermite_coeffs(bump, 1, n, opt), bump, K));
    bool decreasing = true;
    double lmin = 1e300, lmax = 0.0;
    std::string detail;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      if (i && !(ladder[i].sup_error < ladder[i - 1].sup_error)) decreasing = false;
      lmin = std::min(lmin, ladder[i].ell);
      lmax = std::max(lmax, ladder[i].ell);
      detail += "n=" + std::to_string(ladder[i].order) + " err=" + fmt_double(ladder[i].sup_error) +
                " ell=" + fmt_double(ladder[i].ell) + "; ";
    }
    const double spread = (lmax - lmin) / lmax;
    out.push_back({"approximation/hermite_truncation_ladder",
                   decreasing && spread < 0.20, detail + "spread " + fmt_double(spread)});
  }

  {  // Fourier examples and ladder
    FourierOptions fopt;
    const auto s2 = fourier_project([](const Vec& p) { return std::sin(2 * p[0]); }, 1, 4, fopt);
    double worst = 0.0;
    for (const auto& [k, ab] : s2.coef) {
      const double wa = 0.0, wb = (k[0] == 2) ? 1.0 : 0.0;
      worst = std::max({worst, std::abs(ab.first - wa), std::abs(ab.second - wb)});
    }
    auto smooth = [](const Vec& p) {
      return std::exp(std::sin(p[0])) + 0.3 * std::cos(2 * p[0] + 0.7);
    };
    const CompactBox K = CompactBox::full_torus(1, 2001);
    bool decreasing = true;
    double lmin = 1e300, lmax = 0.0;
    double prev = 1e300;
    for (int n : {4, 8, 16, 32}) {
      const auto rep = fourier_report(fourier_project(smooth, 1, n, fopt), smooth, K);
      if (!(rep.sup_error < prev)) decreasing = false;
      prev = rep.sup_error;
      lmin = std::min(lmin, rep.ell);
      lmax = std::max(lmax, rep.ell);
    }
    const bool pass = worst < 1e-12 && decreasing && (lmax - lmin) / lmax < 0.20;
    out.push_back({"approximation/fourier_project", pass,
                   "sin2 coeff err " + fmt_double(worst) + ", ladder decreasing, spread " +
                       fmt_double((lmax - lmin) / lmax)});
  }

  {  // Laplace projection examples
    const auto sx3 = laplace_project([](const Vec& x) { return x[2]; }, 3);
    double worst = 0.0;
    for (const auto& t : sx3.terms()) {
      const bool is_x3 = t.degree == 1 && t.basis.poly.terms().size() == 1 &&
                         t.basis.poly.terms().begin()->first[2] == 1;
      worst = std::max(worst, std::abs(t.coef - (is_x3 ? 1.0 : 0.0)));
    }
    const auto sq = laplace_project([](const Vec& x) { return x[2] * x[2]; }, 4);
    std::mt19937_64 rng(5);
    double worst2 = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
      const Vec x = vd::random_unit3(rng);
      worst2 = std::max(worst2, std::abs(sq.eval(x) - x[2] * x[2]));
    }
    out.push_back({"approximation/laplace_project", worst < 1e-10 && worst2 < 1e-10,
                   "x3 coeff err " + fmt_double(worst) + ", x3^2 eval err " + fmt_double(worst2)});
  }

  {  // projection idempotence in all three bases
    HermiteOptions opt;
    opt.nodes_per_axis = 64;
    const auto base = hermite_coeffs(
        [](const Vec& z) { return (1.0 + z[0]) * std::exp(-0.5 * z[0] * z[0]); }, 1, 5, opt);
    const auto twice =
        hermite_coeffs([&](const Vec& z) { return base.eval_weighted(z); }, 1, 5, opt);
    double worst = 0.0;
    for (const auto& [m, c] : base.coef) worst = std::max(worst, std::abs(twice.coef.at(m) - c));

    const auto fb = fourier_project(
        [](const Vec& p) { return 0.3 + std::sin(p[0]) - 0.2 * std::cos(3 * p[0]); }, 1, 4, {});
    const auto fb2 = fourier_project([&](const Vec& p) { return fb.eval(p); }, 1, 4, {});
    for (const auto& [k, ab] : fb.coef) {
      const auto it = fb2.coef.find(k);
      const double a2 = it == fb2.coef.end() ? 0.0 : it->second.first;
      const double b2 = it == fb2.coef.end() ? 0.0 : it->second.second;
      worst = std::max({worst, std::abs(ab.first - a2), std::abs(ab.second - b2)});
    }

    const auto lp = laplace_project([](const Vec& x) { return x[0] * x[1] + 0.5 * x[2]; }, 3);
    const auto lp2 = laplace_project([&](const Vec& x) { return lp.eval(x); }, 3);
    for (std::size_t i = 0; i < lp.terms().size(); ++i)
      worst = std::max(worst, std::abs(lp.terms()[i].coef - lp2.terms()[i].coef));

    out.push_back({"approximation/projection_idempotence", worst < 1e-11,
                   "max coeff drift " + fmt_double(worst)});
  }

  return out;
}

// --- dynamics ----------------------------------------------------------------

inline std::vector<PropertyResult> verify_dynamics() {
  std::vector<PropertyResult> out;
  std::mt19937_64 rng(20240904);
  std::normal_distribution<double> g;

  auto random_ensemble2 = [&](int N) {
    std::vector<Vec> pts;
    for (int k = 0; k < N; ++k) {
      Vec p(2);
      p << g(rng), g(rng);
      pts.push_back(p);
    }
    return Ensemble(ManifoldSpec::euclidean(2), pts);
  };

  {  // zero schedule is the identity flow; constant v translates exactly
    const ControlFamily fam = ControlFamily::gh(2);
    const Ensemble e = random_ensemble2(3);
    const auto traj0 = flow_ensemble(fam, ControlSchedule::zero(1.0, 5, 4), e);
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) worst = std::max(worst, (traj0.terminal(k) - e.points[k]).norm());
    Mat U = Mat::Zero(5, 4);
    U.col(2).setConstant(0.7);
    U.col(3).setConstant(-0.4);
    const auto traj1 = flow_ensemble(fam, ControlSchedule(2.0, U), e);
    Vec c(2);
    c << 0.7, -0.4;
    for (int k = 0; k < 3; ++k)
      worst = std::max(worst, (traj1.terminal(k) - (e.points[k] + 2.0 * c)).norm());
    out.push_back({"dynamics/trivial_flows", worst < 1e-12, "max err " + fmt_double(worst)});
  }

  {  // torus rotation by 2 pi returns the ensemble
    const ControlFamily fam = ControlFamily::torus1();
    std::vector<Vec> pts;
    for (double v : {0.3, 1.9, 5.0}) {
      Vec p(1);
      p[0] = v;
      pts.push_back(p);
    }
    Mat U = Mat::Zero(10, 3);
    U.col(0).setConstant(1.0);
    const auto traj = flow_ensemble(fam, ControlSchedule(kTwoPi, U), Ensemble(fam.manifold(), pts));
    double worst = 0.0;
    for (int k = 0; k < 3; ++k)
      worst = std::max(worst, std::abs(wrap_angle(traj.terminal(k)[0]) - pts[k][0]));
    out.push_back({"dynamics/torus_rotation", worst < 1e-10, "max err " + fmt_double(worst)});
  }

  {  // RK4 order: halving h cuts the error ~16x (ratio in [12, 20])
    const ControlFamily fam = ControlFamily::gh(2);
    const Ensemble e = random_ensemble2(2);
    Mat U(8, 4);
    for (int j = 0; j < U.rows(); ++j)
      for (int i = 0; i < U.cols(); ++i) U(j, i) = std::sin(0.8 * j + i);
    const ControlSchedule sched(1.0, U);
    const auto ref = flow_ensemble(fam, sched, e, 40);
    const auto c1 = flow_ensemble(fam, sched, e, 2);
    const auto c2 = flow_ensemble(fam, sched, e, 4);
    double e1 = 0.0, e2 = 0.0;
    for (int k = 0; k < 2; ++k) {
      e1 = std::max(e1, (c1.terminal(k) - ref.terminal(k)).norm());
      e2 = std::max(e2, (c2.terminal(k) - ref.terminal(k)).norm());
    }
    const double ratio = e1 / e2;
    out.push_back({"dynamics/rk4_order", ratio > 12.0 && ratio < 20.0,
                   "error ratio " + fmt_double(ratio)});
  }

  {  // discrete gradient vs central differences
    const ControlFamily fam = ControlFamily::gh(2);
    const Ensemble e = random_ensemble2(3);
    std::vector<Vec> targets;
    for (int k = 0; k < 3; ++k) {
      Vec t(2);
      t << g(rng), g(rng);
      targets.push_back(t);
    }
    Mat U(6, 4);
    for (int j = 0; j < 6; ++j)
      for (int i = 0; i < 4; ++i) U(j, i) = 0.3 * g(rng);
    const ControlSchedule sched(1.0, U);
    const auto grad =
        discrete_gradient(fam, sched, e, targets, OutputMap::identity(), 1e-4, 4);
    const TrainingProblem prob(fam, e, targets, OutputMap::identity(), 1e-4, 1.0, 6, 4);
    double worst = 0.0;
    std::uniform_int_distribution<int> jd(0, 5), id(0, 3);
    for (int trial = 0; trial < 10; ++trial) {
      const int j = jd(rng), i = id(rng);
      const double eps = 1e-6;
      Mat Up = U, Um = U;
      Up(j, i) += eps;
      Um(j, i) -= eps;
      const double fd =
          (loss(prob, ControlSchedule(1.0, Up)) - loss(prob, ControlSchedule(1.0, Um))) / (2 * eps);
      worst = std::max(worst, std::abs(grad.gradient(j, i) - fd) / std::max(1e-12, std::abs(fd)));
    }
    out.push_back({"dynamics/discrete_gradient_vs_fd", worst < 1e-7,
                   "max rel err " + fmt_double(worst)});
  }

  {  // order preservation on R^1 and cyclic order on T^1 (spot check)
    bool ok = true;
    int violations = 0;
    for (int trial = 0; trial < 50; ++trial) {
      Mat U(5, 2);
      for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 2; ++i) U(j, i) = 1.5 * g(rng);
      std::vector<Vec> pts;
      for (int k = 0; k < 4; ++k) {
        Vec p(1);
        p[0] = 2.0 * g(rng);
        pts.push_back(p);
      }
      std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) { return a[0] < b[0]; });
      bool distinct = true;
      for (int k = 0; k + 1 < 4; ++k)
        if (pts[k + 1][0] - pts[k][0] < 1e-6) distinct = false;
      if (!distinct) continue;
      const auto traj = flow_ensemble(ControlFamily::gh(1), ControlSchedule(1.0, U),
                                      Ensemble(ManifoldSpec::euclidean(1), pts));
      for (int idx = 0; idx <= traj.total_substeps(); ++idx)
        for (int k = 0; k + 1 < 4; ++k)
          if (!(traj.state(k, idx)[0] < traj.state(k + 1, idx)[0])) ++violations;
    }
    ok = violations == 0;
    out.push_back({"dynamics/order_preservation_r1", ok,
                   std::to_string(violations) + " violations in 50 schedules"});
  }

  {  // sphere: tangent fields keep |z| = 1 up to tiny per-substep drift
    const ControlFamily fam = ControlFamily::sphere_symp();
    std::mt19937_64 srng(11);
    std::vector<Vec> pts;
    for (int k = 0; k < 3; ++k) pts.push_back(verify_detail::random_unit3(srng));
    Mat U(6, 5);
    for (int j = 0; j < 6; ++j)
      for (int i = 0; i < 5; ++i) U(j, i) = g(srng);
    const auto traj = flow_ensemble(fam, ControlSchedule(1.0, U), Ensemble(fam.manifold(), pts));
    out.push_back({"dynamics/sphere_projection_drift", traj.max_projection_drift < 1e-10,
                   "max drift " + fmt_double(traj.max_projection_drift)});
  }

  return out;
}

inline std::vector<PropertyResult> verify_suite(const std::string& name) {
  if (name == "geometry") return verify_geometry();
  if (name == "fields") return verify_fields();
  if (name == "approximation") return verify_approximation();
  if (name == "dynamics") return verify_dynamics();
  if (name == "all") {
    auto all = verify_geometry();
    for (auto&& v : verify_fields()) all.push_back(std::move(v));
    for (auto&& v : verify_approximation()) all.push_back(std::move(v));
    for (auto&& v : verify_dynamics()) all.push_back(std::move(v));
    return all;
  }
  throw std::invalid_argument("unknown verify suite: " + name);
}

}  // namespace enscon
