// geometry: polynomials on R^3, spherical calculus, harmonic machinery

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "enscon/harmonics.hpp"
#include "enscon/sphere_ops.hpp"
#include "enscon/vector_field.hpp"

using namespace enscon;

namespace {

std::mt19937_64 rng(42);

Vec random_unit() {
  std::normal_distribution<double> g;
  Vec x(3);
  do {
    for (int i = 0; i < 3; ++i) x[i] = g(rng);
  } while (x.norm() < 1e-3);
  return x / x.norm();
}

Vec random_tangent(const Vec& x) {
  std::normal_distribution<double> g;
  Vec v(3);
  for (int i = 0; i < 3; ++i) v[i] = g(rng);
  v -= v.dot(x) * x;
  return v;
}

HarmonicPolynomial random_harmonic(int k) {
  const auto basis = solid_harmonic_basis(k);
  std::uniform_int_distribution<int> coeff(-3, 3);
  while (true) {
    Polynomial3 p(3);
    bool nonzero = false;
    for (const auto& b : basis) {
      const int c = coeff(rng);
      if (c) {
        p = p + b.poly * Rational(c);
        nonzero = true;
      }
    }
    if (nonzero) return HarmonicPolynomial(std::move(p), k);
  }
}

}  // namespace

TEST_CASE("laplacian3 on the spec examples") {
  const Polynomial3 x1 = p3_var(0), x2 = p3_var(1), x3 = p3_var(2);

  CHECK(laplacian3(x1 * x1 - x2 * x2).is_zero());

  const Polynomial3 lap = laplacian3(x1 * x1);
  REQUIRE(lap.terms().size() == 1);
  CHECK(lap.terms().begin()->second == Rational(2));
  CHECK(lap.terms().begin()->first == Exponents{});

  CHECK(laplacian3(x3 * (x1 * x1 - x2 * x2)).is_zero());
}

TEST_CASE("spherical gradient") {
  const Polynomial3 x3 = p3_var(2);

  SECTION("gradient of x3 vanishes at the pole") {
    Vec pole(3);
    pole << 0, 0, 1;
    const auto v = spherical_gradient(x3, sphere_point(pole));
    CHECK(v.components.norm() < 1e-15);
  }
  SECTION("gradient of x3 at the equator is e3") {
    Vec x(3);
    x << 1, 0, 0;
    const auto v = spherical_gradient(x3, sphere_point(x));
    Vec e3(3);
    e3 << 0, 0, 1;
    CHECK((v.components - e3).norm() < 1e-15);
  }
  SECTION("matches a central-difference oracle along tangent directions") {
    const Polynomial3 F = p3_var(0) * p3_var(0) - p3_var(1) * p3_var(1);
    for (int trial = 0; trial < 20; ++trial) {
      const Vec x = random_unit();
      const Vec grad = spherical_gradient(F, sphere_point(x)).components;
      for (int dir = 0; dir < 2; ++dir) {
        Vec eta = random_tangent(x);
        if (eta.norm() < 1e-8) continue;
        eta /= eta.norm();
        const double eps = 1e-6;
        const Vec xp = (x + eps * eta).normalized();
        const Vec xm = (x - eps * eta).normalized();
        const double fd = (F.eval(xp) - F.eval(xm)) / (2 * eps);
        CHECK(std::abs(grad.dot(eta) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
      }
    }
  }
  SECTION("rejects points off the sphere") {
    Vec bad(3);
    bad << 1.5, 0, 0;
    CHECK_THROWS_AS(Point(ManifoldSpec::sphere2(), bad), std::invalid_argument);
  }
}

TEST_CASE("hamiltonian field") {
  const Polynomial3 x3 = p3_var(2);

  SECTION("x cross e3 at (1,0,0)") {
    Vec x(3);
    x << 1, 0, 0;
    const auto v = hamiltonian_field(x3, sphere_point(x));
    Vec want(3);
    want << 0, -1, 0;
    CHECK((v.components - want).norm() < 1e-15);
  }
  SECTION("vanishes at the pole") {
    Vec pole(3);
    pole << 0, 0, 1;
    CHECK(hamiltonian_field(x3, sphere_point(pole)).components.norm() < 1e-15);
  }
  SECTION("sigma pairing: <ham(phi), eta> equals the mixed product") {
    const Polynomial3 phi = p3_var(0) * p3_var(1);
    const Vec x = random_unit();
    const Point p = sphere_point(x);
    const Vec h = hamiltonian_field(phi, p).components;
    const Vec grad = eval_gradient3(phi, x);
    for (int trial = 0; trial < 5; ++trial) {
      const Vec eta = random_tangent(x);
      Mat M(3, 3);
      M.col(0) = x;
      M.col(1) = grad;
      M.col(2) = eta;
      const double mixed = M.determinant();
      CHECK(std::abs(h.dot(eta) - mixed) <= 1e-12 * std::max(1.0, std::abs(mixed)));
    }
  }
}

TEST_CASE("spherical divergence") {
  SECTION("Hamiltonian fields are divergence-free") {
    const FieldAny ham = FieldAny(hamiltonian_field3(p3_var(2)));
    for (int trial = 0; trial < 20; ++trial)
      CHECK(std::abs(spherical_divergence(ham, sphere_point(random_unit()))) < 1e-14);
  }
  SECTION("the Euler field projects to zero") {
    // pr_S(Ex) = 0 on the sphere, and div E - 3 <E, x> = 3 - 3 = 0
    AnalyticField euler{[](const Vec& y) { return y; },
                        [](const Vec& y) { return Mat::Identity(y.size(), y.size()); }};
    for (int trial = 0; trial < 10; ++trial)
      CHECK(std::abs(spherical_divergence(euler, sphere_point(random_unit()))) < 1e-14);
  }
  SECTION("Laplacian of x3 at the pole is -2, confirmed by a cap-flux oracle") {
    // grad_S x3 extended radially linearly: X(y) = |y| e3 - (y3 / |y|) y
    AnalyticField X{
        [](const Vec& y) -> Vec {
          const double n = y.norm();
          Vec e3(3);
          e3 << 0, 0, 1;
          return n * e3 - (y[2] / n) * y;
        },
        [](const Vec& y) -> Mat {
          const double n = y.norm();
          Vec e3(3);
          e3 << 0, 0, 1;
          return e3 * (y / n).transpose() - (y / n) * e3.transpose() +
                 (y[2] / (n * n * n)) * y * y.transpose() - (y[2] / n) * Mat::Identity(3, 3);
        }};
    Vec pole(3);
    pole << 0, 0, 1;
    const double got = spherical_divergence(X, sphere_point(pole));
    CHECK(got == Catch::Approx(-2.0).margin(1e-12));

    // flux of x cross X through the boundary of a small cap around the pole,
    // divided by the cap area, estimates div_S at the pole
    const double th0 = 0.02;
    const int P = 400;
    double flux = 0.0;
    for (int i = 0; i < P; ++i) {
      const double ph = kTwoPi * i / P;
      Vec x(3), dx(3);
      x << std::sin(th0) * std::cos(ph), std::sin(th0) * std::sin(ph), std::cos(th0);
      dx << -std::sin(th0) * std::sin(ph), std::sin(th0) * std::cos(ph), 0.0;
      const Vec v = X.value(x);
      const Vec cross = Eigen::Vector3d(x).cross(Eigen::Vector3d(v));
      flux += cross.dot(dx) * kTwoPi / P;
    }
    const double area = kTwoPi * (1.0 - std::cos(th0));
    CHECK(flux / area == Catch::Approx(-2.0).margin(2e-3));
  }
}

TEST_CASE("Euler identities for homogeneous harmonics") {
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + trial % 4;
    const auto F = random_harmonic(k);
    std::normal_distribution<double> g;
    Vec x(3);
    for (int i = 0; i < 3; ++i) x[i] = g(rng);
    const Vec grad = eval_gradient3(F.poly, x);
    const double f = F.poly.eval(x);

    CHECK(std::abs(grad.dot(x) - k * f) <= 1e-12 * std::max(1.0, std::abs(k * f)));

    Mat H(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) H(i, j) = F.poly.partial(i).partial(j).eval(x);
    const Vec want = double(k - 1) * grad;
    CHECK((H * x - want).norm() <= 1e-12 * std::max(1.0, want.norm()));
  }
}

TEST_CASE("divergence of the bracket of spherical gradients") {
  SECTION("general identity at random points") {
    for (int trial = 0; trial < 100; ++trial) {
      const int k = 1 + trial % 4, l = 1 + (trial / 4) % 4;
      const auto F = random_harmonic(k), G = random_harmonic(l);
      const FieldAny B = lie_bracket(FieldAny(spherical_gradient_field(F.poly)),
                                     FieldAny(spherical_gradient_field(G.poly)));
      const Vec x = random_unit();
      const double got = spherical_divergence(B, sphere_point(x));
      const Vec gF = eval_gradient3(F.poly, x), gG = eval_gradient3(G.poly, x);
      const double want =
          (k - l) * (k + l + 3) * (gF.dot(gG) - double(k) * l * F.poly.eval(x) * G.poly.eval(x));
      // relative to the pre-cancellation magnitude of the identity's terms
      const double scale = (k + l + 3) * (gF.norm() * gG.norm() +
                                          k * l * std::abs(F.poly.eval(x) * G.poly.eval(x)));
      CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, scale));
    }
  }
  SECTION("corollary: g = x3, f = Re((x1 + i x2)^k)") {
    for (int k = 1; k <= 2; ++k) {
      const auto [re, im] = detail::sectoral_pair(k);
      (void)im;
      const FieldAny B = lie_bracket(FieldAny(spherical_gradient_field(re)),
                                     FieldAny(spherical_gradient_field(p3_var(2))));
      for (int trial = 0; trial < 25; ++trial) {
        const Vec x = random_unit();
        const double got = spherical_divergence(B, sphere_point(x));
        const double want = -(k - 1.0) * (k + 4.0) * k * x[2] * re.eval(x);
        if (k == 1) {
          CHECK(std::abs(got) < 1e-12);
        } else {
          CHECK(got == Catch::Approx(-12.0 * x[2] * re.eval(x)).margin(1e-10));
          CHECK(got == Catch::Approx(want).margin(1e-10));
        }
      }
    }
  }
}

TEST_CASE("gradient and Hamiltonian fields are orthogonal") {
  for (int trial = 0; trial < 50; ++trial) {
    const auto F = random_harmonic(1 + trial % 4);
    const Point x = sphere_point(random_unit());
    const Vec grad = spherical_gradient(F.poly, x).components;
    const Vec ham = hamiltonian_field(F.poly, x).components;
    CHECK(std::abs(grad.dot(ham)) < 1e-12 * std::max(1.0, grad.norm() * ham.norm()));
  }
}

TEST_CASE("harmonic polynomial invariants") {
  SECTION("non-homogeneous input is rejected") {
    CHECK_THROWS_AS(HarmonicPolynomial(p3_var(0) + p3_var(0) * p3_var(1), 2),
                    std::invalid_argument);
  }
  SECTION("non-harmonic input is rejected") {
    CHECK_THROWS_AS(HarmonicPolynomial(p3_var(0) * p3_var(0), 2), std::invalid_argument);
  }
  SECTION("the default basis choices") {
    CHECK(harmonic_l1().degree == 1);
    CHECK(harmonic_q().degree == 2);
    CHECK(harmonic_c().degree == 3);
  }
  SECTION("solid harmonic bases are exactly harmonic, degrees 0..8") {
    for (int l = 0; l <= 8; ++l) {
      const auto basis = solid_harmonic_basis(l);
      CHECK(basis.size() == std::size_t(2 * l + 1));
      for (const auto& h : basis) CHECK(laplacian3(h.poly).is_zero());
    }
  }
}

TEST_CASE("points and tangent vectors enforce manifold constraints") {
  SECTION("torus coordinates reduce to [0, 2 pi)") {
    Vec a(2);
    a << -1.0, 7.5;
    const Point p(ManifoldSpec::torus(2), a);
    CHECK(p.coords[0] == Catch::Approx(kTwoPi - 1.0));
    CHECK(p.coords[1] == Catch::Approx(7.5 - kTwoPi));
  }
  SECTION("sphere tangency is enforced") {
    Vec x(3);
    x << 0, 0, 1;
    Vec v(3);
    v << 0, 0, 0.5;  // radial, not tangent
    CHECK_THROWS_AS(TangentVector(sphere_point(x), v), std::invalid_argument);
  }
}

TEST_CASE("rational arithmetic") {
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(2, 4)).str() == "1/2");
  CHECK(Rational::parse("-7/3") == Rational(-7, 3));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}
