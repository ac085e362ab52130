#include <doctest.h>

#include "bmtk/errors.hpp"
#include "bmtk/gauge.hpp"
#include "helpers.hpp"

using namespace bmtk;

TEST_SUITE("gauge") {

TEST_CASE("random Omega is antisymmetric, deterministic and normalized") {
  const GridSpec spec{3, 16};
  const FormField a = random_omega(3, spec, 0.02, 9), b = random_omega(3, spec, 0.02, 9);
  const FormField c = random_omega(3, spec, 0.02, 10);
  CHECK(form_besov_morrey_norm(a, BallFamily::standard(spec)) == doctest::Approx(0.02).epsilon(1e-12));
  double diff = 0.0, other = 0.0, skew = 0.0;
  for (int k = 0; k < a.size(); ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        diff = std::max(diff, testing::max_diff(a.component(k).at(i, j), b.component(k).at(i, j)));
        other = std::max(other, testing::max_diff(a.component(k).at(i, j), c.component(k).at(i, j)));
        skew = std::max(skew, testing::max_diff(a.component(k).at(i, j), -1.0 * a.component(k).at(j, i)));
      }
  CHECK(diff == 0.0);
  CHECK(other > 0.0);
  CHECK(skew == 0.0);
  CHECK_THROWS_AS(random_omega(1, spec, 0.01, 1), UsageError);
  CHECK_THROWS_AS(random_omega(2, spec, -1.0, 1), UsageError);
}

TEST_CASE("zero Omega gives the trivial pair") {
  const GridSpec spec{3, 16};
  const GaugePair g = construct_gauge(random_omega(2, spec, 0.0, 1));
  CHECK(g.iterations == 0);
  CHECK(g.residual == 0.0);
  CHECK(g.estimates.dist_so == doctest::Approx(0.0));
  CHECK(g.estimates.grad_a_ratio == 0.0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(g.A.at(i, j).max_abs() == (i == j ? 1.0 : 0.0));
}

TEST_CASE("small Omega converges with a bounded gauge") {
  const GridSpec spec{3, 16};
  const FormField omega = random_omega(2, spec, 0.02, 3);
  const GaugePair g = construct_gauge(omega);
  CHECK(g.residual <= 1e-8);
  CHECK(g.iterations <= 10);
  CHECK(gauge_residual(g.A, g.B, omega) == doctest::Approx(g.residual).epsilon(1e-9));
  for (double c : g.contraction) CHECK(c < 0.5);
  CHECK(g.estimates.min_det > 0.9);
  CHECK(g.estimates.grad_a_ratio < 2.0);
  CHECK(g.estimates.grad_b_ratio < 2.0);

  GaugeOptions damped;
  damped.damping = 0.5;
  const GaugePair h = construct_gauge(omega, damped);
  CHECK(h.residual <= 1e-8);
  CHECK(h.iterations > g.iterations);
}

TEST_CASE("option validation and failure modes") {
  const GridSpec spec{2, 16};
  const FormField omega = random_omega(2, spec, 0.04, 5);
  GaugeOptions opt;
  opt.epsilon_max = 0.03;
  CHECK_THROWS_AS(construct_gauge(omega, opt), UsageError);
  opt = {};
  opt.damping = 0.2;
  CHECK_THROWS_AS(construct_gauge(omega, opt), UsageError);
  opt = {};
  opt.max_iter = 0;
  CHECK_THROWS_AS(construct_gauge(omega, opt), NoConvergence);
  CHECK_THROWS_AS(construct_gauge(FormField(spec, 2, 2, 2)), UsageError);
}

TEST_CASE("distance to SO(m) shrinks with epsilon") {
  const GridSpec spec{3, 16};
  double prev = INFINITY;
  for (double eps : {0.04, 0.02, 0.01}) {
    const GaugePair g = construct_gauge(random_omega(2, spec, eps, 7));
    CHECK(g.estimates.dist_so < prev / 2.0);
    prev = g.estimates.dist_so;
  }
}

TEST_CASE("conservation law of harmonic data") {
  const GridSpec spec{3, 16};
  std::vector<Potential> u(2);
  for (int i = 0; i < 2; ++i) {
    u[i].periodic = GridFunction(spec);
    u[i].slope[i] = 1.0;
  }
  const GaugePair g = construct_gauge(random_omega(2, spec, 0.0, 1));
  CHECK(conservation_residual(g.A, g.B, u) < 1e-13);

  std::vector<Potential> v = u;
  for (int i = 0; i < 2; ++i) v[i].periodic = testing::smooth_random(spec, 20 + i, 3);
  const double r1 = conservation_residual(g.A, g.B, v);
  for (auto& p : v) {
    p.periodic *= 3.0;
    for (auto& s : p.slope) s *= 3.0;
  }
  CHECK(conservation_residual(g.A, g.B, v) == doctest::Approx(3.0 * r1).epsilon(1e-10));
}

TEST_CASE("manufactured system and conservation") {
  const GridSpec spec{3, 32};
  const auto u = manufactured_potentials(spec, 0.001, 1);
  const ManufacturedSystem sys = manufactured_system(u);
  CHECK(sys.degenerate_fraction == 0.0);
  CHECK(sys.relative_residual < 1e-4);
  const GaugePair g = construct_gauge(sys.omega);
  CHECK(conservation_residual(g.A, g.B, u) < 1e-6);

  std::vector<Potential> flat(2);
  for (auto& p : flat) p.periodic = GridFunction(spec);
  CHECK_THROWS_AS(manufactured_system(flat), DegenerateGradient);

  const ConservationRow row = conservation_run(3, 32, 0.001, 1);
  CHECK(row.points == 32);
  CHECK(row.gauge_residual <= 1e-8);
  CHECK(conservation_csv({row}).rfind("N,", 0) == 0);
}

}
