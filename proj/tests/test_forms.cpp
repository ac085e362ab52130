#include <doctest.h>

#include "bmtk/errors.hpp"
#include "bmtk/forms.hpp"
#include "helpers.hpp"

using namespace bmtk;

namespace {

FormField random_form(const GridSpec& spec, int k, int rows, int cols, unsigned seed) {
  FormField w(spec, k, rows, cols);
  for (int c = 0; c < w.size(); ++c)
    for (auto& e : w.component(c).entries()) e = testing::smooth_random(spec, seed++, 5);
  return w;
}

double max_diff(const FormField& a, const FormField& b) {
  FormField d = a;
  d -= b;
  double m = 0.0;
  for (const auto& f : d.flat_components()) m = std::max(m, f.max_abs());
  return m;
}

double max_abs(const FormField& a) {
  double m = 0.0;
  for (const auto& f : a.flat_components()) m = std::max(m, f.max_abs());
  return m;
}

}  // namespace

TEST_SUITE("forms") {

TEST_CASE("multi-index enumeration") {
  CHECK(multi_indices(3, 0) == std::vector<unsigned>{0u});
  CHECK(multi_indices(3, 1) == std::vector<unsigned>{1u, 2u, 4u});
  CHECK(multi_indices(3, 2) == std::vector<unsigned>{3u, 5u, 6u});
  CHECK(multi_indices(3, 3) == std::vector<unsigned>{7u});
  CHECK(multi_indices(2, 3).empty());
}

TEST_CASE("d of d vanishes") {
  for (int n : {2, 3}) {
    const GridSpec spec{n, 16};
    for (int k = 0; k + 2 <= n; ++k) {
      const FormField w = random_form(spec, k, 2, 1, 10u * k + n);
      const FormField dd = exterior_derivative(exterior_derivative(w));
      CHECK(max_abs(dd) < 1e-10);
    }
  }
}

TEST_CASE("double star is a signed identity") {
  for (int n : {2, 3}) {
    const GridSpec spec{n, 8};
    for (int k = 0; k <= n; ++k) {
      const FormField w = random_form(spec, k, 1, 2, 3u + k);
      FormField ss = hodge_star(hodge_star(w));
      const double sign = (k * (n - k)) % 2 == 0 ? 1.0 : -1.0;
      FormField expect = w;
      expect *= sign;
      CHECK(max_diff(ss, expect) == 0.0);
    }
  }
}

TEST_CASE("codifferential signs") {
  const GridSpec spec{3, 16};
  const GridFunction u = testing::smooth_random(spec, 7, 4);
  MatrixField m(spec, 1, 1);
  m.at(0, 0) = u;
  const FormField f = FormField::scalar(m);
  const FormField lap = codifferential(exterior_derivative(f));
  CHECK(testing::max_diff(lap.component(0).at(0, 0), negative_laplacian(u)) < 1e-9);

  FormField a = random_form(spec, 1, 1, 1, 40);
  GridFunction div(spec);
  for (int c = 0; c < 3; ++c) div += partial_derivative(a.component(c).at(0, 0), c);
  const FormField da = codifferential(a);
  CHECK(testing::max_diff(da.component(0).at(0, 0), -1.0 * div) < 1e-10);

  // d* maps 3-forms to 2-forms and d* d* = 0.
  const FormField w = random_form(spec, 3, 1, 1, 50);
  CHECK(max_abs(codifferential(codifferential(w))) < 1e-10);
  CHECK_THROWS_AS(codifferential(f), UsageError);
}

TEST_CASE("wedge of 1-forms") {
  const GridSpec spec{3, 16};
  MatrixField x(spec, 1, 1), y(spec, 1, 1);
  x.at(0, 0) = GridFunction(spec, 2.0);
  y.at(0, 0) = GridFunction(spec, 3.0);
  FormField a(spec, 1, 1, 1), b(spec, 1, 1, 1);
  a.by_mask(1u) = x;  // 2 dx0
  b.by_mask(2u) = y;  // 3 dx1
  const FormField ab = wedge(a, b), ba = wedge(b, a);
  CHECK(ab.degree() == 2);
  CHECK(ab.by_mask(3u).at(0, 0)[0] == doctest::Approx(6.0));
  CHECK(ba.by_mask(3u).at(0, 0)[0] == doctest::Approx(-6.0));
  CHECK(max_abs(wedge(a, a)) == 0.0);
  CHECK_THROWS_AS(wedge(ab, ab), UsageError);
}

TEST_CASE("Hodge decomposition") {
  const GridSpec spec{3, 16};
  FormField w = random_form(spec, 1, 2, 2, 60);
  for (int c = 0; c < 3; ++c)
    for (auto& e : w.component(c).entries()) e += GridFunction(spec, 0.25 * (c + 1));
  const HodgeParts h = hodge_decompose(w);
  FormField sum = h.exact;
  sum += h.coexact;
  sum += h.harmonic;
  CHECK(max_diff(sum, w) < 1e-12);
  const double scale = l2_norm(w) * l2_norm(w);
  CHECK(std::abs(l2_inner(h.exact, h.coexact)) < 1e-12 * scale);
  CHECK(std::abs(l2_inner(h.exact, h.harmonic)) < 1e-12 * scale);
  CHECK(std::abs(l2_inner(h.coexact, h.harmonic)) < 1e-12 * scale);
  CHECK(max_abs(exterior_derivative(h.exact)) < 1e-10);
  CHECK(max_abs(codifferential(h.coexact)) < 1e-10);
  CHECK(h.harmonic.component(1).at(0, 1)[5] == doctest::Approx(w.component(1).at(0, 1).mean()).epsilon(1e-12));
}

TEST_CASE("matrix products") {
  const GridSpec spec{2, 16};
  MatrixField a(spec, 2, 2);
  for (auto& e : a.entries()) e = testing::smooth_random(spec, 70, 3);
  const MatrixField id = MatrixField::identity(spec, 2);
  const MatrixField ai = matmul(a, id);
  for (int i = 0; i < 4; ++i) CHECK(testing::max_diff(ai.entries()[i], a.entries()[i]) < 1e-12);
  CHECK_THROWS_AS(matmul(a, MatrixField(spec, 3, 1)), UsageError);
}

}
