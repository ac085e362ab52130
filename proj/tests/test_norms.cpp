#include <doctest.h>

#include "bmtk/corpus.hpp"
#include "bmtk/errors.hpp"
#include "bmtk/norms.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace bmtk;

namespace {

GridFunction single_cell(const GridSpec& spec, std::size_t at) {
  GridFunction f(spec);
  f[at] = 1.0;
  return f;
}

double plain_lp(const GridFunction& f, double p) {
  double s = 0.0;
  for (double v : f.values()) s += std::pow(std::abs(v), p);
  return std::pow(s * f.spec().cell_volume(), 1.0 / p);
}

}  // namespace

TEST_SUITE("norms") {

TEST_CASE("space validation messages") {
  CHECK_THROWS_WITH_AS((SpaceSpec{Family::Morrey, 0, 2, 3, 2}.validate()), doctest::Contains("requires q ≤ p"), UsageError);
  CHECK_THROWS_AS((SpaceSpec{Family::TriebelLizorkin, 0, INFINITY, 2, 2}.validate()), UsageError);
  CHECK_THROWS_AS((SpaceSpec{Family::BesovMorrey, 0, 3, 2, 0.5}.validate()), UsageError);
  CHECK_NOTHROW((SpaceSpec{Family::BesovMorrey, -1, 3, 2, INFINITY}.validate()));
  CHECK(family_from_string("BesovMorrey") == Family::BesovMorrey);
  CHECK_THROWS_AS(family_from_string("Sobolev"), UsageError);
}

TEST_CASE("ball families") {
  const GridSpec spec{3, 128};
  const auto b = BallFamily::standard(spec);
  CHECK(b.stride == 4);
  CHECK(b.half_widths == std::vector<int>{64, 32, 16, 8, 4, 2});
  for (int h : b.half_widths) CHECK(h * spec.spacing() <= spec.length / 2);
  BallFamily bad = b;
  bad.half_widths.push_back(65);
  CHECK_THROWS_AS(bad.validate(spec), UsageError);
}

TEST_CASE("Lp norm") {
  const GridSpec spec{2, 32};
  CHECK(lp_norm(GridFunction(spec, 1.0), 2.0) == doctest::Approx(spec.length).epsilon(1e-14));
  CHECK(lp_norm(GridFunction(spec), 3.0) == 0.0);
  CHECK_THROWS_AS(lp_norm(GridFunction(spec), 0.5), UsageError);
  const auto f = testing::smooth_random(spec, 1), g = testing::smooth_random(spec, 2);
  for (double p : {1.0, 1.5, 2.0, 4.0, double(INFINITY)}) {
    CHECK(lp_norm(f + g, p) <= lp_norm(f, p) + lp_norm(g, p) + 1e-12);
  }
  CHECK(lp_norm(f, INFINITY) == f.max_abs());
  CHECK(lp_norm(f, 3.0) == doctest::Approx(plain_lp(f, 3.0)).epsilon(1e-13));
}

TEST_CASE("Morrey norm equals exhaustive enumeration") {
  const GridSpec spec{2, 16};
  const BallFamily balls = BallFamily::exhaustive(spec);
  std::vector<GridFunction> fields = corpus_bumps(spec);
  fields.resize(5);
  fields.push_back(single_cell(spec, 5 * 16 + 9));
  fields.push_back(GridFunction(spec, 1.0));
  for (const auto& f : fields)
    for (auto [p, q] : {std::pair{2.0, 2.0}, {3.0, 2.0}, {4.0, 1.0}, {2.0, 1.5}}) {
      const double lib = morrey_norm(f, p, q, balls);
      const double ref = oracle::morrey({f}, p, q, 1, balls.half_widths);
      CHECK(lib == ref);
    }
  // p = q on a constant: the largest cube, weight one.
  const double c = morrey_norm(GridFunction(spec, 1.0), 2.0, 2.0, balls);
  CHECK(c == doctest::Approx(std::pow(spec.length, 1.0)).epsilon(1e-14));
  CHECK(morrey_norm(GridFunction(spec), 3.0, 2.0, balls) == 0.0);
  CHECK_THROWS_AS(morrey_norm(GridFunction(spec), 2.0, 3.0, balls), UsageError);
}

TEST_CASE("single cell Morrey norm is attained at the smallest cube") {
  const GridSpec spec{2, 16};
  const BallFamily balls = BallFamily::exhaustive(spec);
  const double p = 4.0, q = 2.0;
  const double h = balls.half_widths.back();
  const double expect = std::pow(h * spec.spacing(), 2 / p - 2 / q) * std::pow(spec.cell_volume(), 1 / q);
  CHECK(morrey_norm(single_cell(spec, 37), p, q, balls) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("Morrey stride lattice matches the oracle in 3D") {
  const GridSpec spec{3, 32};
  const BallFamily balls = BallFamily::standard(spec);
  const auto f = corpus_bump(spec, 3);
  const auto g = gradient(f);
  CHECK(morrey_norm(g, 3.0, 2.0, balls) == oracle::morrey(g, 3.0, 2.0, balls.stride, balls.half_widths));
}

TEST_CASE("enlarging the ball family never decreases the Morrey norm") {
  const GridSpec spec{2, 64};
  const auto f = corpus_bump(spec, 1);
  BallFamily coarse = BallFamily::standard(spec);
  coarse.stride = 8;
  coarse.half_widths = {16, 4};
  BallFamily more = coarse;
  more.half_widths = {32, 16, 8, 4};
  BallFamily dense = more;
  dense.stride = 2;
  const double a = morrey_norm(f, 3.0, 2.0, coarse), b = morrey_norm(f, 3.0, 2.0, more),
               c = morrey_norm(f, 3.0, 2.0, dense);
  CHECK(a <= b);
  CHECK(b <= c);
}

TEST_CASE("Besov-Morrey norm against the brute-force oracle") {
  const GridSpec spec{2, 32};
  const BallFamily balls = BallFamily::standard(spec);
  const PartitionOfUnity part(spec);
  const auto f = corpus_bump(spec, 0);
  for (double r : {1.0, 2.0, double(INFINITY)}) {
    const double lib = besov_morrey_norm(FieldComponents(&f, 1), 0.0, 2.0, 2.0, r, part, balls).value;
    const double ref = oracle::besov_morrey(f, 0.0, 2.0, 2.0, r, balls.stride, balls.half_widths);
    CHECK(std::abs(lib - ref) <= 1e-10 * ref);
  }
  const double lib1 = besov_morrey_norm(FieldComponents(&f, 1), 1.0, 4.0, 2.0, 2.0, part, balls).value;
  CHECK(std::abs(lib1 - oracle::besov_morrey(f, 1.0, 4.0, 2.0, 2.0, balls.stride, balls.half_widths)) <= 1e-10 * lib1);
}

TEST_CASE("Besov-Morrey structure") {
  const GridSpec spec{2, 32};
  const BallFamily balls = BallFamily::standard(spec);
  const PartitionOfUnity part(spec);
  const GridFunction zero(spec), one(spec, 1.7);
  CHECK(besov_morrey_norm(FieldComponents(&zero, 1), 0, 2, 2, 2, part, balls).value == 0.0);
  CHECK(besov_morrey_norm(FieldComponents(&one, 1), 0, 3, 2, 2, part, balls).value ==
        doctest::Approx(morrey_norm(one, 3, 2, balls)).epsilon(1e-13));

  const auto f = corpus_bump(spec, 2);
  const auto inf = besov_morrey_norm(FieldComponents(&f, 1), 0.5, 2, 2, INFINITY, part, balls);
  CHECK(inf.value == *std::max_element(inf.blocks.begin(), inf.blocks.end()));
  double prev = INFINITY;
  for (double r : {1.0, 1.5, 2.0, 4.0, double(INFINITY)}) {
    const double v = besov_morrey_norm(FieldComponents(&f, 1), 0.5, 2, 2, r, part, balls).value;
    CHECK(v <= prev * (1 + 1e-14));
    prev = v;
  }
}

TEST_CASE("absolute homogeneity") {
  const GridSpec spec{2, 32};
  const BallFamily balls = BallFamily::standard(spec);
  const PartitionOfUnity part(spec);
  const auto f = corpus_bump(spec, 4);
  const GridFunction g = -3.25 * f;
  for (const SpaceSpec& s : {SpaceSpec{Family::Lp, 0, 3, 2, 2}, SpaceSpec{Family::Linf, 0, 2, 2, 2},
                             SpaceSpec{Family::Morrey, 0, 3, 2, 2}, SpaceSpec{Family::Besov, 1, 2, 1, 2},
                             SpaceSpec{Family::TriebelLizorkin, 0.5, 2, 2, 2},
                             SpaceSpec{Family::BesovMorrey, -1, 2, 2, 1}}) {
    const double a = evaluate_norm(FieldComponents(&f, 1), s, part, balls).value;
    const double b = evaluate_norm(FieldComponents(&g, 1), s, part, balls).value;
    CHECK(b == doctest::Approx(3.25 * a).epsilon(1e-12));
  }
}

TEST_CASE("Besov and Triebel-Lizorkin") {
  const GridSpec spec{2, 64};
  const PartitionOfUnity part(spec);
  const GridFunction zero(spec);
  CHECK(besov_norm(FieldComponents(&zero, 1), 1, 2, 2, part).value == 0.0);
  CHECK(triebel_norm(FieldComponents(&zero, 1), 1, 2, 2, part).value == 0.0);
  CHECK_THROWS_AS(triebel_norm(FieldComponents(&zero, 1), 0, INFINITY, 2, part), UsageError);

  for (const auto& f : corpus_bumps(spec)) {
    const double b = besov_norm(FieldComponents(&f, 1), 0, 2, 2, part).value;
    const double t = triebel_norm(FieldComponents(&f, 1), 0, 2, 2, part).value;
    const double l = lp_norm(f, 2);
    CHECK(std::abs(b - t) <= 1e-12 * b);
    CHECK(b * b >= 0.5 * l * l);
    CHECK(b * b <= l * l * (1 + 1e-12));
  }

  for (int m = 2; m <= 4; ++m) {
    const int k = 1 << m;
    const auto f = sample(spec, [&](std::span<const double> x) { return std::sin(k * x[1]); });
    for (double s : {-1.0, 0.5, 2.0}) {
      const double l = lp_norm(f, 3);
      const double a = std::pow(2.0, (m - 1) * s), c = std::pow(2.0, (m + 1) * s);
      const double lo = std::min(a, c) * l, hi = std::max(a, c) * l * std::sqrt(3.0);
      const double b = besov_norm(FieldComponents(&f, 1), s, 3, 2, part).value;
      const double t = triebel_norm(FieldComponents(&f, 1), s, 3, 2, part).value;
      CHECK(b >= lo * (1 - 1e-12));
      CHECK(b <= hi);
      CHECK(t >= lo * (1 - 1e-12));
      CHECK(t <= hi);
    }
  }
}

TEST_CASE("dilation") {
  const GridSpec spec{2, 64};
  const auto f = corpus_bump(spec, 0);
  CHECK(testing::max_diff(dilate(f, 1.0), f) == 0.0);
  CHECK_THROWS_AS(dilate(f, 3.0), UsageError);
  // Contraction then expansion returns the samples, less the Nyquist bin
  // that the spectral interpolation drops.
  const GridFunction g = dilate(dilate(f, 0.5), 2.0);
  const GridFunction f0 = inverse_transform(drop_nyquist(forward_transform(f)));
  double inner = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto idx = unflatten(spec, i);
    if (idx[0] >= 16 && idx[0] < 48 && idx[1] >= 16 && idx[1] < 48) inner = std::max(inner, std::abs(g[i] - f0[i]));
  }
  CHECK(inner < 1e-12 * f.max_abs());
  const GridFunction h = dilate(f, 2.0);
  const std::size_t center = flatten(spec, {32, 32, 0});
  CHECK(h[center] == f[center]);
  CHECK(h[flatten(spec, {33, 32, 0})] == f[flatten(spec, {34, 32, 0})]);
}

TEST_CASE("scaling check") {
  const GridSpec spec{2, 128};
  const auto f = corpus_bump(spec, 0);
  const BallFamily balls = BallFamily::standard(spec);
  const double one[] = {1.0};
  const auto r1 = scaling_check(f, SpaceSpec{Family::BesovMorrey, 1, 2, 2, 2}, one, balls);
  CHECK(r1.rows[0].ratio == 1.0);
  const double lambdas[] = {2.0, 4.0};
  const auto lp = scaling_check(f, SpaceSpec{Family::Lp, 0, 2, 2, 2}, lambdas, balls);
  // ||f(lambda .)||_2 = lambda^{-n/2} ||f||_2 for data inside the cell.
  CHECK(lp.fitted_exponent == doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(lp.expected_exponent == -1.0);
  const double bad[] = {3.0};
  CHECK_THROWS_AS((scaling_check(f, SpaceSpec{Family::Lp, 0, 2, 2, 2}, bad, balls)), UsageError);
}

TEST_CASE("embedding report") {
  const GridSpec spec{3, 32};
  const BallFamily balls = BallFamily::standard(spec);
  const auto zero = embedding_report(GridFunction(spec), 3, 2, 2, balls);
  CHECK(zero.ratio == 0.0);
  CHECK_THROWS_AS(embedding_report(GridFunction(spec), 3, 1, 1, balls), UsageError);
  CHECK_THROWS_AS(embedding_report(GridFunction(spec), 3, 2, 3, balls), UsageError);
  // A pure mode is its own block: both sides coincide.
  const GridSpec s2{2, 64};
  const auto f = sample(s2, [](std::span<const double> x) { return std::cos(8 * x[0]); });
  const auto rep = embedding_report(f, 2, 2, 2, BallFamily::standard(s2));
  CHECK(rep.ratio <= 1 + 1e-6);
  CHECK(rep.ratio == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("norm equivalence report") {
  const GridSpec spec{3, 32};
  const BallFamily balls = BallFamily::standard(spec);
  const auto zero = norm_equivalence_report(GridFunction(spec), 3, 2, 2, balls);
  CHECK(zero.b0 == 0.0);
  CHECK(zero.b1 == 0.0);
  CHECK_THROWS_AS(norm_equivalence_report(GridFunction(spec, 1.0), 3, 2, 2, balls), UsageError);
  const auto rep = norm_equivalence_report(corpus_bump(spec, 0), 3, 2, 2, balls);
  CHECK(rep.ratio > 0.0);
  CHECK(std::isfinite(rep.gradient_ratio));
}

}
