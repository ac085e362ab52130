#include <doctest.h>

#include "bmtk/corpus.hpp"
#include "bmtk/errors.hpp"
#include "bmtk/littlewood_paley.hpp"
#include "helpers.hpp"

using namespace bmtk;

TEST_SUITE("littlewood_paley") {

TEST_CASE("smoothstep values") {
  CHECK(smoothstep(0.5) == 1.0);
  CHECK(smoothstep(1.0) == 1.0);
  CHECK(smoothstep(2.0) == 0.0);
  CHECK(smoothstep(1.5) == 0.0);
  CHECK(smoothstep(1.25) == 0.5);
  double prev = 1.0;
  for (double t = 1.0; t <= 1.5; t += 1e-3) {
    CHECK(smoothstep(t) <= prev);
    prev = smoothstep(t);
  }
}

TEST_CASE("partition of unity, telescoping and overlap") {
  for (int n : {2, 3}) {
    const GridSpec spec{n, 64};
    const PartitionOfUnity part(spec);
    // j_max is the first j whose lower edge 2^(j-1) clears the largest |xi|.
    const double top = spec.wavenumber(32) * std::sqrt(double(n));
    CHECK(std::ldexp(1.0, part.j_max() - 1) >= top);
    CHECK(std::ldexp(1.0, part.j_max() - 2) < top);
    double worst = 0.0;
    int max_nonzero = 0;
    bool telescoping = true;
    for_each_frequency(spec, [&](std::size_t, const std::array<int, 3>& k) {
      const double t = frequency_magnitude(spec, k);
      double sum = 0.0;
      int nz = 0;
      for (int j = 0; j <= part.j_max(); ++j) {
        const double w = part.weight(j, t);
        CHECK(w >= 0.0);
        sum += w;
        nz += w != 0.0;
        if (j < part.j_max()) {
          // psi(2^-j t) as a partial sum of weights, obtained in the same order.
          double partial = 0.0;
          for (int i = 0; i <= j; ++i) partial += part.weight(i, t);
          telescoping = telescoping && std::abs(partial - smoothstep(std::ldexp(t, -j))) < 1e-15 &&
                        part.partial_sum(j, t) == smoothstep(std::ldexp(t, -j));
        }
      }
      worst = std::max(worst, std::abs(sum - 1.0));
      max_nonzero = std::max(max_nonzero, nz);
    });
    CHECK(worst < 1e-14);
    CHECK(max_nonzero <= PartitionOfUnity::overlap());
    CHECK(telescoping);
  }
}

TEST_CASE("block supports") {
  const GridSpec spec{2, 64};
  const PartitionOfUnity part(spec);
  for (int j = 1; j < part.j_max(); ++j)
    for (double t = 0.0; t < 200.0; t += 0.37) {
      if (part.weight(j, t) != 0.0) {
        CHECK(t >= std::ldexp(1.0, j - 1));
        CHECK(t <= std::ldexp(1.0, j + 1));
      }
    }
}

TEST_CASE("decompose a constant") {
  const GridSpec spec{3, 16};
  const auto d = decompose(GridFunction(spec, 2.0), PartitionOfUnity(spec));
  CHECK(testing::max_diff(d.blocks[0], GridFunction(spec, 2.0)) < 1e-14);
  for (std::size_t j = 1; j < d.blocks.size(); ++j) CHECK(d.blocks[j].max_abs() < 1e-13);
}

TEST_CASE("pure mode sits in blocks m-1..m+1") {
  const GridSpec spec{2, 64};
  const PartitionOfUnity part(spec);
  for (int m = 2; m <= 4; ++m) {
    const int k = 1 << m;
    const auto f = sample(spec, [&](std::span<const double> x) { return std::cos(k * x[0]) * 1.0; });
    const auto d = decompose(f, part);
    for (int j = 0; j < part.block_count(); ++j) {
      const double e = testing::l2(d.blocks[static_cast<std::size_t>(j)]);
      if (std::abs(j - m) > 1) CHECK(e < 1e-13);
    }
    CHECK(testing::l2(d.blocks[static_cast<std::size_t>(m)]) == doctest::Approx(testing::l2(f)));
  }
}

TEST_CASE("reconstruction, spectral support and Plancherel sandwich") {
  for (int n : {2, 3}) {
    const GridSpec spec{n, 32};
    const PartitionOfUnity part(spec);
    for (const auto& f : corpus_bumps(spec)) {
      const auto d = decompose(f, part);
      CHECK(testing::max_diff(reconstruct(d), f) < 1e-11 * f.max_abs());
      double sum = 0.0;
      for (const auto& b : d.blocks) sum += std::pow(testing::l2(b), 2);
      const double f2 = std::pow(testing::l2(f), 2);
      CHECK(sum >= 0.5 * f2);
      CHECK(sum <= f2 * (1 + 1e-12));
    }
    const auto f = testing::smooth_random(spec, 8, 12);
    const SpectralField sf = forward_transform(f);
    double cmax = 0.0;
    for (auto c : sf.coeffs()) cmax = std::max(cmax, std::abs(c));
    const auto d = decompose(f, part);
    for (int j = 0; j < part.block_count(); ++j) {
      const SpectralField sb = forward_transform(d.blocks[static_cast<std::size_t>(j)]);
      for_each_frequency(spec, [&](std::size_t i, const std::array<int, 3>& k) {
        if (part.weight(j, frequency_magnitude(spec, k)) == 0.0) CHECK(std::abs(sb.coeffs()[i]) <= 1e-13 * cmax);
      });
    }
  }
}

TEST_CASE("grid mismatch") {
  CHECK_THROWS_AS((decompose(GridFunction(GridSpec{2, 16}), PartitionOfUnity(GridSpec{2, 32}))), UsageError);
}

}
