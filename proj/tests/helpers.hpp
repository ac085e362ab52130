#pragma once

#include <cmath>
#include <random>

#include "bmtk/grid.hpp"

namespace testing {

// Smooth periodic field from a handful of low modes.
inline bmtk::GridFunction smooth_random(const bmtk::GridSpec& spec, unsigned seed, int kmax = 4) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  struct Mode {
    int k[3];
    double a, phase;
  };
  std::vector<Mode> modes;
  for (int i = 0; i < 12; ++i) {
    Mode m{};
    for (int d = 0; d < 3; ++d) m.k[d] = static_cast<int>(rng() % (2 * kmax + 1)) - kmax;
    m.a = u(rng);
    m.phase = 3.0 * u(rng);
    modes.push_back(m);
  }
  return bmtk::sample(spec, [&](std::span<const double> x) {
    double s = 0.0;
    for (const auto& m : modes) {
      double arg = m.phase;
      for (std::size_t d = 0; d < x.size(); ++d) arg += spec.wavenumber(m.k[d]) * x[d];
      s += m.a * std::cos(arg);
    }
    return s;
  });
}

inline double max_diff(const bmtk::GridFunction& a, const bmtk::GridFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double l2(const bmtk::GridFunction& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s * f.spec().cell_volume());
}

}  // namespace testing
