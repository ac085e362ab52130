#pragma once

// Brute-force references written without prefix tables or the library's
// Morrey code: loop over every center on the lattice, every radius, and
// every cell of the cube in row-major order.

#include <algorithm>
#include <cmath>
#include <vector>

#include "bmtk/grid.hpp"
#include "bmtk/littlewood_paley.hpp"
#include "bmtk/norms.hpp"

namespace oracle {

inline double morrey(const std::vector<bmtk::GridFunction>& comps, double p, double q, int stride,
                     const std::vector<int>& half_widths) {
  const bmtk::GridSpec& spec = comps.front().spec();
  const int n = spec.dim, N = spec.points;
  std::vector<double> dens(spec.size());
  for (std::size_t i = 0; i < dens.size(); ++i) {
    double s = 0.0;
    for (const auto& c : comps) s += c[i] * c[i];
    dens[i] = std::pow(s, q / 2);
  }
  auto wrap = [N](int i) { return ((i % N) + N) % N; };
  const double expo = n / p - n / q;
  double best = 0.0;
  const int c2max = n == 3 ? N : 1;
  for (int h : half_widths) {
    const int w = 2 * h;
    const double weight = std::pow(h * spec.spacing(), expo);
    for (int c0 = 0; c0 < N; c0 += stride)
      for (int c1 = 0; c1 < N; c1 += stride)
        for (int c2 = 0; c2 < c2max; c2 += (n == 3 ? stride : 1)) {
          double sum = 0.0;
          for (int a = 0; a < w; ++a)
            for (int b = 0; b < w; ++b) {
              const std::size_t i0 = static_cast<std::size_t>(wrap(c0 - h + a));
              const std::size_t i1 = static_cast<std::size_t>(wrap(c1 - h + b));
              if (n == 2) {
                sum += dens[i0 * N + i1];
                continue;
              }
              for (int c = 0; c < w; ++c) {
                const std::size_t i2 = static_cast<std::size_t>(wrap(c2 - h + c));
                sum += dens[(i0 * N + i1) * N + i2];
              }
            }
          best = std::max(best, weight * std::pow(std::max(sum, 0.0) * spec.cell_volume(), 1.0 / q));
        }
  }
  return best;
}

inline double besov_morrey(const bmtk::GridFunction& f, double s, double p, double q, double r,
                           int stride, const std::vector<int>& half_widths) {
  const bmtk::PartitionOfUnity part(f.spec());
  const auto d = bmtk::decompose(f, part);
  double acc = 0.0;
  for (std::size_t j = 0; j < d.blocks.size(); ++j) {
    const double v = std::pow(2.0, double(j) * s) * morrey({d.blocks[j]}, p, q, stride, half_widths);
    acc = std::isinf(r) ? std::max(acc, v) : acc + std::pow(v, r);
  }
  return std::isinf(r) ? acc : std::pow(acc, 1.0 / r);
}

}  // namespace oracle
