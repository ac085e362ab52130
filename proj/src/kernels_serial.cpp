#include "bmtk/kernels.hpp"

#include <omp.h>

#include <cmath>

namespace bmtk::kernels {
namespace {

// Periodic interval [start, start+width) split into at most two plain ones.
int split_interval(int start, int width, int points, int lo[2], int hi[2]) {
  start %= points;
  if (start < 0) start += points;
  if (start + width <= points) {
    lo[0] = start;
    hi[0] = start + width;
    return 1;
  }
  lo[0] = start;
  hi[0] = points;
  lo[1] = 0;
  hi[1] = start + width - points;
  return 2;
}

}  // namespace

double PrefixTable::cube_sum(const int* start, int width) const {
  const int stride1 = points + 1;
  int lo[3][2], hi[3][2], count[3] = {1, 1, 1};
  for (int a = 0; a < dim; ++a) count[a] = split_interval(start[a], width, points, lo[a], hi[a]);

  auto at = [&](int i0, int i1, int i2) {
    std::size_t idx = static_cast<std::size_t>(i0);
    idx = idx * stride1 + static_cast<std::size_t>(i1);
    if (dim == 3) idx = idx * stride1 + static_cast<std::size_t>(i2);
    return sums[idx];
  };

  double total = 0.0;
  for (int s0 = 0; s0 < count[0]; ++s0) {
    for (int s1 = 0; s1 < count[1]; ++s1) {
      if (dim == 2) {
        total += at(hi[0][s0], hi[1][s1], 0) - at(lo[0][s0], hi[1][s1], 0) -
                 at(hi[0][s0], lo[1][s1], 0) + at(lo[0][s0], lo[1][s1], 0);
        continue;
      }
      for (int s2 = 0; s2 < count[2]; ++s2) {
        const int a0 = lo[0][s0], b0 = hi[0][s0];
        const int a1 = lo[1][s1], b1 = hi[1][s1];
        const int a2 = lo[2][s2], b2 = hi[2][s2];
        total += at(b0, b1, b2) - at(a0, b1, b2) - at(b0, a1, b2) - at(b0, b1, a2) +
                 at(a0, a1, b2) + at(a0, b1, a2) + at(b0, a1, a2) - at(a0, a1, a2);
      }
    }
  }
  return total;
}

double direct_cube_sum(int dim, int points, std::span<const double> density, const int* start,
                       int width) {
  auto wrap = [points](int i) { return ((i % points) + points) % points; };
  const std::size_t n = static_cast<std::size_t>(points);
  double total = 0.0;
  for (int a = 0; a < width; ++a) {
    const std::size_t i0 = static_cast<std::size_t>(wrap(start[0] + a));
    for (int b = 0; b < width; ++b) {
      const std::size_t i1 = static_cast<std::size_t>(wrap(start[1] + b));
      if (dim == 2) {
        total += density[i0 * n + i1];
        continue;
      }
      for (int c = 0; c < width; ++c) {
        const std::size_t i2 = static_cast<std::size_t>(wrap(start[2] + c));
        total += density[(i0 * n + i1) * n + i2];
      }
    }
  }
  return total;
}

void set_thread_count(int k) {
  if (k > 0) omp_set_num_threads(k);
}

namespace serial {

void add_product(std::span<double> out, std::span<const double> a, std::span<const double> b,
                 double sign) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += sign * a[i] * b[i];
}

double power_sum(std::span<const double> v, double p) {
  double total = 0.0;
  if (p == 2.0) {
    for (double x : v) total += x * x;
  } else if (p == 1.0) {
    for (double x : v) total += std::abs(x);
  } else {
    for (double x : v) total += std::pow(std::abs(x), p);
  }
  return total;
}

void euclidean_power(std::span<const std::span<const double>> comps, double q,
                     std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    double sq = 0.0;
    for (const auto& c : comps) sq += c[i] * c[i];
    out[i] = q == 2.0 ? sq : std::pow(sq, 0.5 * q);
  }
}

PrefixTable prefix_sum(int dim, int points, std::span<const double> density) {
  PrefixTable t;
  t.dim = dim;
  t.points = points;
  const std::size_t m = static_cast<std::size_t>(points) + 1;
  const std::size_t n = static_cast<std::size_t>(points);
  std::size_t total = m * m;
  if (dim == 3) total *= m;
  t.sums.assign(total, 0.0);
  if (dim == 2) {
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j)
        t.sums[i * m + j] = density[(i - 1) * n + (j - 1)] + t.sums[(i - 1) * m + j] +
                            t.sums[i * m + (j - 1)] - t.sums[(i - 1) * m + (j - 1)];
    return t;
  }
  auto T = [&](std::size_t i, std::size_t j, std::size_t k) -> double& {
    return t.sums[(i * m + j) * m + k];
  };
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t k = 1; k <= n; ++k)
        T(i, j, k) = density[((i - 1) * n + (j - 1)) * n + (k - 1)] + T(i - 1, j, k) +
                     T(i, j - 1, k) + T(i, j, k - 1) - T(i - 1, j - 1, k) - T(i - 1, j, k - 1) -
                     T(i, j - 1, k - 1) + T(i - 1, j - 1, k - 1);
  return t;
}

std::vector<double> window_sums(const PrefixTable& table, int stride, int width) {
  const int per_axis = table.points / stride;
  std::size_t count = static_cast<std::size_t>(per_axis) * per_axis;
  if (table.dim == 3) count *= per_axis;
  std::vector<double> out(count);
  int start[3] = {0, 0, 0};
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t rem = c;
    for (int a = table.dim - 1; a >= 0; --a) {
      start[a] = static_cast<int>(rem % per_axis) * stride - width / 2;
      rem /= per_axis;
    }
    out[c] = table.cube_sum(start, width);
  }
  return out;
}

}  // namespace serial
}  // namespace bmtk::kernels
