#include "bmtk/kernels.hpp"

#include <cmath>

namespace bmtk::kernels::omp {

void add_product(std::span<double> out, std::span<const double> a, std::span<const double> b,
                 double sign) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for simd schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] += sign * a[i] * b[i];
}

double power_sum(std::span<const double> v, double p) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());
  double total = 0.0;
  if (p == 2.0) {
#pragma omp parallel for reduction(+ : total) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) total += v[i] * v[i];
  } else if (p == 1.0) {
#pragma omp parallel for reduction(+ : total) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) total += std::abs(v[i]);
  } else {
#pragma omp parallel for reduction(+ : total) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) total += std::pow(std::abs(v[i]), p);
  }
  return total;
}

void euclidean_power(std::span<const std::span<const double>> comps, double q,
                     std::span<double> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double sq = 0.0;
    for (const auto& c : comps) sq += c[i] * c[i];
    out[i] = q == 2.0 ? sq : std::pow(sq, 0.5 * q);
  }
}

// Axis-by-axis running sums; each pass is parallel over independent lines.
PrefixTable prefix_sum(int dim, int points, std::span<const double> density) {
  PrefixTable t;
  t.dim = dim;
  t.points = points;
  const std::ptrdiff_t m = points + 1;
  const std::ptrdiff_t n = points;
  std::ptrdiff_t total = dim == 3 ? m * m * m : m * m;
  t.sums.assign(static_cast<std::size_t>(total), 0.0);
  double* T = t.sums.data();

  if (dim == 2) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      for (std::ptrdiff_t j = 0; j < n; ++j) T[(i + 1) * m + (j + 1)] = density[i * n + j];
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 1; i < m; ++i)
      for (std::ptrdiff_t j = 1; j < m; ++j) T[i * m + j] += T[i * m + j - 1];
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 1; j < m; ++j)
      for (std::ptrdiff_t i = 1; i < m; ++i) T[i * m + j] += T[(i - 1) * m + j];
    return t;
  }

#pragma omp parallel for collapse(2) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    for (std::ptrdiff_t j = 0; j < n; ++j)
      for (std::ptrdiff_t k = 0; k < n; ++k)
        T[((i + 1) * m + (j + 1)) * m + (k + 1)] = density[(i * n + j) * n + k];
#pragma omp parallel for collapse(2) schedule(static)
  for (std::ptrdiff_t i = 1; i < m; ++i)
    for (std::ptrdiff_t j = 1; j < m; ++j)
      for (std::ptrdiff_t k = 1; k < m; ++k) T[(i * m + j) * m + k] += T[(i * m + j) * m + k - 1];
#pragma omp parallel for collapse(2) schedule(static)
  for (std::ptrdiff_t i = 1; i < m; ++i)
    for (std::ptrdiff_t j = 1; j < m; ++j)
      for (std::ptrdiff_t k = 1; k < m; ++k)
        T[(i * m + j) * m + k] += T[(i * m + j - 1) * m + k];
#pragma omp parallel for collapse(2) schedule(static)
  for (std::ptrdiff_t j = 1; j < m; ++j)
    for (std::ptrdiff_t k = 1; k < m; ++k)
      for (std::ptrdiff_t i = 1; i < m; ++i)
        T[(i * m + j) * m + k] += T[((i - 1) * m + j) * m + k];
  return t;
}

std::vector<double> window_sums(const PrefixTable& table, int stride, int width) {
  const int per_axis = table.points / stride;
  std::ptrdiff_t count = static_cast<std::ptrdiff_t>(per_axis) * per_axis;
  if (table.dim == 3) count *= per_axis;
  std::vector<double> out(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < count; ++c) {
    int start[3] = {0, 0, 0};
    std::ptrdiff_t rem = c;
    for (int a = table.dim - 1; a >= 0; --a) {
      start[a] = static_cast<int>(rem % per_axis) * stride - width / 2;
      rem /= per_axis;
    }
    out[static_cast<std::size_t>(c)] = table.cube_sum(start, width);
  }
  return out;
}

}  // namespace bmtk::kernels::omp
