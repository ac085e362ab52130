#pragma once

// Data-parallel inner loops. Every kernel has a plain serial reference in
// `serial` and an OpenMP version in `omp` with identical results up to
// reduction order; the library calls the `omp` versions, tests and the
// benchmark compare the two.

#include <cstddef>
#include <span>
#include <vector>

namespace bmtk::kernels {

/// Summed-area table of a periodic points^dim array: (points+1)^dim entries,
/// entry (i0,..) holds the sum over all cells with index < (i0,..).
struct PrefixTable {
  int dim = 0;
  int points = 0;
  std::vector<double> sums;

  /// Sum over the periodic cube starting at `start` with `width` cells per
  /// axis (width <= points).
  double cube_sum(const int* start, int width) const;
};

namespace serial {

void add_product(std::span<double> out, std::span<const double> a, std::span<const double> b,
                 double sign);
/// sum |v|^p
double power_sum(std::span<const double> v, double p);
/// out[i] = (sum_c comps[c][i]^2)^(q/2)
void euclidean_power(std::span<const std::span<const double>> comps, double q,
                     std::span<double> out);
PrefixTable prefix_sum(int dim, int points, std::span<const double> density);
/// Cube sums for all centers on the stride lattice; the cube around a
/// center c spans [c - width/2, c + width/2) per axis. Row-major over centers.
std::vector<double> window_sums(const PrefixTable& table, int stride, int width);

}  // namespace serial

namespace omp {

void add_product(std::span<double> out, std::span<const double> a, std::span<const double> b,
                 double sign);
double power_sum(std::span<const double> v, double p);
void euclidean_power(std::span<const std::span<const double>> comps, double q,
                     std::span<double> out);
PrefixTable prefix_sum(int dim, int points, std::span<const double> density);
std::vector<double> window_sums(const PrefixTable& table, int stride, int width);

}  // namespace omp

/// Direct summation over a periodic cube in canonical row-major order.
/// Independent of the prefix table; used to refine near-maximal cubes.
double direct_cube_sum(int dim, int points, std::span<const double> density, const int* start,
                       int width);

/// Caps the OpenMP worker count for subsequent kernels (k <= 0 leaves the
/// runtime default).
void set_thread_count(int k);

}  // namespace bmtk::kernels
