#include "bmtk/littlewood_paley.hpp"

#include <cmath>

#include "bmtk/errors.hpp"

namespace bmtk {

double smoothstep(double t) {
  if (t <= 1.0) return 1.0;
  if (t >= 1.5) return 0.0;
  const double a = std::exp(-1.0 / (1.5 - t));
  const double b = std::exp(-1.0 / (t - 1.0));
  return a / (a + b);
}

PartitionOfUnity::PartitionOfUnity(const GridSpec& spec) : spec_(spec) {
  spec_.validate();
  const double top = spec_.wavenumber(spec_.points / 2) * std::sqrt(static_cast<double>(spec_.dim));
  j_max_ = 1;
  while (std::ldexp(1.0, j_max_ - 1) < top) ++j_max_;
}

double PartitionOfUnity::weight(int j, double t) const {
  if (j < 0 || j > j_max_) return 0.0;
  if (j == 0) return smoothstep(t);
  const double lower = smoothstep(std::ldexp(t, -(j - 1)));
  if (j == j_max_) return 1.0 - lower;
  return smoothstep(std::ldexp(t, -j)) - lower;
}

double PartitionOfUnity::partial_sum(int j, double t) const {
  if (j >= j_max_) return 1.0;
  return smoothstep(std::ldexp(t, -j));
}

SpectralField block_spectrum(const SpectralField& s, const PartitionOfUnity& part, int j) {
  if (!(s.spec() == part.spec())) throw UsageError("partition built for a different grid");
  const GridSpec& spec = s.spec();
  SpectralField out(spec);
  auto src = s.coeffs();
  auto dst = out.coeffs();
  // phi_j vanishes outside (2^(j-1), 3*2^(j-1)) for j >= 1 and beyond 3/2 for j = 0.
  const double lo = j == 0 ? 0.0 : std::ldexp(1.0, j - 1);
  const double hi = j == part.j_max() ? INFINITY : (j == 0 ? 1.5 : 3.0 * std::ldexp(1.0, j - 1));
  for_each_frequency(spec, [&](std::size_t i, const std::array<int, 3>& k) {
    const double t = frequency_magnitude(spec, k);
    if (t < lo || t > hi) return;
    const double w = part.weight(j, t);
    if (w != 0.0) dst[i] = w * src[i];
  });
  return out;
}

GridFunction block(const SpectralField& s, const PartitionOfUnity& part, int j) {
  return inverse_transform(block_spectrum(s, part, j));
}

DyadicDecomposition decompose(const GridFunction& f, const PartitionOfUnity& part) {
  if (!(f.spec() == part.spec())) throw UsageError("partition built for a different grid");
  const SpectralField s = forward_transform(f);
  DyadicDecomposition d{part, std::vector<GridFunction>(static_cast<std::size_t>(part.block_count()))};
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < part.block_count(); ++j) d.blocks[static_cast<std::size_t>(j)] = block(s, part, j);
  return d;
}

GridFunction reconstruct(const DyadicDecomposition& d) {
  GridFunction sum(d.partition.spec());
  for (const auto& b : d.blocks) sum += b;
  return sum;
}

}  // namespace bmtk
