#pragma once

#include <vector>

#include "bmtk/grid.hpp"

namespace bmtk {

/// Base cutoff psi: 1 on [0,1], 0 on [3/2, inf), blended in between with
/// the exponential bump h(s) = exp(-1/s):
///   psi(t) = h(3/2 - t) / (h(3/2 - t) + h(t - 1)).
double smoothstep(double t);

/// Radial dyadic partition on the frequency lattice of one grid:
///   phi_0 = psi, phi_j(t) = psi(t / 2^j) - psi(t / 2^(j-1)) for 1 <= j < j_max,
///   phi_{j_max} = 1 - psi(t / 2^(j_max-1)).
/// j_max is the smallest j >= 1 with 2^(j-1) >= the largest |xi| on the grid,
/// so the weights sum to one at every representable frequency.
class PartitionOfUnity {
 public:
  explicit PartitionOfUnity(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  int j_max() const { return j_max_; }
  int block_count() const { return j_max_ + 1; }
  /// At most this many weights are nonzero at any frequency.
  static constexpr int overlap() { return 2; }

  /// phi_j at physical frequency magnitude t.
  double weight(int j, double t) const;
  /// sum_{i<=j} phi_i(t), evaluated as psi(t / 2^j) (1 for j >= j_max).
  double partial_sum(int j, double t) const;

 private:
  GridSpec spec_;
  int j_max_ = 1;
};

struct DyadicDecomposition {
  PartitionOfUnity partition;
  std::vector<GridFunction> blocks;  // f^0 .. f^{j_max}
};

/// phi_j applied to a spectrum.
SpectralField block_spectrum(const SpectralField& s, const PartitionOfUnity& part, int j);
GridFunction block(const SpectralField& s, const PartitionOfUnity& part, int j);

/// f^j = F^{-1}(phi_j F f) for every j. Throws UsageError on a grid mismatch.
DyadicDecomposition decompose(const GridFunction& f, const PartitionOfUnity& part);

/// Pointwise sum of the blocks.
GridFunction reconstruct(const DyadicDecomposition& d);

}  // namespace bmtk
