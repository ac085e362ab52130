#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bmtk/grid.hpp"

namespace bmtk {

/// Radial cutoff: 1 for r <= L/8, 0 for r >= L/4, blended with smoothstep.
double radial_cutoff(double r, double length);

/// Distance from x to the box center.
double distance_to_center(std::span<const double> x, double length);

constexpr int kCorpusSize = 10;

/// Deterministic smooth bump number `index` (0 .. 9): a sum of 3 to 6
/// Gaussians times linear polynomials, multiplied by the radial cutoff, so
/// the support lies in the centered sub-box of side L/2.
GridFunction corpus_bump(const GridSpec& spec, int index);
std::vector<GridFunction> corpus_bumps(const GridSpec& spec);

/// Odd (about the box center) trigonometric field with frequencies
/// |k_i| <= max_frequency and amplitudes decaying like 1/(1+|k|^2).
GridFunction odd_trigonometric_field(const GridSpec& spec, std::uint64_t seed, int max_frequency);

/// chi(|x-c|) (x-c)_axis / |x-c| with c offset half a cell from the center so
/// no node hits the singularity.
GridFunction counterexample_profile(const GridSpec& spec, int axis);

/// Builtin field names: bump0..bump9, zero, hedgehog_x, hedgehog_y.
std::vector<std::string> builtin_names();
/// Throws UsageError for an unknown name.
GridFunction builtin_field(const std::string& name, const GridSpec& spec);

}  // namespace bmtk
