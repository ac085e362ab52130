#pragma once

#include <filesystem>
#include <iosfwd>

#include "bmtk/grid.hpp"

namespace bmtk {

// BMGF grid files: "BMGF", u32 version (1), u32 dim, u32 points[dim],
// f64 length, then points^dim f64 samples in row-major order. Everything
// little-endian.

inline constexpr unsigned kBmgfVersion = 1;

void write_bmgf(std::ostream& out, const GridFunction& f);
void write_bmgf(const std::filesystem::path& path, const GridFunction& f);

/// Throws FormatError("not a BMGF file") on a bad magic, and FormatError for
/// truncated data, unsupported versions or non-cubic grids.
GridFunction read_bmgf(std::istream& in);
GridFunction read_bmgf(const std::filesystem::path& path);

}  // namespace bmtk
