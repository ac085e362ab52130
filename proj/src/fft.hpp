#pragma once

#include <complex>

namespace bmtk::detail {

// Unnormalized real-to-complex transform of a points^dim row-major array
// into the half layout (last axis points/2+1 bins).
void r2c(int dim, int points, const double* in, std::complex<double>* out);

// Unnormalized inverse. `in` is overwritten.
void c2r(int dim, int points, std::complex<double>* in, double* out);

}  // namespace bmtk::detail
