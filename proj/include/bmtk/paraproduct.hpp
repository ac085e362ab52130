#pragma once

#include "bmtk/grid.hpp"
#include "bmtk/littlewood_paley.hpp"
#include "bmtk/norms.hpp"

namespace bmtk {

/// Bony decomposition f g = pi1 + pi2 + pi3 with f^i = 0 for i < 0:
///   pi1 = sum_k sum_{l <= k-2} f^l g^k   (low f, high g)
///   pi2 = sum_k sum_{|l-k| <= 1} f^l g^k
///   pi3 = sum_l sum_{k <= l-2} f^l g^k   (high f, low g)
struct ParaproductSplit {
  GridFunction pi1, pi2, pi3;
  GridFunction total() const;
};

/// All block products are alias free and truncated back to the base grid,
/// so the parts sum to multiply(f, g).
ParaproductSplit split_product(const GridFunction& f, const GridFunction& g,
                               const PartitionOfUnity& part);

/// J = a_x b_y - a_y b_x split as
///   pi1(a_x,b_y) - pi1(a_y,b_x) + pi3(a_x,b_y) - pi3(a_y,b_x) + diagonal,
/// where x, y are the axes (i, j). Fields carry their sign in J, so the plain
/// sum of the five reconstructs the Jacobian.
struct JacobianSplit {
  GridFunction pi1_xy, pi1_yx, pi3_xy, pi3_yx, diagonal;
  GridFunction total() const;
};

JacobianSplit jacobian_split(const GridFunction& a, const GridFunction& b, int i, int j,
                             const PartitionOfUnity& part);

enum class SupportKind {
  LowHigh,   // sum_{i <= l-2} a_x^i b_y^l, expected in 2^{l-3} <= |xi| <= 2^{l+3}
  Diagonal,  // sum_{l-1 <= i <= l+1} a_x^i b_y^l, expected in |xi| <= 5 2^l
};

struct SupportReport {
  SupportKind kind = SupportKind::LowHigh;
  int block = 0;
  double lower = 0.0;  // expected region in physical |xi|
  double upper = 0.0;
  double total_mass = 0.0;
  double outside_mass = 0.0;
  double ratio = 0.0;  // outside / total, 0 when total = 0
};

/// Spectral mass of the combination outside its expected region, measured on
/// a grid padded to 2N where the product spectrum is exact. Axes x = 0, y = 1.
SupportReport support_check(const GridFunction& a, const GridFunction& b, int l, SupportKind kind,
                            const PartitionOfUnity& part);

struct StabilityReport {
  double product = 0.0;     // ||g f||_{B^0_{M^n_2,2}}
  double g_norm = 0.0;      // ||g||_{B^0_{M^n_2,2}}
  double f_norm = 0.0;      // ||f||_{B^1_{M^n_2,2}} + ||f||_inf
  double ratio = 0.0;
};

StabilityReport stability_report(const GridFunction& f, const GridFunction& g,
                                 const PartitionOfUnity& part, const BallFamily& balls);

}  // namespace bmtk
