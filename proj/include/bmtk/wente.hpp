#pragma once

#include <string>
#include <vector>

#include "bmtk/grid.hpp"
#include "bmtk/norms.hpp"

namespace bmtk {

/// a_x b_y - a_y b_x for axes (i, j), spectral derivatives and alias-free
/// products.
GridFunction jacobian(const GridFunction& a, const GridFunction& b, int i, int j);

/// Estimate quantities for -Lap u = J(a, b). Norm indices: p = n, q = 2.
struct WenteReport {
  double u_inf = 0.0;         // ||u||_inf
  double grad_u_norm = 0.0;   // ||grad u||_{B^0_{M^n_2,1}}
  double hess_u_norm = 0.0;   // ||grad^2 u||_{B^-1_{M^n_2,1}}
  double data_a = 0.0;        // ||a||_{B^0_{M^n_2,2}} + ||grad a||_{B^0_{M^n_2,2}}
  double data_b = 0.0;
  double data_product = 0.0;
  double u_ratio = 0.0;
  double grad_ratio = 0.0;
  double hess_ratio = 0.0;
  double residual = 0.0;      // ||-Lap u - J||_inf / ||J||_inf
};

struct WenteSolution {
  GridFunction u;
  WenteReport report;
};

WenteSolution solve_wente(const GridFunction& a, const GridFunction& b, int i, int j,
                          const BallFamily& balls);

struct HessianReport {
  std::vector<GridFunction> second;  // d_i d_j u, row-major n x n
  double besov_morrey = 0.0;         // ||grad^2 u||_{B^-1_{M^n_2,1}}
  double besov_inf = 0.0;            // ||grad^2 u||_{B^-2_{inf,1}}
  double ratio = 0.0;                // besov_inf / besov_morrey
};

/// Second derivatives through the multipliers -xi_i xi_j / |xi|^2 applied to J.
HessianReport hessian_report(const GridFunction& a, const GridFunction& b, int i, int j,
                             const BallFamily& balls);

struct CounterexampleRow {
  int points = 0;
  double morrey_grad_a = 0.0;         // ||grad a||_{M^3_2}
  double besov_morrey_grad_a = 0.0;   // ||grad a||_{B^0_{M^3_2,2}}
  double u_inf = 0.0;
};

/// a = chi (x-c)_1/|x-c|, b = chi (x-c)_2/|x-c| on the 3-torus with N points.
CounterexampleRow counterexample_run(int points, double length = 2.0 * std::numbers::pi);

std::string counterexample_csv(const std::vector<CounterexampleRow>& rows);

}  // namespace bmtk
