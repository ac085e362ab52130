#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bmtk/forms.hpp"
#include "bmtk/norms.hpp"

namespace bmtk {

/// Aggregate ||.||_{B^0_{M^n_2,2}} over every scalar entry of a form.
double form_besov_morrey_norm(const FormField& w, const BallFamily& balls);

/// so(m)-valued 1-form with entries drawn from odd trigonometric fields
/// (frequencies |k_i| <= 3), rescaled so form_besov_morrey_norm equals epsilon
/// with the standard ball family. Oddness about the box center keeps the
/// torus fixed point free of a harmonic obstruction.
FormField random_omega(int m, const GridSpec& spec, double epsilon, std::uint64_t seed);

struct GaugeOptions {
  double tol = 1e-8;
  int max_iter = 100;
  double damping = 1.0;        // in [0.5, 1]
  double epsilon_max = 0.05;   // largest admissible ||Omega||
};

struct GaugeEstimates {
  double omega_norm = 0.0;
  double grad_a = 0.0;        // ||grad A||_{B^0_{M^n_2,2}}
  double grad_a_inv = 0.0;    // ||grad A^-1||_{B^0_{M^n_2,2}}
  double dist_so = 0.0;       // ||dist(A, SO(m))||_inf
  double grad_b = 0.0;        // ||grad B||_{B^0_{M^n_2,2}}
  double min_det = 0.0;       // min over nodes of |det A|
  /// The four estimates divided by omega_norm (0 when Omega = 0).
  double grad_a_ratio = 0.0, grad_a_inv_ratio = 0.0, dist_so_ratio = 0.0, grad_b_ratio = 0.0;
};

struct GaugePair {
  MatrixField A;
  FormField B;  // 2-form
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> history;      // residual before each update
  std::vector<double> contraction;  // history[k] / history[k-1]
  GaugeEstimates estimates;
};

/// ||dA - A Omega + d*B|| as an L2 aggregate.
double gauge_residual(const MatrixField& A, const FormField& B, const FormField& omega);

/// Fixed point A <- id + Lap^-1 div(A Omega) with mean(A) = id and
/// B = (-Lap)^-1 d(A Omega), so that d*B is the coexact part of A Omega.
/// Throws UsageError when ||Omega|| exceeds epsilon_max and NoConvergence when
/// the residual is still above tol after max_iter updates.
GaugePair construct_gauge(const FormField& omega, const GaugeOptions& options = {});

/// u = slope . (x - c) + periodic part, c the box center.
struct Potential {
  GridFunction periodic;
  std::array<double, 3> slope{};
};

/// Gradient as a 1-form with values in R^rows (one row per potential).
FormField potential_differential(std::span<const Potential> u);

struct ManufacturedSystem {
  FormField omega;
  double residual = 0.0;           // ||Lap u + Omega . grad u||_{L2}
  double relative_residual = 0.0;  // residual / ||Lap u||_{L2}
  double degenerate_fraction = 0.0;
};

/// Pointwise ridge least squares for omega in Omega = [[0, w], [-w, 0]]:
/// minimizes |w . grad u2 + Lap u1|^2 + |w . grad u1 - Lap u2|^2 + ridge |w|^2,
/// the ridge scaled by the largest Gram eigenvalue on the grid. Throws
/// DegenerateGradient when more than 1% of nodes are rank deficient.
ManufacturedSystem manufactured_system(std::span<const Potential> u, double ridge = 1e-10);

/// Two potentials x_1 + delta phi_1, x_2 + delta phi_2 where each phi is an
/// odd pair of Gaussians (width 0.35, seeded offsets from the center), so
/// omega is odd and small. The Gaussians are resolved only slowly, which
/// leaves a visible truncation error on coarse grids.
std::vector<Potential> manufactured_potentials(const GridSpec& spec, double delta, std::uint64_t seed);

/// ||d(*A du + (-1)^{n-1} (*B) ^ du)||_{L2}.
double conservation_residual(const MatrixField& A, const FormField& B, std::span<const Potential> u);

struct ConservationRow {
  int points = 0;
  double gauge_residual = 0.0;
  double pde_residual = 0.0;
  double conservation_residual = 0.0;
  double pde_relative = 0.0;  // pde_residual / ||Lap u||_{L2}
  double omega_norm = 0.0;
  int iterations = 0;
};

ConservationRow conservation_run(int n, int points, double delta, std::uint64_t seed,
                                 const GaugeOptions& options = {});
std::string conservation_csv(const std::vector<ConservationRow>& rows);

}  // namespace bmtk
