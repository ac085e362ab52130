#pragma once

#include <span>
#include <string>
#include <vector>

#include "bmtk/grid.hpp"
#include "bmtk/littlewood_paley.hpp"

namespace bmtk {

enum class Family { Lp, Linf, Morrey, Besov, TriebelLizorkin, BesovMorrey };

std::string to_string(Family f);
/// Accepts the names produced by to_string; throws UsageError otherwise.
Family family_from_string(const std::string& name);

/// A function space with its indices. Unused indices are ignored by the
/// family (e.g. Lp only reads p). Infinite q or r means a supremum.
struct SpaceSpec {
  Family family = Family::Lp;
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
  double r = 2.0;

  /// Throws UsageError naming the violated constraint, e.g. "requires q <= p".
  void validate() const;
};

/// Sampled cubes (l-infinity balls) for the Morrey supremum. A cube of
/// half-width h cells around the node c covers [c - h, c + h) on every axis,
/// periodically; its radius is R = h * spacing.
struct BallFamily {
  int stride = 1;                // center lattice step in nodes
  std::vector<int> half_widths;  // cells

  /// Centers every max(1, N/32) nodes; half-widths N/2, N/4, ..., 2 cells,
  /// i.e. radii L*2^-k for k = 1 .. log2(N) - 1.
  static BallFamily standard(const GridSpec& spec);
  /// Every node as a center, same radii.
  static BallFamily exhaustive(const GridSpec& spec);

  void validate(const GridSpec& spec) const;
};

/// Components of a scalar, vector or matrix field on one grid. All norms
/// treat the pointwise Euclidean (Frobenius) magnitude.
using FieldComponents = std::span<const GridFunction>;

/// Per-block breakdown of a dyadic norm: `blocks[j]` = 2^{js} * (block norm).
struct NormResult {
  double value = 0.0;
  std::vector<double> blocks;
};

double lp_norm(const GridFunction& f, double p);
double lp_norm(FieldComponents f, double p);

double morrey_norm(const GridFunction& f, double p, double q, const BallFamily& balls);
double morrey_norm(FieldComponents f, double p, double q, const BallFamily& balls);

NormResult besov_norm(FieldComponents f, double s, double p, double q, const PartitionOfUnity& part);
NormResult triebel_norm(FieldComponents f, double s, double p, double q,
                        const PartitionOfUnity& part);
NormResult besov_morrey_norm(FieldComponents f, double s, double p, double q, double r,
                             const PartitionOfUnity& part, const BallFamily& balls);

/// Spectral-input variants; skip the forward transforms.
NormResult besov_norm(std::span<const SpectralField> f, double s, double p, double q,
                      const PartitionOfUnity& part);
NormResult besov_morrey_norm(std::span<const SpectralField> f, double s, double p, double q,
                             double r, const PartitionOfUnity& part, const BallFamily& balls);

/// Dispatches on space.family after validation.
NormResult evaluate_norm(FieldComponents f, const SpaceSpec& space, const PartitionOfUnity& part,
                         const BallFamily& balls);

/// Spectral gradient components of f.
std::vector<GridFunction> gradient(const GridFunction& f);

// Scaling, embedding and equivalence checks ---------------------------------

/// f(c + lambda (x - c)) with c the box center and f regarded as supported in
/// the fundamental cell around c. lambda must be a power of two; contractions
/// (lambda < 1) use spectral interpolation.
GridFunction dilate(const GridFunction& f, double lambda);

struct ScalingRow {
  double lambda = 1.0;
  double ratio = 1.0;       // ||f(lambda .)|| / ||f||
  double envelope = 1.0;    // lambda^{-n/p} sup{1,lambda}^s, or the log form for s = 0
  double log_factor = 1.0;  // (1 + |log lambda|)^alpha when s = 0, 1 otherwise
};

struct ScalingReport {
  SpaceSpec space;
  std::vector<ScalingRow> rows;
  double fitted_exponent = 0.0;   // least-squares slope of log ratio vs log lambda
  double expected_exponent = 0.0; // s - n/p
  double envelope_constant = 0.0; // max ratio / envelope
};

ScalingReport scaling_check(const GridFunction& f, const SpaceSpec& space,
                            std::span<const double> lambdas, const BallFamily& balls);

struct EmbeddingReport {
  double morrey = 0.0;
  double besov_morrey = 0.0;
  double ratio = 0.0;  // morrey / besov_morrey, 0 for f = 0
};

/// Morrey norm against the B^0 Morrey norm with the same p, q.
/// Requires 1 < q <= 2, q <= p, r <= q.
EmbeddingReport embedding_report(const GridFunction& f, double p, double q, double r,
                                 const BallFamily& balls);

struct EquivalenceReport {
  double b0 = 0.0;
  double grad_b0 = 0.0;
  double b1 = 0.0;
  double ratio = 0.0;          // (b0 + grad_b0) / b1
  double gradient_ratio = 0.0; // b1 / grad_b0
};

/// Requires f supported in the centered half box (|f| <= 1e-12 max|f| outside).
EquivalenceReport norm_equivalence_report(const GridFunction& f, double p, double q, double r,
                                          const BallFamily& balls);

/// True when every sample outside the centered sub-box of side L/2 is below
/// rel_tol * max|f|.
bool supported_in_half_box(const GridFunction& f, double rel_tol = 1e-12);

}  // namespace bmtk
