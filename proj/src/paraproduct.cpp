#include "bmtk/paraproduct.hpp"

#include <cmath>

#include "bmtk/errors.hpp"

namespace bmtk {

namespace {

void check_pair(const GridFunction& f, const GridFunction& g, const PartitionOfUnity& part) {
  if (!(f.spec() == g.spec())) throw UsageError("factors live on different grids");
  if (!(f.spec() == part.spec())) throw UsageError("partition built for a different grid");
}

std::vector<PaddedField> padded_blocks(const SpectralField& s, const PartitionOfUnity& part, int M) {
  std::vector<PaddedField> out(static_cast<std::size_t>(part.block_count()));
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < part.block_count(); ++j)
    out[static_cast<std::size_t>(j)] = pad(block_spectrum(s, part, j), M);
  return out;
}

struct SplitAccumulators {
  PaddedField pi1, pi2, pi3;
};

// Adds sign * (pi1, pi2, pi3)(F, G) given padded blocks of both factors.
void accumulate(const std::vector<PaddedField>& F, const std::vector<PaddedField>& G, double sign,
                SplitAccumulators& acc) {
  const int count = static_cast<int>(F.size());
  const GridSpec& base = F.front().base();
  const int M = F.front().spec().points;
  PaddedField low_f(base, M), low_g(base, M);  // running sums of blocks <= k-2
  for (int k = 0; k < count; ++k) {
    if (k >= 2) {
      low_f += F[static_cast<std::size_t>(k - 2)];
      low_g += G[static_cast<std::size_t>(k - 2)];
      acc.pi1.add_product(low_f, G[static_cast<std::size_t>(k)], sign);
      acc.pi3.add_product(F[static_cast<std::size_t>(k)], low_g, sign);
    }
    for (int l = k - 1; l <= k + 1; ++l)
      if (l >= 0 && l < count)
        acc.pi2.add_product(F[static_cast<std::size_t>(l)], G[static_cast<std::size_t>(k)], sign);
  }
}

PaddedField combination(const std::vector<PaddedField>& F, const PaddedField& G, int lo, int hi) {
  PaddedField acc(G.base(), G.spec().points);
  PaddedField sum(G.base(), G.spec().points);
  for (int i = std::max(lo, 0); i <= std::min(hi, static_cast<int>(F.size()) - 1); ++i)
    sum += F[static_cast<std::size_t>(i)];
  acc.add_product(sum, G);
  return acc;
}

}  // namespace

GridFunction ParaproductSplit::total() const { return pi1 + pi2 + pi3; }

GridFunction JacobianSplit::total() const { return pi1_xy + pi1_yx + pi3_xy + pi3_yx + diagonal; }

ParaproductSplit split_product(const GridFunction& f, const GridFunction& g,
                               const PartitionOfUnity& part) {
  check_pair(f, g, part);
  const GridSpec& spec = f.spec();
  const int M = dealias_points(spec.points);
  const auto F = padded_blocks(forward_transform(f), part, M);
  const auto G = padded_blocks(forward_transform(g), part, M);
  SplitAccumulators acc{PaddedField(spec, M), PaddedField(spec, M), PaddedField(spec, M)};
  accumulate(F, G, 1.0, acc);
  return {inverse_transform(truncate(acc.pi1)), inverse_transform(truncate(acc.pi2)),
          inverse_transform(truncate(acc.pi3))};
}

JacobianSplit jacobian_split(const GridFunction& a, const GridFunction& b, int i, int j,
                             const PartitionOfUnity& part) {
  check_pair(a, b, part);
  if (i == j) throw UsageError("Jacobian needs two distinct axes");
  const GridSpec& spec = a.spec();
  if (i < 0 || j < 0 || i >= spec.dim || j >= spec.dim) throw UsageError("Jacobian axis out of range");
  const int M = dealias_points(spec.points);
  const SpectralField sa = forward_transform(a), sb = forward_transform(b);

  JacobianSplit out;
  SplitAccumulators xy{PaddedField(spec, M), PaddedField(spec, M), PaddedField(spec, M)};
  accumulate(padded_blocks(partial_derivative(sa, i), part, M),
             padded_blocks(partial_derivative(sb, j), part, M), 1.0, xy);
  SplitAccumulators yx{PaddedField(spec, M), PaddedField(spec, M), PaddedField(spec, M)};
  accumulate(padded_blocks(partial_derivative(sa, j), part, M),
             padded_blocks(partial_derivative(sb, i), part, M), -1.0, yx);
  xy.pi2 += yx.pi2;
  out.pi1_xy = inverse_transform(truncate(xy.pi1));
  out.pi3_xy = inverse_transform(truncate(xy.pi3));
  out.pi1_yx = inverse_transform(truncate(yx.pi1));
  out.pi3_yx = inverse_transform(truncate(yx.pi3));
  out.diagonal = inverse_transform(truncate(xy.pi2));
  return out;
}

SupportReport support_check(const GridFunction& a, const GridFunction& b, int l, SupportKind kind,
                            const PartitionOfUnity& part) {
  check_pair(a, b, part);
  if (l < 2 || l > part.j_max()) throw UsageError("support check needs 2 <= l <= j_max");
  const GridSpec& spec = a.spec();
  const int M = 2 * spec.points;
  const auto A = padded_blocks(partial_derivative(forward_transform(a), 0), part, M);
  const PaddedField B = pad(block_spectrum(partial_derivative(forward_transform(b), 1), part, l), M);

  SupportReport rep;
  rep.kind = kind;
  rep.block = l;
  PaddedField prod;
  if (kind == SupportKind::LowHigh) {
    rep.lower = std::ldexp(1.0, l - 3);
    rep.upper = std::ldexp(1.0, l + 3);
    prod = combination(A, B, 0, l - 2);
  } else {
    rep.lower = 0.0;
    rep.upper = 5.0 * std::ldexp(1.0, l);
    prod = combination(A, B, l - 1, l + 1);
  }
  const SpectralField s = padded_spectrum(prod);
  const GridSpec& ps = s.spec();
  const auto c = s.coeffs();
  const int last = ps.points / 2;
  for_each_frequency(ps, [&](std::size_t idx, const std::array<int, 3>& k) {
    // Interior bins of the last axis stand for a conjugate pair.
    const int kl = k[static_cast<std::size_t>(ps.dim - 1)];
    const double w = (kl == 0 || kl == -last) ? 1.0 : 2.0;
    const double mass = w * std::norm(c[idx]);
    const double t = frequency_magnitude(ps, k);
    rep.total_mass += mass;
    if (t < rep.lower || t > rep.upper) rep.outside_mass += mass;
  });
  if (rep.total_mass > 0.0) rep.ratio = rep.outside_mass / rep.total_mass;
  return rep;
}

StabilityReport stability_report(const GridFunction& f, const GridFunction& g,
                                 const PartitionOfUnity& part, const BallFamily& balls) {
  check_pair(f, g, part);
  const double n = f.spec().dim;
  const GridFunction gf = multiply(g, f);
  StabilityReport rep;
  rep.product = besov_morrey_norm(FieldComponents(&gf, 1), 0.0, n, 2.0, 2.0, part, balls).value;
  rep.g_norm = besov_morrey_norm(FieldComponents(&g, 1), 0.0, n, 2.0, 2.0, part, balls).value;
  rep.f_norm = besov_morrey_norm(FieldComponents(&f, 1), 1.0, n, 2.0, 2.0, part, balls).value +
               f.max_abs();
  const double den = rep.g_norm * rep.f_norm;
  rep.ratio = den > 0.0 ? rep.product / den : 0.0;
  return rep;
}

}  // namespace bmtk
