#include "bmtk/norms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "bmtk/errors.hpp"
#include "bmtk/kernels.hpp"

namespace bmtk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

const GridSpec& common_spec(FieldComponents f) {
  if (f.empty()) throw UsageError("field has no components");
  for (const auto& c : f)
    if (!(c.spec() == f.front().spec())) throw UsageError("field components live on different grids");
  return f.front().spec();
}

std::vector<std::span<const double>> views(FieldComponents f) {
  std::vector<std::span<const double>> out;
  out.reserve(f.size());
  for (const auto& c : f) out.push_back(c.values());
  return out;
}

// |f(x)|^q with the Euclidean magnitude across components.
std::vector<double> density(FieldComponents f, double q) {
  std::vector<double> out(f.front().size());
  const auto v = views(f);
  kernels::omp::euclidean_power(v, q, out);
  return out;
}

double lp_of(FieldComponents f, double p) {
  const GridSpec& spec = common_spec(f);
  if (std::isinf(p)) {
    const auto d = density(f, 2.0);
    double m = 0.0;
    for (double x : d) m = std::max(m, x);
    return std::sqrt(m);
  }
  const auto d = density(f, p);
  const double sum = kernels::omp::power_sum(d, 1.0);
  return std::pow(sum * spec.cell_volume(), 1.0 / p);
}

struct Candidate {
  double value;
  std::size_t center;
  int half;
};

double morrey_of_density(const GridSpec& spec, std::span<const double> dens, double p, double q,
                         const BallFamily& balls) {
  balls.validate(spec);
  const int n = spec.dim;
  const int per_axis = spec.points / balls.stride;
  const double expo = n / p - n / q;
  const double vol = spec.cell_volume();
  const kernels::PrefixTable table = kernels::omp::prefix_sum(n, spec.points, dens);

  std::vector<Candidate> all;
  double best = 0.0;
  for (int h : balls.half_widths) {
    const double weight = std::pow(h * spec.spacing(), expo);
    const auto sums = kernels::omp::window_sums(table, balls.stride, 2 * h);
    for (std::size_t c = 0; c < sums.size(); ++c) {
      const double v = weight * std::pow(std::max(sums[c], 0.0) * vol, 1.0 / q);
      best = std::max(best, v);
      all.push_back({v, c, h});
    }
  }

  // The table differences carry cancellation error; re-sum the cubes whose
  // value is within that error of the maximum directly.
  const double cut = best * (1.0 - 1e-9);
  std::vector<Candidate> near;
  for (const auto& c : all)
    if (c.value >= cut) near.push_back(c);
  std::sort(near.begin(), near.end(), [](const Candidate& a, const Candidate& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.half != b.half) return a.half > b.half;
    return a.center < b.center;
  });
  if (near.size() > 256) near.resize(256);

  // Bound the direct work: many ties at the largest radius would otherwise
  // re-sum the whole grid hundreds of times.
  const double budget = std::max(32.0 * static_cast<double>(spec.size()), 4194304.0);
  double spent = 0.0;
  double result = 0.0;
  for (const auto& c : near) {
    const double cost = std::pow(2.0 * c.half, n);
    if (spent > 0.0 && spent + cost > budget) break;
    spent += cost;
    int start[3] = {0, 0, 0};
    std::size_t rem = c.center;
    for (int a = n - 1; a >= 0; --a) {
      start[a] = static_cast<int>(rem % static_cast<std::size_t>(per_axis)) * balls.stride - c.half;
      rem /= static_cast<std::size_t>(per_axis);
    }
    const double sum = kernels::direct_cube_sum(n, spec.points, dens, start, 2 * c.half);
    const double weight = std::pow(c.half * spec.spacing(), expo);
    result = std::max(result, weight * std::pow(std::max(sum, 0.0) * vol, 1.0 / q));
  }
  return result;
}

void check_morrey_indices(double p, double q) {
  if (!(q >= 1.0)) throw UsageError("Morrey norm requires q >= 1");
  if (q > p) throw UsageError("requires q ≤ p (got q > p)");
  if (std::isinf(p)) throw UsageError("Morrey norm requires p < inf");
}

void check_sum_index(double r, const char* name) {
  if (!(r >= 1.0)) throw UsageError(std::string("summability index ") + name + " must be >= 1");
}

double combine(const std::vector<double>& weighted, double r) {
  if (std::isinf(r)) {
    double m = 0.0;
    for (double v : weighted) m = std::max(m, v);
    return m;
  }
  double sum = 0.0;
  for (double v : weighted) sum += std::pow(v, r);
  return std::pow(sum, 1.0 / r);
}

std::vector<SpectralField> spectra(FieldComponents f) {
  std::vector<SpectralField> out;
  out.reserve(f.size());
  for (const auto& c : f) out.push_back(forward_transform(c));
  return out;
}

std::vector<GridFunction> block_components(std::span<const SpectralField> f,
                                           const PartitionOfUnity& part, int j) {
  std::vector<GridFunction> out;
  out.reserve(f.size());
  for (const auto& s : f) out.push_back(block(s, part, j));
  return out;
}

// No grid frequency reaches the lower edge 2^{j-1} of block j.
bool block_is_empty(const PartitionOfUnity& part, int j) {
  const GridSpec& spec = part.spec();
  const double top = spec.wavenumber(spec.points / 2) * std::sqrt(static_cast<double>(spec.dim));
  return j >= 1 && std::ldexp(1.0, j - 1) >= top;
}

void check_spectra(std::span<const SpectralField> f, const PartitionOfUnity& part) {
  if (f.empty()) throw UsageError("field has no components");
  for (const auto& s : f)
    if (!(s.spec() == part.spec())) throw UsageError("partition built for a different grid");
}

double summability_index(const SpaceSpec& space) {
  return space.family == Family::BesovMorrey ? space.r : space.q;
}

double log2_exact(double lambda) {
  int e = 0;
  const double m = std::frexp(lambda, &e);
  if (!(lambda > 0.0) || m != 0.5) throw UsageError("dilation factor is not a power of two");
  return e - 1;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::Lp: return "Lp";
    case Family::Linf: return "Linf";
    case Family::Morrey: return "Morrey";
    case Family::Besov: return "Besov";
    case Family::TriebelLizorkin: return "TriebelLizorkin";
    case Family::BesovMorrey: return "BesovMorrey";
  }
  return "unknown";
}

Family family_from_string(const std::string& name) {
  // Case-insensitive, with '_' and '-' ignored: "besov_morrey" names BesovMorrey.
  auto fold = [](const std::string& x) {
    std::string out;
    for (char ch : x)
      if (ch != '_' && ch != '-') out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
  };
  for (Family f : {Family::Lp, Family::Linf, Family::Morrey, Family::Besov, Family::TriebelLizorkin,
                   Family::BesovMorrey})
    if (fold(to_string(f)) == fold(name)) return f;
  throw UsageError("unknown space family '" + name + "'");
}

void SpaceSpec::validate() const {
  if (!std::isfinite(s)) throw UsageError("smoothness s must be finite");
  switch (family) {
    case Family::Linf: return;
    case Family::Lp:
      if (!(p >= 1.0)) throw UsageError("Lp requires p >= 1");
      return;
    case Family::Morrey:
      check_morrey_indices(p, q);
      return;
    case Family::Besov:
      if (!(p >= 1.0)) throw UsageError("Besov requires p >= 1");
      check_sum_index(q, "q");
      return;
    case Family::TriebelLizorkin:
      if (!(p >= 1.0)) throw UsageError("Triebel-Lizorkin requires p >= 1");
      if (std::isinf(p)) throw UsageError("Triebel-Lizorkin requires p < inf");
      check_sum_index(q, "q");
      return;
    case Family::BesovMorrey:
      check_morrey_indices(p, q);
      check_sum_index(r, "r");
      return;
  }
}

BallFamily BallFamily::standard(const GridSpec& spec) {
  spec.validate();
  BallFamily b;
  b.stride = std::max(1, spec.points / 32);
  for (int h = spec.points / 2; h >= 2; h /= 2) b.half_widths.push_back(h);
  return b;
}

BallFamily BallFamily::exhaustive(const GridSpec& spec) {
  BallFamily b = standard(spec);
  b.stride = 1;
  return b;
}

void BallFamily::validate(const GridSpec& spec) const {
  if (!is_power_of_two(stride) || stride > spec.points)
    throw UsageError("ball center stride must be a power of two not exceeding N");
  if (half_widths.empty()) throw UsageError("ball family has no radii");
  for (int h : half_widths)
    if (h < 1 || 2 * h > spec.points) throw UsageError("ball radius must satisfy 0 < R <= L/2");
}

double lp_norm(const GridFunction& f, double p) { return lp_norm(FieldComponents(&f, 1), p); }

double lp_norm(FieldComponents f, double p) {
  if (!(p >= 1.0)) throw UsageError("Lp requires p >= 1");
  return lp_of(f, p);
}

double morrey_norm(const GridFunction& f, double p, double q, const BallFamily& balls) {
  return morrey_norm(FieldComponents(&f, 1), p, q, balls);
}

double morrey_norm(FieldComponents f, double p, double q, const BallFamily& balls) {
  check_morrey_indices(p, q);
  const GridSpec& spec = common_spec(f);
  const auto d = density(f, q);
  return morrey_of_density(spec, d, p, q, balls);
}

NormResult besov_norm(std::span<const SpectralField> f, double s, double p, double q,
                      const PartitionOfUnity& part) {
  if (!(p >= 1.0)) throw UsageError("Besov requires p >= 1");
  check_sum_index(q, "q");
  check_spectra(f, part);
  NormResult res;
  for (int j = 0; j < part.block_count(); ++j) {
    if (block_is_empty(part, j)) {
      res.blocks.push_back(0.0);
      continue;
    }
    const auto b = block_components(f, part, j);
    res.blocks.push_back(std::pow(2.0, j * s) * lp_of(b, p));
  }
  res.value = combine(res.blocks, q);
  return res;
}

NormResult besov_norm(FieldComponents f, double s, double p, double q, const PartitionOfUnity& part) {
  common_spec(f);
  const auto sp = spectra(f);
  return besov_norm(sp, s, p, q, part);
}

NormResult triebel_norm(FieldComponents f, double s, double p, double q,
                        const PartitionOfUnity& part) {
  if (!(p >= 1.0)) throw UsageError("Triebel-Lizorkin requires p >= 1");
  if (std::isinf(p)) throw UsageError("Triebel-Lizorkin requires p < inf");
  check_sum_index(q, "q");
  const GridSpec& spec = common_spec(f);
  const auto sp = spectra(f);
  check_spectra(sp, part);
  GridFunction acc(spec);
  auto av = acc.values();
  NormResult res;
  for (int j = 0; j < part.block_count(); ++j) {
    const auto b = block_components(sp, part, j);
    const double w = std::pow(2.0, j * s);
    res.blocks.push_back(w * lp_of(b, p));
    const auto mag = density(b, 2.0);
    for (std::size_t i = 0; i < av.size(); ++i) {
      const double v = w * std::sqrt(mag[i]);
      av[i] = std::isinf(q) ? std::max(av[i], v) : av[i] + std::pow(v, q);
    }
  }
  if (!std::isinf(q))
    for (double& v : av) v = std::pow(v, 1.0 / q);
  res.value = lp_of(FieldComponents(&acc, 1), p);
  return res;
}

NormResult besov_morrey_norm(std::span<const SpectralField> f, double s, double p, double q,
                             double r, const PartitionOfUnity& part, const BallFamily& balls) {
  check_morrey_indices(p, q);
  check_sum_index(r, "r");
  check_spectra(f, part);
  NormResult res;
  for (int j = 0; j < part.block_count(); ++j) {
    if (block_is_empty(part, j)) {
      res.blocks.push_back(0.0);
      continue;
    }
    const auto b = block_components(f, part, j);
    const auto d = density(b, q);
    res.blocks.push_back(std::pow(2.0, j * s) * morrey_of_density(part.spec(), d, p, q, balls));
  }
  res.value = combine(res.blocks, r);
  return res;
}

NormResult besov_morrey_norm(FieldComponents f, double s, double p, double q, double r,
                             const PartitionOfUnity& part, const BallFamily& balls) {
  common_spec(f);
  const auto sp = spectra(f);
  return besov_morrey_norm(sp, s, p, q, r, part, balls);
}

NormResult evaluate_norm(FieldComponents f, const SpaceSpec& space, const PartitionOfUnity& part,
                         const BallFamily& balls) {
  space.validate();
  switch (space.family) {
    case Family::Lp: return {lp_norm(f, space.p), {}};
    case Family::Linf: return {lp_norm(f, kInf), {}};
    case Family::Morrey: return {morrey_norm(f, space.p, space.q, balls), {}};
    case Family::Besov: return besov_norm(f, space.s, space.p, space.q, part);
    case Family::TriebelLizorkin: return triebel_norm(f, space.s, space.p, space.q, part);
    case Family::BesovMorrey:
      return besov_morrey_norm(f, space.s, space.p, space.q, space.r, part, balls);
  }
  throw UsageError("unknown space family");
}

std::vector<GridFunction> gradient(const GridFunction& f) {
  const SpectralField s = forward_transform(f);
  std::vector<GridFunction> out;
  for (int a = 0; a < f.spec().dim; ++a) out.push_back(inverse_transform(partial_derivative(s, a)));
  return out;
}

GridFunction dilate(const GridFunction& f, double lambda) {
  const int m = static_cast<int>(log2_exact(lambda));
  const GridSpec& spec = f.spec();
  const int N = spec.points;
  const int c = N / 2;
  GridFunction out(spec);
  if (m == 0) return f;
  if (m > 0) {
    const int scale = 1 << m;
    for (std::size_t i = 0; i < out.size(); ++i) {
      auto idx = unflatten(spec, i);
      bool inside = true;
      for (int a = 0; a < spec.dim; ++a) {
        const int src = c + scale * (idx[a] - c);
        if (src < 0 || src >= N) inside = false;
        idx[a] = src;
      }
      if (inside) out[i] = f[flatten(spec, idx)];
    }
    return out;
  }
  const int scale = 1 << -m;
  const long fine_size = static_cast<long>(N) * scale;
  const long budget = spec.dim == 2 ? 4096 : 512;
  if (fine_size > budget) throw UsageError("contraction factor too small for this grid");
  const PaddedField fine = pad(forward_transform(f), static_cast<int>(fine_size));
  const GridSpec& fs = fine.spec();
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto idx = unflatten(spec, i);
    for (int a = 0; a < spec.dim; ++a) idx[a] = c * scale + (idx[a] - c);
    out[i] = fine.values()[flatten(fs, idx)];
  }
  return out;
}

ScalingReport scaling_check(const GridFunction& f, const SpaceSpec& space,
                            std::span<const double> lambdas, const BallFamily& balls) {
  space.validate();
  if (lambdas.empty()) throw UsageError("scaling check needs at least one dilation factor");
  for (double l : lambdas) log2_exact(l);
  const GridSpec& spec = f.spec();
  const PartitionOfUnity part(spec);
  const int n = spec.dim;
  const double p = space.family == Family::Linf ? kInf : space.p;
  const bool dyadic = space.family == Family::Besov || space.family == Family::TriebelLizorkin ||
                      space.family == Family::BesovMorrey;
  const double s = dyadic ? space.s : 0.0;
  const double r = summability_index(space);

  ScalingReport rep;
  rep.space = space;
  rep.expected_exponent = s - (std::isinf(p) ? 0.0 : n / p);
  const double base = evaluate_norm(FieldComponents(&f, 1), space, part, balls).value;
  if (!(base > 0.0)) throw UsageError("scaling check needs a nonzero field");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double lambda : lambdas) {
    ScalingRow row;
    row.lambda = lambda;
    const GridFunction g = dilate(f, lambda);
    row.ratio = lambda == 1.0 ? 1.0 : evaluate_norm(FieldComponents(&g, 1), space, part, balls).value / base;
    const double power = std::pow(lambda, -(std::isinf(p) ? 0.0 : n / p));
    if (dyadic && s == 0.0) {
      const double inv = std::isinf(r) ? 0.0 : 1.0 / r;
      const double alpha = lambda >= 1.0 ? inv : 1.0 - inv;
      row.log_factor = std::pow(1.0 + std::abs(std::log(lambda)), alpha);
      row.envelope = power * row.log_factor;
    } else {
      row.envelope = power * std::pow(std::max(1.0, lambda), s);
    }
    rep.envelope_constant = std::max(rep.envelope_constant, row.ratio / row.envelope);
    const double x = std::log(lambda), y = std::log(row.ratio);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    rep.rows.push_back(row);
  }
  const double k = static_cast<double>(rep.rows.size());
  const double den = k * sxx - sx * sx;
  rep.fitted_exponent = den > 1e-12 ? (k * sxy - sx * sy) / den : 0.0;
  return rep;
}

namespace {

void check_embedding_indices(double p, double q, double r) {
  if (!(q > 1.0 && q <= 2.0)) throw UsageError("requires 1 < q <= 2");
  if (q > p) throw UsageError("requires q ≤ p (got q > p)");
  if (r > q) throw UsageError("requires r <= q");
  check_morrey_indices(p, q);
  check_sum_index(r, "r");
}

}  // namespace

EmbeddingReport embedding_report(const GridFunction& f, double p, double q, double r,
                                 const BallFamily& balls) {
  check_embedding_indices(p, q, r);
  const PartitionOfUnity part(f.spec());
  EmbeddingReport rep;
  rep.morrey = morrey_norm(f, p, q, balls);
  rep.besov_morrey = besov_morrey_norm(FieldComponents(&f, 1), 0.0, p, q, r, part, balls).value;
  rep.ratio = rep.besov_morrey > 0.0 ? rep.morrey / rep.besov_morrey : 0.0;
  return rep;
}

bool supported_in_half_box(const GridFunction& f, double rel_tol) {
  const GridSpec& spec = f.spec();
  const double limit = rel_tol * f.max_abs();
  const int lo = spec.points / 4, hi = 3 * spec.points / 4;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto idx = unflatten(spec, i);
    bool inside = true;
    for (int a = 0; a < spec.dim; ++a) inside = inside && idx[a] >= lo && idx[a] <= hi;
    if (!inside && std::abs(f[i]) > limit) return false;
  }
  return true;
}

EquivalenceReport norm_equivalence_report(const GridFunction& f, double p, double q, double r,
                                          const BallFamily& balls) {
  check_embedding_indices(p, q, r);
  if (!supported_in_half_box(f)) throw UsageError("field is not supported in the centered half box");
  const PartitionOfUnity part(f.spec());
  const SpectralField sf = forward_transform(f);
  std::vector<SpectralField> grad;
  for (int a = 0; a < f.spec().dim; ++a) grad.push_back(partial_derivative(sf, a));
  EquivalenceReport rep;
  rep.b0 = besov_morrey_norm(std::span<const SpectralField>(&sf, 1), 0.0, p, q, r, part, balls).value;
  rep.b1 = besov_morrey_norm(std::span<const SpectralField>(&sf, 1), 1.0, p, q, r, part, balls).value;
  rep.grad_b0 = besov_morrey_norm(grad, 0.0, p, q, r, part, balls).value;
  if (rep.b1 > 0.0) rep.ratio = (rep.b0 + rep.grad_b0) / rep.b1;
  if (rep.grad_b0 > 0.0) rep.gradient_ratio = rep.b1 / rep.grad_b0;
  return rep;
}

}  // namespace bmtk
