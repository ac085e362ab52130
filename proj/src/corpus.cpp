#include "bmtk/corpus.hpp"

#include <cmath>
#include <random>

#include "bmtk/errors.hpp"
#include "bmtk/littlewood_paley.hpp"

namespace bmtk {

namespace {

// Uniform in [lo, hi) from the top 53 bits, identical on every standard library.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

struct Gaussian {
  std::array<double, 3> center{};
  double sigma = 1.0;
  double amplitude = 1.0;
  double slope = 0.0;
  int axis = 0;
};

std::vector<Gaussian> bump_recipe(int dim, double length, int index) {
  std::mt19937_64 rng(1000u + static_cast<std::uint64_t>(index));
  const int count = 3 + index % 4;
  std::vector<Gaussian> out;
  for (int g = 0; g < count; ++g) {
    Gaussian b;
    for (int a = 0; a < 3; ++a) b.center[a] = length / 2 + uniform(rng, -0.08, 0.08) * length;
    b.sigma = uniform(rng, 0.07, 0.11) * length;
    b.amplitude = uniform(rng, 0.5, 1.5) * (rng() & 1u ? 1.0 : -1.0);
    b.slope = uniform(rng, -0.5, 0.5);
    b.axis = static_cast<int>(rng() % static_cast<std::uint64_t>(dim));
    out.push_back(b);
  }
  return out;
}

}  // namespace

double radial_cutoff(double r, double length) { return smoothstep(0.5 + 4.0 * r / length); }

double distance_to_center(std::span<const double> x, double length) {
  double r2 = 0.0;
  for (double v : x) r2 += (v - length / 2) * (v - length / 2);
  return std::sqrt(r2);
}

GridFunction corpus_bump(const GridSpec& spec, int index) {
  if (index < 0 || index >= kCorpusSize) throw UsageError("corpus index out of range");
  const auto recipe = bump_recipe(spec.dim, spec.length, index);
  const double L = spec.length;
  return sample(spec, [&](std::span<const double> x) {
    double sum = 0.0;
    for (const auto& g : recipe) {
      double d2 = 0.0;
      for (std::size_t a = 0; a < x.size(); ++a) d2 += (x[a] - g.center[a]) * (x[a] - g.center[a]);
      const double poly = 1.0 + g.slope * (x[g.axis] - g.center[g.axis]) / g.sigma;
      sum += g.amplitude * poly * std::exp(-0.5 * d2 / (g.sigma * g.sigma));
    }
    return radial_cutoff(distance_to_center(x, L), L) * sum;
  });
}

std::vector<GridFunction> corpus_bumps(const GridSpec& spec) {
  std::vector<GridFunction> out;
  for (int i = 0; i < kCorpusSize; ++i) out.push_back(corpus_bump(spec, i));
  return out;
}

GridFunction odd_trigonometric_field(const GridSpec& spec, std::uint64_t seed, int max_frequency) {
  spec.validate();
  if (max_frequency < 1 || max_frequency >= spec.points / 2)
    throw UsageError("max_frequency must lie in [1, N/2)");
  std::mt19937_64 rng(seed);
  struct Mode {
    std::array<int, 3> k;
    double amplitude;
  };
  std::vector<Mode> modes;
  const int K = max_frequency;
  const int k2lo = spec.dim == 3 ? -K : 0, k2hi = spec.dim == 3 ? K : 0;
  // Half of the lattice suffices since sin(-k.y) = -sin(k.y).
  for (int k0 = 0; k0 <= K; ++k0)
    for (int k1 = -K; k1 <= K; ++k1)
      for (int k2 = k2lo; k2 <= k2hi; ++k2) {
        const std::array<int, 3> k{k0, k1, k2};
        const bool positive = k0 > 0 || (k0 == 0 && (k1 > 0 || (k1 == 0 && k2 > 0)));
        if (!positive) continue;
        const double mag2 = double(k0) * k0 + double(k1) * k1 + double(k2) * k2;
        modes.push_back({k, uniform(rng, -1.0, 1.0) / (1.0 + mag2)});
      }
  GridFunction f(spec);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto idx = unflatten(spec, i);
    double sum = 0.0;
    for (const auto& m : modes) {
      // Integer phase keeps the reflection about the center node exact.
      long phase = 0;
      for (int a = 0; a < spec.dim; ++a) phase += static_cast<long>(m.k[a]) * (idx[a] - spec.points / 2);
      const long wrapped = ((phase % spec.points) + spec.points) % spec.points;
      sum += m.amplitude * std::sin(2.0 * std::numbers::pi * wrapped / spec.points);
    }
    f[i] = sum;
  }
  return f;
}

GridFunction counterexample_profile(const GridSpec& spec, int axis) {
  spec.validate();
  if (axis < 0 || axis >= spec.dim) throw UsageError("profile axis out of range");
  const double L = spec.length;
  const double c = L / 2 + spec.spacing() / 2;
  return sample(spec, [&](std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += (v - c) * (v - c);
    const double r = std::sqrt(r2);
    return radial_cutoff(r, L) * (x[static_cast<std::size_t>(axis)] - c) / r;
  });
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (int i = 0; i < kCorpusSize; ++i) out.push_back("bump" + std::to_string(i));
  out.push_back("zero");
  out.push_back("hedgehog_x");
  out.push_back("hedgehog_y");
  return out;
}

GridFunction builtin_field(const std::string& name, const GridSpec& spec) {
  spec.validate();
  if (name == "zero") return GridFunction(spec);
  if (name == "hedgehog_x") return counterexample_profile(spec, 0);
  if (name == "hedgehog_y") return counterexample_profile(spec, 1);
  if (name.rfind("bump", 0) == 0 && name.size() == 5 && name[4] >= '0' && name[4] <= '9')
    return corpus_bump(spec, name[4] - '0');
  throw UsageError("unknown builtin field '" + name + "'");
}

}  // namespace bmtk
