#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace bmtk {

using Complex = std::complex<double>;

/// Periodic box [0, length)^dim sampled with `points` nodes per axis.
struct GridSpec {
  int dim = 2;
  int points = 64;
  double length = 2.0 * std::numbers::pi;

  /// Throws UsageError unless dim in {2,3}, points >= 8 is a power of two
  /// and length > 0.
  void validate() const;

  std::size_t size() const;           // points^dim
  std::size_t spectral_size() const;  // points^(dim-1) * (points/2 + 1)
  double spacing() const { return length / points; }
  double cell_volume() const;
  /// Physical frequency of integer index k.
  double wavenumber(int k) const { return 2.0 * std::numbers::pi * k / length; }

  bool operator==(const GridSpec&) const = default;
};

/// Signed frequency of FFT bin `i` on an axis of `points` nodes
/// (range -points/2 .. points/2-1).
inline int signed_frequency(int i, int points) { return i < points / 2 ? i : i - points; }

/// Real samples, row-major (axis 0 slowest).
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(const GridSpec& spec, double fill = 0.0);
  GridFunction(const GridSpec& spec, std::vector<double> values);

  const GridSpec& spec() const { return spec_; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Throws UsageError if any sample is NaN or infinite.
  void check_finite() const;

  double max_abs() const;
  double mean() const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double c);

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double c, GridFunction a);

/// Fourier coefficients in the real-to-complex half layout: axes 0..dim-2
/// carry all bins, the last axis carries bins 0..points/2. Coefficients are
/// normalized so that the zero mode equals the mean of the samples.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }

  /// Coefficient of the integer frequency vector k (each entry in
  /// [-points/2, points/2)), reconstructed through Hermitian symmetry when
  /// k lies outside the stored half.
  Complex at(std::span<const int> k) const;

  /// Sum of |c_k|^2 over the full frequency lattice.
  double energy() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator*=(double c);

 private:
  GridSpec spec_;
  std::vector<Complex> coeffs_;
};

/// Visits every stored coefficient as fn(flat_index, k) with the signed
/// integer frequency k. On the last axis the Nyquist bin is reported as
/// -points/2.
void for_each_frequency(const GridSpec& spec,
                        const std::function<void(std::size_t, const std::array<int, 3>&)>& fn);

/// True if any component of k sits on the Nyquist bin -points/2.
bool on_nyquist(const GridSpec& spec, const std::array<int, 3>& k);

/// Physical |xi| for integer frequency k.
double frequency_magnitude(const GridSpec& spec, const std::array<int, 3>& k);

SpectralField forward_transform(const GridFunction& f);
GridFunction inverse_transform(const SpectralField& s);

/// Spectral derivative along `axis`; the Nyquist bin of that axis is zeroed.
GridFunction partial_derivative(const GridFunction& f, int axis);
SpectralField partial_derivative(const SpectralField& s, int axis);

/// Mean-zero u with -Lap u = f - mean(f). Throws MeanNotZero when
/// |mean(f)| > mean_tol * max|f|.
GridFunction solve_poisson(const GridFunction& f, double mean_tol = 1e-10);
/// Spectral variant; the zero mode of the input is discarded after the same check.
SpectralField solve_poisson(const SpectralField& f, double mean_tol, double max_abs);

/// Applies -Lap spectrally.
GridFunction negative_laplacian(const GridFunction& f);

using PointEvaluator = std::function<double(std::span<const double>)>;

/// Samples `evaluator` at the nodes x = spacing * index. Throws UsageError on
/// a non-finite value.
GridFunction sample(const GridSpec& spec, const PointEvaluator& evaluator);

/// Physical coordinate of node `index` along every axis.
std::array<double, 3> node_position(const GridSpec& spec, std::size_t flat_index);

/// Multi-index of a flat row-major index.
std::array<int, 3> unflatten(const GridSpec& spec, std::size_t flat_index);
std::size_t flatten(const GridSpec& spec, const std::array<int, 3>& index);

// Dealiased products -----------------------------------------------------

/// Physical samples of a band-limited field on a finer grid of `points`
/// nodes per axis (same box). Used to form exact products.
class PaddedField {
 public:
  PaddedField() = default;
  PaddedField(const GridSpec& base, int padded_points);

  const GridSpec& base() const { return base_; }
  const GridSpec& spec() const { return padded_; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  PaddedField& operator+=(const PaddedField& other);
  PaddedField& operator-=(const PaddedField& other);
  /// this += a * b pointwise.
  void add_product(const PaddedField& a, const PaddedField& b, double sign = 1.0);

 private:
  GridSpec base_;
  GridSpec padded_;
  std::vector<double> values_;
};

/// Padding needed for an alias-free product truncated back to `points`.
inline int dealias_points(int points) { return 3 * points / 2; }

/// Interpolates `s` onto a grid of `padded_points` per axis. Bins on the base
/// Nyquist are dropped.
PaddedField pad(const SpectralField& s, int padded_points);
/// Forward transform of the padded samples truncated to the base grid bins
/// |k_i| < points/2 (Nyquist dropped).
SpectralField truncate(const PaddedField& p);
/// Forward transform on the padded grid itself, no truncation.
SpectralField padded_spectrum(const PaddedField& p);

/// Pointwise product a*b without aliasing.
GridFunction multiply(const GridFunction& a, const GridFunction& b);

/// Drops Nyquist bins, making the field exactly band-limited in |k_i| < N/2.
SpectralField drop_nyquist(SpectralField s);

}  // namespace bmtk
