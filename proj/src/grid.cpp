#include "bmtk/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bmtk/errors.hpp"
#include "bmtk/kernels.hpp"
#include "fft.hpp"

namespace bmtk {

void GridSpec::validate() const {
  if (dim != 2 && dim != 3) throw UsageError("grid dimension must be 2 or 3");
  if (points < 8 || (points & (points - 1)) != 0)
    throw UsageError("grid points per axis must be a power of two >= 8, got " +
                     std::to_string(points));
  if (!(length > 0.0) || !std::isfinite(length)) throw UsageError("box length must be positive");
}

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (int i = 0; i < dim; ++i) s *= static_cast<std::size_t>(points);
  return s;
}

std::size_t GridSpec::spectral_size() const {
  std::size_t s = static_cast<std::size_t>(points / 2 + 1);
  for (int i = 0; i < dim - 1; ++i) s *= static_cast<std::size_t>(points);
  return s;
}

double GridSpec::cell_volume() const { return std::pow(spacing(), dim); }

// GridFunction ------------------------------------------------------------

GridFunction::GridFunction(const GridSpec& spec, double fill) : spec_(spec) {
  spec_.validate();
  values_.assign(spec_.size(), fill);
}

GridFunction::GridFunction(const GridSpec& spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  spec_.validate();
  if (values_.size() != spec_.size())
    throw UsageError("sample count " + std::to_string(values_.size()) + " does not match grid");
}

void GridFunction::check_finite() const {
  for (double v : values_)
    if (!std::isfinite(v)) throw UsageError("grid function contains non-finite samples");
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return values_.empty() ? 0.0 : s / static_cast<double>(values_.size());
}

namespace {
void require_same(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw UsageError("grid specs do not match");
}
}  // namespace

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_same(spec_, other.spec_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require_same(spec_, other.spec_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double c, GridFunction a) { return a *= c; }

// SpectralField -----------------------------------------------------------

SpectralField::SpectralField(const GridSpec& spec) : spec_(spec) {
  spec_.validate();
  coeffs_.assign(spec_.spectral_size(), Complex{});
}

namespace {

std::size_t half_index(const GridSpec& spec, const std::array<int, 3>& k) {
  const int n = spec.points;
  const std::size_t half = static_cast<std::size_t>(n / 2 + 1);
  auto wrap = [n](int v) { return static_cast<std::size_t>(((v % n) + n) % n); };
  if (spec.dim == 2) return wrap(k[0]) * half + static_cast<std::size_t>(k[1]);
  return (wrap(k[0]) * static_cast<std::size_t>(n) + wrap(k[1])) * half +
         static_cast<std::size_t>(k[2]);
}

}  // namespace

Complex SpectralField::at(std::span<const int> k) const {
  const int d = spec_.dim;
  const int last = k[d - 1];
  std::array<int, 3> idx{0, 0, 0};
  if (last >= 0) {
    for (int a = 0; a < d; ++a) idx[a] = k[a];
    return coeffs_[half_index(spec_, idx)];
  }
  for (int a = 0; a < d; ++a) idx[a] = -k[a];
  return std::conj(coeffs_[half_index(spec_, idx)]);
}

double SpectralField::energy() const {
  const std::size_t half = static_cast<std::size_t>(spec_.points / 2 + 1);
  double e = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const std::size_t last = i % half;
    const double w = (last == 0 || last == half - 1) ? 1.0 : 2.0;
    e += w * std::norm(coeffs_[i]);
  }
  return e;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same(spec_, other.spec_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double c) {
  for (auto& v : coeffs_) v *= c;
  return *this;
}

void for_each_frequency(const GridSpec& spec,
                        const std::function<void(std::size_t, const std::array<int, 3>&)>& fn) {
  const int n = spec.points;
  const int half = n / 2 + 1;
  std::array<int, 3> k{0, 0, 0};
  std::size_t flat = 0;
  auto last_freq = [n](int i) { return i == n / 2 ? -n / 2 : i; };
  if (spec.dim == 2) {
    for (int i = 0; i < n; ++i) {
      k[0] = signed_frequency(i, n);
      for (int j = 0; j < half; ++j, ++flat) {
        k[1] = last_freq(j);
        fn(flat, k);
      }
    }
    return;
  }
  for (int i = 0; i < n; ++i) {
    k[0] = signed_frequency(i, n);
    for (int j = 0; j < n; ++j) {
      k[1] = signed_frequency(j, n);
      for (int l = 0; l < half; ++l, ++flat) {
        k[2] = last_freq(l);
        fn(flat, k);
      }
    }
  }
}

bool on_nyquist(const GridSpec& spec, const std::array<int, 3>& k) {
  for (int a = 0; a < spec.dim; ++a)
    if (k[a] == -spec.points / 2) return true;
  return false;
}

double frequency_magnitude(const GridSpec& spec, const std::array<int, 3>& k) {
  double s = 0.0;
  for (int a = 0; a < spec.dim; ++a) {
    const double w = spec.wavenumber(k[a]);
    s += w * w;
  }
  return std::sqrt(s);
}

// Transforms --------------------------------------------------------------

SpectralField forward_transform(const GridFunction& f) {
  const GridSpec& spec = f.spec();
  SpectralField s(spec);
  detail::r2c(spec.dim, spec.points, f.values().data(), s.coeffs().data());
  s *= 1.0 / static_cast<double>(spec.size());
  return s;
}

GridFunction inverse_transform(const SpectralField& s) {
  const GridSpec& spec = s.spec();
  std::vector<Complex> work(s.coeffs().begin(), s.coeffs().end());
  std::vector<double> out(spec.size());
  detail::c2r(spec.dim, spec.points, work.data(), out.data());
  return GridFunction(spec, std::move(out));
}

SpectralField partial_derivative(const SpectralField& s, int axis) {
  const GridSpec& spec = s.spec();
  if (axis < 0 || axis >= spec.dim)
    throw UsageError("derivative axis " + std::to_string(axis) + " out of range");
  SpectralField out(spec);
  auto src = s.coeffs();
  auto dst = out.coeffs();
  for_each_frequency(spec, [&](std::size_t i, const std::array<int, 3>& k) {
    if (k[axis] == -spec.points / 2) return;
    dst[i] = Complex(0.0, spec.wavenumber(k[axis])) * src[i];
  });
  return out;
}

GridFunction partial_derivative(const GridFunction& f, int axis) {
  return inverse_transform(partial_derivative(forward_transform(f), axis));
}

SpectralField solve_poisson(const SpectralField& f, double mean_tol, double max_abs) {
  const GridSpec& spec = f.spec();
  const double mean = f.coeffs()[0].real();
  if (std::abs(mean) > mean_tol * max_abs)
    throw MeanNotZero("Poisson right-hand side mean " + std::to_string(mean) +
                      " exceeds tolerance relative to max " + std::to_string(max_abs));
  SpectralField u(spec);
  auto src = f.coeffs();
  auto dst = u.coeffs();
  for_each_frequency(spec, [&](std::size_t i, const std::array<int, 3>& k) {
    if (i == 0) return;
    const double m = frequency_magnitude(spec, k);
    dst[i] = src[i] / (m * m);
  });
  return u;
}

GridFunction solve_poisson(const GridFunction& f, double mean_tol) {
  return inverse_transform(solve_poisson(forward_transform(f), mean_tol, f.max_abs()));
}

GridFunction negative_laplacian(const GridFunction& f) {
  SpectralField s = forward_transform(f);
  auto c = s.coeffs();
  for_each_frequency(f.spec(), [&](std::size_t i, const std::array<int, 3>& k) {
    const double m = frequency_magnitude(f.spec(), k);
    c[i] *= m * m;
  });
  return inverse_transform(s);
}

std::array<int, 3> unflatten(const GridSpec& spec, std::size_t flat) {
  std::array<int, 3> idx{0, 0, 0};
  const std::size_t n = static_cast<std::size_t>(spec.points);
  for (int a = spec.dim - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % n);
    flat /= n;
  }
  return idx;
}

std::size_t flatten(const GridSpec& spec, const std::array<int, 3>& index) {
  const std::size_t n = static_cast<std::size_t>(spec.points);
  std::size_t flat = 0;
  for (int a = 0; a < spec.dim; ++a) {
    const int i = ((index[a] % spec.points) + spec.points) % spec.points;
    flat = flat * n + static_cast<std::size_t>(i);
  }
  return flat;
}

std::array<double, 3> node_position(const GridSpec& spec, std::size_t flat) {
  const auto idx = unflatten(spec, flat);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int a = 0; a < spec.dim; ++a) x[a] = spec.spacing() * idx[a];
  return x;
}

GridFunction sample(const GridSpec& spec, const PointEvaluator& evaluator) {
  GridFunction f(spec);
  auto v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto x = node_position(spec, i);
    const double y = evaluator(std::span<const double>(x.data(), static_cast<std::size_t>(spec.dim)));
    if (!std::isfinite(y)) throw UsageError("evaluator returned a non-finite value");
    v[i] = y;
  }
  return f;
}

// Dealiasing ----------------------------------------------------------------

PaddedField::PaddedField(const GridSpec& base, int padded_points) : base_(base) {
  padded_ = base;
  padded_.points = padded_points;
  values_.assign(padded_.size(), 0.0);
}

PaddedField& PaddedField::operator+=(const PaddedField& other) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

PaddedField& PaddedField::operator-=(const PaddedField& other) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

void PaddedField::add_product(const PaddedField& a, const PaddedField& b, double sign) {
  kernels::omp::add_product(values_, a.values_, b.values_, sign);
}

PaddedField pad(const SpectralField& s, int padded_points) {
  const GridSpec& base = s.spec();
  PaddedField out(base, padded_points);
  GridSpec ps = out.spec();
  std::vector<Complex> work(ps.spectral_size());
  auto src = s.coeffs();
  for_each_frequency(base, [&](std::size_t i, const std::array<int, 3>& k) {
    if (on_nyquist(base, k)) return;
    work[half_index(ps, k)] = src[i];
  });
  detail::c2r(ps.dim, ps.points, work.data(), out.values().data());
  return out;
}

SpectralField padded_spectrum(const PaddedField& p) {
  const GridSpec& ps = p.spec();
  SpectralField s(ps);
  detail::r2c(ps.dim, ps.points, p.values().data(), s.coeffs().data());
  s *= 1.0 / static_cast<double>(ps.size());
  return s;
}

SpectralField truncate(const PaddedField& p) {
  const GridSpec& base = p.base();
  const GridSpec& ps = p.spec();
  std::vector<Complex> work(ps.spectral_size());
  detail::r2c(ps.dim, ps.points, p.values().data(), work.data());
  const double scale = 1.0 / static_cast<double>(ps.size());
  SpectralField out(base);
  auto dst = out.coeffs();
  for_each_frequency(base, [&](std::size_t i, const std::array<int, 3>& k) {
    if (on_nyquist(base, k)) return;
    dst[i] = work[half_index(ps, k)] * scale;
  });
  return out;
}

SpectralField drop_nyquist(SpectralField s) {
  const GridSpec spec = s.spec();
  auto c = s.coeffs();
  for_each_frequency(spec, [&](std::size_t i, const std::array<int, 3>& k) {
    if (on_nyquist(spec, k)) c[i] = Complex{};
  });
  return s;
}

GridFunction multiply(const GridFunction& a, const GridFunction& b) {
  require_same(a.spec(), b.spec());
  const int m = dealias_points(a.spec().points);
  PaddedField pa = pad(forward_transform(a), m);
  PaddedField pb = pad(forward_transform(b), m);
  PaddedField prod(a.spec(), m);
  prod.add_product(pa, pb);
  return inverse_transform(truncate(prod));
}

}  // namespace bmtk
