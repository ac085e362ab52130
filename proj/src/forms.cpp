#include "bmtk/forms.hpp"

#include <bit>
#include <cmath>

#include "bmtk/errors.hpp"

namespace bmtk {

namespace {

// (-1)^(number of pairs i in I, j in J with i > j): sign of sorting (I, J).
double merge_sign(unsigned I, unsigned J) {
  int count = 0;
  for (unsigned rest = I; rest; rest &= rest - 1) {
    const int i = std::countr_zero(rest);
    count += std::popcount(J & ((1u << i) - 1u));
  }
  return count % 2 ? -1.0 : 1.0;
}

void require_same(const FormField& a, const FormField& b) {
  if (!(a.spec() == b.spec()) || a.degree() != b.degree() || a.rows() != b.rows() ||
      a.cols() != b.cols())
    throw UsageError("forms differ in grid, degree or value shape");
}

unsigned full_mask(int n) { return (1u << n) - 1u; }

}  // namespace

MatrixField::MatrixField(const GridSpec& spec, int rows, int cols)
    : spec_(spec), rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw UsageError("matrix field needs positive shape");
  entries_.assign(static_cast<std::size_t>(rows * cols), GridFunction(spec));
}

MatrixField MatrixField::identity(const GridSpec& spec, int m) {
  MatrixField id(spec, m, m);
  for (int i = 0; i < m; ++i) id.at(i, i) = GridFunction(spec, 1.0);
  return id;
}

MatrixField& MatrixField::operator+=(const MatrixField& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("matrix shapes differ");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

MatrixField& MatrixField::operator-=(const MatrixField& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("matrix shapes differ");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

MatrixField& MatrixField::operator*=(double c) {
  for (auto& e : entries_) e *= c;
  return *this;
}

namespace {

std::vector<PaddedField> pad_entries(const MatrixField& m, int M) {
  std::vector<PaddedField> out(m.entries().size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = pad(forward_transform(m.entries()[i]), M);
  return out;
}

// acc += sign * a b with padded entries, shapes (r x k)(k x c).
void add_matmul(std::vector<PaddedField>& acc, const std::vector<PaddedField>& a,
                const std::vector<PaddedField>& b, int rows, int inner, int cols, double sign) {
#pragma omp parallel for schedule(static)
  for (int rc = 0; rc < rows * cols; ++rc) {
    const int r = rc / cols, c = rc % cols;
    for (int k = 0; k < inner; ++k)
      acc[static_cast<std::size_t>(rc)].add_product(a[static_cast<std::size_t>(r * inner + k)],
                                                    b[static_cast<std::size_t>(k * cols + c)], sign);
  }
}

MatrixField unpad(const std::vector<PaddedField>& acc, const GridSpec& spec, int rows, int cols) {
  MatrixField out(spec, rows, cols);
  for (std::size_t i = 0; i < acc.size(); ++i) out.entries()[i] = inverse_transform(truncate(acc[i]));
  return out;
}

}  // namespace

MatrixField matmul(const MatrixField& a, const MatrixField& b) {
  if (!(a.spec() == b.spec())) throw UsageError("matrix fields live on different grids");
  if (a.cols() != b.rows()) throw UsageError("matrix shapes do not compose");
  const GridSpec& spec = a.spec();
  const int M = dealias_points(spec.points);
  const auto pa = pad_entries(a, M), pb = pad_entries(b, M);
  std::vector<PaddedField> acc(static_cast<std::size_t>(a.rows() * b.cols()), PaddedField(spec, M));
  add_matmul(acc, pa, pb, a.rows(), a.cols(), b.cols(), 1.0);
  return unpad(acc, spec, a.rows(), b.cols());
}

std::vector<unsigned> multi_indices(int n, int k) {
  std::vector<unsigned> out;
  // Lexicographic order of sorted index lists.
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (k > n || k < 0) return out;
  while (true) {
    unsigned mask = 0;
    for (int i : idx) mask |= 1u << i;
    out.push_back(mask);
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k; ++i)
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
  return out;
}

FormField::FormField(const GridSpec& spec, int degree, int rows, int cols)
    : spec_(spec), degree_(degree), rows_(rows), cols_(cols) {
  spec.validate();
  if (degree < 0 || degree > spec.dim) throw UsageError("form degree out of range");
  masks_ = multi_indices(spec.dim, degree);
  comps_.assign(masks_.size(), MatrixField(spec, rows, cols));
}

FormField FormField::scalar(const MatrixField& m) {
  FormField f(m.spec(), 0, m.rows(), m.cols());
  f.comps_[0] = m;
  return f;
}

MatrixField& FormField::by_mask(unsigned mask) {
  for (std::size_t i = 0; i < masks_.size(); ++i)
    if (masks_[i] == mask) return comps_[i];
  throw UsageError("multi-index does not match the form degree");
}

const MatrixField& FormField::by_mask(unsigned mask) const {
  return const_cast<FormField*>(this)->by_mask(mask);
}

FormField& FormField::operator+=(const FormField& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
  return *this;
}

FormField& FormField::operator-=(const FormField& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
  return *this;
}

FormField& FormField::operator*=(double c) {
  for (auto& m : comps_) m *= c;
  return *this;
}

std::vector<GridFunction> FormField::flat_components() const {
  std::vector<GridFunction> out;
  for (const auto& m : comps_)
    for (const auto& e : m.entries()) out.push_back(e);
  return out;
}

FormField exterior_derivative(const FormField& w) {
  const int n = w.spec().dim, k = w.degree();
  if (k >= n) throw UsageError("exterior derivative of a top-degree form");
  FormField out(w.spec(), k + 1, w.rows(), w.cols());
  const int entries = w.rows() * w.cols();
  for (int e = 0; e < entries; ++e) {
    std::vector<SpectralField> spectra;
    for (int c = 0; c < w.size(); ++c) spectra.push_back(forward_transform(w.component(c).entries()[e]));
    for (int o = 0; o < out.size(); ++o) {
      const unsigned K = out.masks()[static_cast<std::size_t>(o)];
      SpectralField acc(w.spec());
      for (unsigned rest = K; rest; rest &= rest - 1) {
        const int i = std::countr_zero(rest);
        const unsigned J = K & ~(1u << i);
        const double sign = std::popcount(J & ((1u << i) - 1u)) % 2 ? -1.0 : 1.0;
        int src = 0;
        while (w.masks()[static_cast<std::size_t>(src)] != J) ++src;
        SpectralField d = partial_derivative(spectra[static_cast<std::size_t>(src)], i);
        d *= sign;
        acc += d;
      }
      out.component(o).entries()[static_cast<std::size_t>(e)] = inverse_transform(acc);
    }
  }
  return out;
}

FormField hodge_star(const FormField& w) {
  const int n = w.spec().dim;
  FormField out(w.spec(), n - w.degree(), w.rows(), w.cols());
  for (int c = 0; c < w.size(); ++c) {
    const unsigned I = w.masks()[static_cast<std::size_t>(c)];
    const unsigned Ic = full_mask(n) & ~I;
    MatrixField m = w.component(c);
    m *= merge_sign(I, Ic);
    out.by_mask(Ic) = std::move(m);
  }
  return out;
}

FormField codifferential(const FormField& w) {
  const int n = w.spec().dim, k = w.degree();
  if (k == 0) throw UsageError("codifferential of a 0-form");
  FormField out = hodge_star(exterior_derivative(hodge_star(w)));
  if ((n * (k + 1) + 1) % 2) out *= -1.0;
  return out;
}

FormField wedge(const FormField& a, const FormField& b) {
  if (!(a.spec() == b.spec())) throw UsageError("forms live on different grids");
  if (a.cols() != b.rows()) throw UsageError("form values do not compose");
  const int n = a.spec().dim;
  if (a.degree() + b.degree() > n) throw UsageError("wedge degree exceeds the dimension");
  const GridSpec& spec = a.spec();
  const int M = dealias_points(spec.points);
  std::vector<std::vector<PaddedField>> pa, pb;
  for (int i = 0; i < a.size(); ++i) pa.push_back(pad_entries(a.component(i), M));
  for (int j = 0; j < b.size(); ++j) pb.push_back(pad_entries(b.component(j), M));

  FormField out(spec, a.degree() + b.degree(), a.rows(), b.cols());
  for (int o = 0; o < out.size(); ++o) {
    const unsigned K = out.masks()[static_cast<std::size_t>(o)];
    std::vector<PaddedField> acc(static_cast<std::size_t>(a.rows() * b.cols()), PaddedField(spec, M));
    for (int i = 0; i < a.size(); ++i) {
      const unsigned I = a.masks()[static_cast<std::size_t>(i)];
      if ((I & K) != I) continue;
      const unsigned J = K & ~I;
      for (int j = 0; j < b.size(); ++j) {
        if (b.masks()[static_cast<std::size_t>(j)] != J) continue;
        add_matmul(acc, pa[static_cast<std::size_t>(i)], pb[static_cast<std::size_t>(j)], a.rows(),
                   a.cols(), b.cols(), merge_sign(I, J));
      }
    }
    out.component(o) = unpad(acc, spec, a.rows(), b.cols());
  }
  return out;
}

HodgeParts hodge_decompose(const FormField& w) {
  if (w.degree() != 1) throw UsageError("Hodge decomposition expects a 1-form");
  const GridSpec& spec = w.spec();
  const int n = spec.dim;
  HodgeParts parts{FormField(spec, 1, w.rows(), w.cols()), FormField(spec, 1, w.rows(), w.cols()),
                   FormField(spec, 1, w.rows(), w.cols())};
  const int entries = w.rows() * w.cols();
  for (int e = 0; e < entries; ++e) {
    std::vector<SpectralField> s;
    for (int a = 0; a < n; ++a) s.push_back(forward_transform(w.component(a).entries()[e]));
    std::vector<SpectralField> exact(static_cast<std::size_t>(n), SpectralField(spec));
    // Derivative wavenumbers, Nyquist zeroed as in partial_derivative, so the
    // exact part is d of a potential and the projection stays real.
    for_each_frequency(spec, [&](std::size_t idx, const std::array<int, 3>& k) {
      double xi[3] = {0.0, 0.0, 0.0};
      double x2 = 0.0;
      for (int a = 0; a < n; ++a) {
        xi[a] = k[a] == -spec.points / 2 ? 0.0 : spec.wavenumber(k[a]);
        x2 += xi[a] * xi[a];
      }
      if (x2 == 0.0) return;
      Complex dot = 0.0;
      for (int a = 0; a < n; ++a) dot += xi[a] * s[a].coeffs()[idx];
      for (int a = 0; a < n; ++a) exact[a].coeffs()[idx] = xi[a] / x2 * dot;
    });
    for (int a = 0; a < n; ++a) {
      const GridFunction& src = w.component(a).entries()[e];
      GridFunction ex = inverse_transform(exact[static_cast<std::size_t>(a)]);
      GridFunction h(spec, src.mean());
      GridFunction co = src - ex - h;
      parts.exact.component(a).entries()[e] = std::move(ex);
      parts.coexact.component(a).entries()[e] = std::move(co);
      parts.harmonic.component(a).entries()[e] = std::move(h);
    }
  }
  return parts;
}

double l2_inner(const FormField& a, const FormField& b) {
  require_same(a, b);
  const double vol = a.spec().cell_volume();
  double sum = 0.0;
  for (int c = 0; c < a.size(); ++c)
    for (std::size_t e = 0; e < a.component(c).entries().size(); ++e) {
      const auto x = a.component(c).entries()[e].values();
      const auto y = b.component(c).entries()[e].values();
      for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
    }
  return sum * vol;
}

double l2_norm(const FormField& w) { return std::sqrt(std::max(0.0, l2_inner(w, w))); }

}  // namespace bmtk
