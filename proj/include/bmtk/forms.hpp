#pragma once

#include <vector>

#include "bmtk/grid.hpp"

namespace bmtk {

/// rows x cols matrix of grid functions sharing one grid, row-major.
class MatrixField {
 public:
  MatrixField() = default;
  MatrixField(const GridSpec& spec, int rows, int cols);
  static MatrixField identity(const GridSpec& spec, int m);

  const GridSpec& spec() const { return spec_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  GridFunction& at(int r, int c) { return entries_[static_cast<std::size_t>(r * cols_ + c)]; }
  const GridFunction& at(int r, int c) const {
    return entries_[static_cast<std::size_t>(r * cols_ + c)];
  }
  std::vector<GridFunction>& entries() { return entries_; }
  const std::vector<GridFunction>& entries() const { return entries_; }

  MatrixField& operator+=(const MatrixField& o);
  MatrixField& operator-=(const MatrixField& o);
  MatrixField& operator*=(double c);

 private:
  GridSpec spec_;
  int rows_ = 0, cols_ = 0;
  std::vector<GridFunction> entries_;
};

/// Alias-free pointwise matrix product.
MatrixField matmul(const MatrixField& a, const MatrixField& b);

/// Matrix-valued k-form on the n-torus. Components follow the increasing
/// multi-indices in lexicographic order; a multi-index is stored as a bit
/// mask over the axes.
class FormField {
 public:
  FormField() = default;
  FormField(const GridSpec& spec, int degree, int rows, int cols);
  /// 0-form holding `m`.
  static FormField scalar(const MatrixField& m);

  const GridSpec& spec() const { return spec_; }
  int degree() const { return degree_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int size() const { return static_cast<int>(comps_.size()); }

  const std::vector<unsigned>& masks() const { return masks_; }
  MatrixField& component(int i) { return comps_[static_cast<std::size_t>(i)]; }
  const MatrixField& component(int i) const { return comps_[static_cast<std::size_t>(i)]; }
  /// Component of the multi-index `mask`; throws UsageError on a wrong degree.
  MatrixField& by_mask(unsigned mask);
  const MatrixField& by_mask(unsigned mask) const;

  FormField& operator+=(const FormField& o);
  FormField& operator-=(const FormField& o);
  FormField& operator*=(double c);

  /// All scalar entries of all components, for norm evaluation.
  std::vector<GridFunction> flat_components() const;

 private:
  GridSpec spec_;
  int degree_ = 0, rows_ = 0, cols_ = 0;
  std::vector<unsigned> masks_;
  std::vector<MatrixField> comps_;
};

/// Increasing k-subsets of {0..n-1} as bit masks, lexicographic.
std::vector<unsigned> multi_indices(int n, int k);

FormField exterior_derivative(const FormField& w);

/// Flat Hodge star: *dx_I = sign(I, I^c) dx_{I^c}. ** = (-1)^{k(n-k)}.
FormField hodge_star(const FormField& w);

/// d* = (-1)^{n(k+1)+1} * d * on k-forms. With this sign d*d = -Lap on
/// 0-forms and d* a = -div a on 1-forms.
FormField codifferential(const FormField& w);

/// a ^ b with matrix products of the values, alias free.
FormField wedge(const FormField& a, const FormField& b);

struct HodgeParts {
  FormField exact;     // dD
  FormField coexact;   // d*E
  FormField harmonic;  // constant part
};

/// Spectral projections of a 1-form.
HodgeParts hodge_decompose(const FormField& w);

/// sqrt of the sum over all scalar components of their squared L2 norms.
double l2_norm(const FormField& w);
/// L2 inner product summed over all scalar components.
double l2_inner(const FormField& a, const FormField& b);

}  // namespace bmtk
