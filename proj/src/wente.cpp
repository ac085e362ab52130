#include "bmtk/wente.hpp"

#include <cmath>
#include <cstdio>

#include "bmtk/corpus.hpp"
#include "bmtk/errors.hpp"

namespace bmtk {

namespace {

void check_axes(const GridFunction& a, const GridFunction& b, int i, int j) {
  if (!(a.spec() == b.spec())) throw UsageError("Jacobian factors live on different grids");
  if (i == j) throw UsageError("Jacobian needs two distinct axes");
  const int n = a.spec().dim;
  if (i < 0 || j < 0 || i >= n || j >= n) throw UsageError("Jacobian axis out of range");
}

SpectralField jacobian_spectrum(const GridFunction& a, const GridFunction& b, int i, int j) {
  check_axes(a, b, i, j);
  const GridSpec& spec = a.spec();
  const int M = dealias_points(spec.points);
  const SpectralField sa = forward_transform(a), sb = forward_transform(b);
  // Two factors at a time keeps the peak at three padded arrays.
  PaddedField acc(spec, M);
  {
    const PaddedField ax = pad(partial_derivative(sa, i), M);
    const PaddedField by = pad(partial_derivative(sb, j), M);
    acc.add_product(ax, by);
  }
  {
    const PaddedField ay = pad(partial_derivative(sa, j), M);
    const PaddedField bx = pad(partial_derivative(sb, i), M);
    acc.add_product(ay, bx, -1.0);
  }
  return truncate(acc);
}

double data_norm(const SpectralField& s, const PartitionOfUnity& part, const BallFamily& balls) {
  const double n = s.spec().dim;
  std::vector<SpectralField> grad;
  for (int a = 0; a < s.spec().dim; ++a) grad.push_back(partial_derivative(s, a));
  return besov_morrey_norm(std::span<const SpectralField>(&s, 1), 0.0, n, 2.0, 2.0, part, balls).value +
         besov_morrey_norm(grad, 0.0, n, 2.0, 2.0, part, balls).value;
}

// -xi_a xi_b / |xi|^2 applied to J; odd factors lose their Nyquist bin.
std::vector<SpectralField> hessian_spectra(const SpectralField& J) {
  const GridSpec& spec = J.spec();
  const int n = spec.dim;
  std::vector<SpectralField> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      SpectralField h(spec);
      auto dst = h.coeffs();
      auto src = J.coeffs();
      for_each_frequency(spec, [&](std::size_t idx, const std::array<int, 3>& k) {
        if (a != b && (k[a] == -spec.points / 2 || k[b] == -spec.points / 2)) return;
        double x2 = 0.0;
        for (int c = 0; c < n; ++c) x2 += spec.wavenumber(k[c]) * spec.wavenumber(k[c]);
        if (x2 == 0.0) return;
        dst[idx] = -spec.wavenumber(k[a]) * spec.wavenumber(k[b]) / x2 * src[idx];
      });
      out.push_back(std::move(h));
    }
  return out;
}

// Upper triangle of the Hessian with off-diagonal entries scaled by sqrt 2:
// same pointwise Frobenius magnitude as the full n x n set, fewer transforms.
std::vector<SpectralField> hessian_norm_spectra(const SpectralField& J) {
  const int n = J.spec().dim;
  auto full = hessian_spectra(J);
  std::vector<SpectralField> out;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      SpectralField h = std::move(full[static_cast<std::size_t>(a * n + b)]);
      if (a != b) h *= std::sqrt(2.0);
      out.push_back(std::move(h));
    }
  return out;
}

}  // namespace

GridFunction jacobian(const GridFunction& a, const GridFunction& b, int i, int j) {
  return inverse_transform(jacobian_spectrum(a, b, i, j));
}

WenteSolution solve_wente(const GridFunction& a, const GridFunction& b, int i, int j,
                          const BallFamily& balls) {
  const SpectralField Js = jacobian_spectrum(a, b, i, j);
  const GridFunction J = inverse_transform(Js);
  const GridSpec& spec = a.spec();
  const PartitionOfUnity part(spec);
  const double n = spec.dim;

  WenteSolution sol;
  const SpectralField us = solve_poisson(Js, 1e-10, J.max_abs());
  sol.u = inverse_transform(us);
  WenteReport& rep = sol.report;
  rep.u_inf = sol.u.max_abs();
  const double jmax = J.max_abs();
  if (jmax > 0.0) {
    const GridFunction lap = negative_laplacian(sol.u);
    double worst = 0.0;
    for (std::size_t k = 0; k < J.size(); ++k) worst = std::max(worst, std::abs(lap[k] - J[k]));
    rep.residual = worst / jmax;
  }

  std::vector<SpectralField> grad;
  for (int c = 0; c < spec.dim; ++c) grad.push_back(partial_derivative(us, c));
  rep.grad_u_norm = besov_morrey_norm(grad, 0.0, n, 2.0, 1.0, part, balls).value;
  const auto hess = hessian_norm_spectra(Js);
  rep.hess_u_norm = besov_morrey_norm(hess, -1.0, n, 2.0, 1.0, part, balls).value;

  rep.data_a = data_norm(forward_transform(a), part, balls);
  rep.data_b = data_norm(forward_transform(b), part, balls);
  rep.data_product = rep.data_a * rep.data_b;
  if (rep.data_product > 0.0) {
    rep.u_ratio = rep.u_inf / rep.data_product;
    rep.grad_ratio = rep.grad_u_norm / rep.data_product;
    rep.hess_ratio = rep.hess_u_norm / rep.data_product;
  }
  return sol;
}

HessianReport hessian_report(const GridFunction& a, const GridFunction& b, int i, int j,
                             const BallFamily& balls) {
  const SpectralField Js = jacobian_spectrum(a, b, i, j);
  const GridSpec& spec = a.spec();
  const PartitionOfUnity part(spec);
  const auto hess = hessian_spectra(Js);
  HessianReport rep;
  for (const auto& h : hess) rep.second.push_back(inverse_transform(h));
  const auto reduced = hessian_norm_spectra(Js);
  rep.besov_morrey = besov_morrey_norm(reduced, -1.0, spec.dim, 2.0, 1.0, part, balls).value;
  rep.besov_inf = besov_norm(reduced, -2.0, INFINITY, 1.0, part).value;
  rep.ratio = rep.besov_morrey > 0.0 ? rep.besov_inf / rep.besov_morrey : 0.0;
  return rep;
}

CounterexampleRow counterexample_run(int points, double length) {
  if (points != 32 && points != 64 && points != 128 && points != 256)
    throw UsageError("counterexample grid must have N in {32, 64, 128, 256}");
  const GridSpec spec{3, points, length};
  CounterexampleRow row;
  row.points = points;
  const BallFamily balls = BallFamily::standard(spec);
  {
    const PartitionOfUnity part(spec);
    const GridFunction a = counterexample_profile(spec, 0);
    const SpectralField sa = forward_transform(a);
    std::vector<SpectralField> grad;
    for (int c = 0; c < 3; ++c) grad.push_back(partial_derivative(sa, c));
    row.besov_morrey_grad_a = besov_morrey_norm(grad, 0.0, 3.0, 2.0, 2.0, part, balls).value;
    std::vector<GridFunction> g;
    for (const auto& s : grad) g.push_back(inverse_transform(s));
    grad.clear();
    row.morrey_grad_a = morrey_norm(g, 3.0, 2.0, balls);
  }
  const GridFunction a = counterexample_profile(spec, 0);
  const GridFunction b = counterexample_profile(spec, 1);
  const SpectralField Js = jacobian_spectrum(a, b, 0, 1);
  double jmax = 0.0;
  {
    const GridFunction J = inverse_transform(Js);
    jmax = J.max_abs();
  }
  row.u_inf = inverse_transform(solve_poisson(Js, 1e-10, jmax)).max_abs();
  return row;
}

std::string counterexample_csv(const std::vector<CounterexampleRow>& rows) {
  std::string out = "N,morrey_grad_a,besov_morrey_grad_a,u_inf\n";
  char line[160];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g\n", r.points, r.morrey_grad_a,
                  r.besov_morrey_grad_a, r.u_inf);
    out += line;
  }
  return out;
}

}  // namespace bmtk
