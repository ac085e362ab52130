#include "bmtk/gauge.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <random>

#include "bmtk/corpus.hpp"
#include "bmtk/errors.hpp"

namespace bmtk {

namespace {

double gradient_norm(const std::vector<GridFunction>& entries, const BallFamily& balls) {
  if (entries.empty()) return 0.0;
  const GridSpec& spec = entries.front().spec();
  const PartitionOfUnity part(spec);
  std::vector<SpectralField> grad;
  for (const auto& e : entries) {
    const SpectralField s = forward_transform(e);
    for (int a = 0; a < spec.dim; ++a) grad.push_back(partial_derivative(s, a));
  }
  return besov_morrey_norm(grad, 0.0, spec.dim, 2.0, 2.0, part, balls).value;
}

// Pointwise m x m matrix at node i.
Eigen::MatrixXd node_matrix(const MatrixField& A, std::size_t i) {
  const int m = A.rows();
  Eigen::MatrixXd M(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) M(r, c) = A.at(r, c)[i];
  return M;
}

FormField pde_term(const FormField& omega, const FormField& du) {
  // (Omega . grad u)^i = sum_c (Omega_c du_c)^i as a 0-form.
  const GridSpec& spec = omega.spec();
  MatrixField acc(spec, omega.rows(), du.cols());
  for (int c = 0; c < spec.dim; ++c) acc += matmul(omega.component(c), du.component(c));
  return FormField::scalar(acc);
}

void check_omega(const FormField& omega) {
  if (omega.degree() != 1 || omega.rows() != omega.cols())
    throw UsageError("Omega must be a square-matrix valued 1-form");
}

}  // namespace

double form_besov_morrey_norm(const FormField& w, const BallFamily& balls) {
  const PartitionOfUnity part(w.spec());
  const auto comps = w.flat_components();
  return besov_morrey_norm(comps, 0.0, w.spec().dim, 2.0, 2.0, part, balls).value;
}

FormField random_omega(int m, const GridSpec& spec, double epsilon, std::uint64_t seed) {
  if (m < 2) throw UsageError("Omega needs m >= 2");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw UsageError("epsilon must be >= 0");
  FormField omega(spec, 1, m, m);
  if (epsilon == 0.0) return omega;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int c = 0; c < spec.dim; ++c) {
        const GridFunction f = odd_trigonometric_field(spec, rng(), 3);
        omega.component(c).at(i, j) = f;
        omega.component(c).at(j, i) = -1.0 * f;
      }
  const double norm = form_besov_morrey_norm(omega, BallFamily::standard(spec));
  omega *= epsilon / norm;
  return omega;
}

double gauge_residual(const MatrixField& A, const FormField& B, const FormField& omega) {
  FormField r = exterior_derivative(FormField::scalar(A));
  r -= wedge(FormField::scalar(A), omega);
  r += codifferential(B);
  return l2_norm(r);
}

GaugePair construct_gauge(const FormField& omega, const GaugeOptions& options) {
  check_omega(omega);
  if (!(options.damping >= 0.5 && options.damping <= 1.0))
    throw UsageError("damping must lie in [0.5, 1]");
  if (options.max_iter < 0) throw UsageError("max_iter must be >= 0");
  const GridSpec& spec = omega.spec();
  const int m = omega.rows();
  const BallFamily balls = BallFamily::standard(spec);
  const double onorm = form_besov_morrey_norm(omega, balls);
  if (onorm > options.epsilon_max)
    throw UsageError("||Omega|| exceeds epsilon_max; the fixed point is not expected to contract");

  GaugePair out;
  out.A = MatrixField::identity(spec, m);
  for (int k = 0;; ++k) {
    const FormField A0 = FormField::scalar(out.A);
    const FormField P = wedge(A0, omega);
    const FormField dP = exterior_derivative(P);
    out.B = FormField(spec, 2, m, m);
    for (int c = 0; c < dP.size(); ++c)
      for (std::size_t e = 0; e < dP.component(c).entries().size(); ++e)
        out.B.component(c).entries()[e] = solve_poisson(dP.component(c).entries()[e]);

    FormField r = exterior_derivative(A0);
    r -= P;
    r += codifferential(out.B);
    out.residual = l2_norm(r);
    out.history.push_back(out.residual);
    if (k > 0) out.contraction.push_back(out.residual / out.history[static_cast<std::size_t>(k - 1)]);
    out.iterations = k;
    if (out.residual <= options.tol) break;
    if (k == options.max_iter) {
      char msg[160];
      std::snprintf(msg, sizeof msg, "gauge residual %.3e above tolerance after %d iterations",
                    out.residual, k);
      throw NoConvergence(msg);
    }
    // A_new = id - (-Lap)^-1 div P, blended with the damping factor.
    MatrixField next = MatrixField::identity(spec, m);
    for (int e = 0; e < m * m; ++e) {
      SpectralField div(spec);
      for (int c = 0; c < spec.dim; ++c)
        div += partial_derivative(forward_transform(P.component(c).entries()[static_cast<std::size_t>(e)]), c);
      const GridFunction corr = inverse_transform(solve_poisson(div, 1e-10, 1.0));
      next.entries()[static_cast<std::size_t>(e)] -= corr;
    }
    if (options.damping != 1.0) {
      next -= out.A;
      next *= options.damping;
      next += out.A;
    }
    out.A = std::move(next);
  }

  GaugeEstimates& est = out.estimates;
  est.omega_norm = onorm;
  est.grad_a = gradient_norm(out.A.entries(), balls);
  MatrixField inv(spec, m, m);
  est.min_det = INFINITY;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const Eigen::MatrixXd M = node_matrix(out.A, i);
    est.min_det = std::min(est.min_det, std::abs(M.determinant()));
    const Eigen::MatrixXd Mi = M.inverse();
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) inv.at(r, c)[i] = Mi(r, c);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::MatrixXd U = svd.matrixU();
    if ((U * svd.matrixV().transpose()).determinant() < 0.0) U.col(m - 1) *= -1.0;
    const double d = (M - U * svd.matrixV().transpose()).norm();
    est.dist_so = std::max(est.dist_so, d);
  }
  est.grad_a_inv = gradient_norm(inv.entries(), balls);
  est.grad_b = gradient_norm(out.B.flat_components(), balls);
  if (onorm > 0.0) {
    est.grad_a_ratio = est.grad_a / onorm;
    est.grad_a_inv_ratio = est.grad_a_inv / onorm;
    est.dist_so_ratio = est.dist_so / onorm;
    est.grad_b_ratio = est.grad_b / onorm;
  }
  return out;
}

FormField potential_differential(std::span<const Potential> u) {
  if (u.empty()) throw UsageError("no potentials given");
  const GridSpec& spec = u.front().periodic.spec();
  FormField du(spec, 1, static_cast<int>(u.size()), 1);
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (!(u[j].periodic.spec() == spec)) throw UsageError("potentials live on different grids");
    const SpectralField s = forward_transform(u[j].periodic);
    for (int c = 0; c < spec.dim; ++c) {
      GridFunction g = inverse_transform(partial_derivative(s, c));
      g += GridFunction(spec, u[j].slope[static_cast<std::size_t>(c)]);
      du.component(c).at(static_cast<int>(j), 0) = std::move(g);
    }
  }
  return du;
}

ManufacturedSystem manufactured_system(std::span<const Potential> u, double ridge) {
  if (u.size() != 2) throw UsageError("manufactured system needs m = 2 potentials");
  if (!(ridge > 0.0)) throw UsageError("ridge must be positive");
  const GridSpec& spec = u[0].periodic.spec();
  const int n = spec.dim;
  const FormField du = potential_differential(u);
  GridFunction lap1 = -1.0 * negative_laplacian(u[0].periodic);
  GridFunction lap2 = -1.0 * negative_laplacian(u[1].periodic);

  // Rows of G: grad u2 and grad u1; right side (-Lap u1, Lap u2).
  const std::size_t count = spec.size();
  double top = 0.0;
  std::vector<Eigen::Matrix2d> gram(count);
  for (std::size_t i = 0; i < count; ++i) {
    Eigen::Matrix<double, 2, Eigen::Dynamic> G(2, n);
    for (int c = 0; c < n; ++c) {
      G(0, c) = du.component(c).at(1, 0)[i];
      G(1, c) = du.component(c).at(0, 0)[i];
    }
    gram[i] = G * G.transpose();
    top = std::max(top, gram[i].trace());
  }
  const double lambda = ridge * top;
  ManufacturedSystem out;
  out.omega = FormField(spec, 1, 2, 2);
  std::size_t degenerate = 0;
  for (std::size_t i = 0; i < count; ++i) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(gram[i], Eigen::EigenvaluesOnly);
    if (eig.eigenvalues()(0) <= lambda) ++degenerate;
    const Eigen::Vector2d y(-lap1[i], lap2[i]);
    const Eigen::Vector2d z = (gram[i] + lambda * Eigen::Matrix2d::Identity()).ldlt().solve(y);
    for (int c = 0; c < n; ++c) {
      const double w = du.component(c).at(1, 0)[i] * z(0) + du.component(c).at(0, 0)[i] * z(1);
      out.omega.component(c).at(0, 1)[i] = w;
      out.omega.component(c).at(1, 0)[i] = -w;
    }
  }
  out.degenerate_fraction = static_cast<double>(degenerate) / static_cast<double>(count);
  if (out.degenerate_fraction > 0.01) throw DegenerateGradient("gradients of u are degenerate on more than 1% of nodes");

  FormField res = pde_term(out.omega, du);
  res.component(0).at(0, 0) += lap1;
  res.component(0).at(1, 0) += lap2;
  out.residual = l2_norm(res);
  FormField lap(spec, 0, 2, 1);
  lap.component(0).at(0, 0) = lap1;
  lap.component(0).at(1, 0) = lap2;
  const double scale = l2_norm(lap);
  out.relative_residual = scale > 0.0 ? out.residual / scale : 0.0;
  return out;
}

std::vector<Potential> manufactured_potentials(const GridSpec& spec, double delta, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);
  const double sigma = 0.35;
  const double c = spec.length / 2;
  std::vector<Potential> u(2);
  for (int j = 0; j < 2; ++j) {
    std::array<double, 3> d{};
    for (auto& v : d) v = (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5) * 1.6;
    u[static_cast<std::size_t>(j)].periodic = sample(spec, [&](std::span<const double> x) {
      double plus = 0.0, minus = 0.0;
      for (std::size_t a = 0; a < x.size(); ++a) {
        const double y = x[a] - c;
        plus += (y - d[a]) * (y - d[a]);
        minus += (y + d[a]) * (y + d[a]);
      }
      const double s2 = 2.0 * sigma * sigma;
      return delta * (std::exp(-plus / s2) - std::exp(-minus / s2));
    });
    u[static_cast<std::size_t>(j)].slope[static_cast<std::size_t>(j)] = 1.0;
  }
  return u;
}

double conservation_residual(const MatrixField& A, const FormField& B, std::span<const Potential> u) {
  const FormField du = potential_differential(u);
  const int n = du.spec().dim;
  FormField flux = hodge_star(wedge(FormField::scalar(A), du));
  FormField twist = wedge(hodge_star(B), du);
  if ((n - 1) % 2) twist *= -1.0;
  flux += twist;
  return l2_norm(exterior_derivative(flux));
}

ConservationRow conservation_run(int n, int points, double delta, std::uint64_t seed,
                                 const GaugeOptions& options) {
  const GridSpec spec{n, points, 2.0 * std::numbers::pi};
  spec.validate();
  const auto u = manufactured_potentials(spec, delta, seed);
  const ManufacturedSystem sys = manufactured_system(u);
  const GaugePair g = construct_gauge(sys.omega, options);
  ConservationRow row;
  row.points = points;
  row.gauge_residual = g.residual;
  row.pde_residual = sys.residual;
  row.conservation_residual = conservation_residual(g.A, g.B, u);
  row.pde_relative = sys.relative_residual;
  row.omega_norm = g.estimates.omega_norm;
  row.iterations = g.iterations;
  return row;
}

std::string conservation_csv(const std::vector<ConservationRow>& rows) {
  std::string out = "N,gauge_residual,pde_residual,conservation_residual\n";
  char line[160];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g\n", r.points, r.gauge_residual,
                  r.pde_residual, r.conservation_residual);
    out += line;
  }
  return out;
}

}  // namespace bmtk
