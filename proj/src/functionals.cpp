#include "graphcut/functionals.hpp"

#include <cmath>

#include "graphcut/errors.hpp"

namespace graphcut {

namespace {

Eigen::MatrixXd step_cell_averages(const StepGraphon<>& w, Eigen::Index m) {
  const Eigen::VectorXd c = w.boundaries();
  for (Eigen::Index a = 0; a < c.size(); ++a) {
    const double scaled = c(a) * static_cast<double>(m);
    if (std::abs(scaled - std::round(scaled)) > 1e-9)
      throw ParameterError("quadrature kernel: step blocks do not align with a grid of " + std::to_string(m) +
                           " cells");
  }
  // Each grid cell lies in exactly one block, so the average is the block value.
  std::vector<Eigen::Index> block(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i)
    block[static_cast<std::size_t>(i)] = w.block_of((static_cast<double>(i) + 0.5) / static_cast<double>(m));
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b)
      out(a, b) = w.values()(block[static_cast<std::size_t>(a)], block[static_cast<std::size_t>(b)]);
  return out;
}

Eigen::MatrixXd analytic_cell_averages(const AnalyticGraphon& w, Eigen::Index m) {
  if (w.is_step()) {
    // piecewise-constant kinds are exact through their step form when aligned
    const StepGraphon<> s = w.to_step();
    const Eigen::VectorXd c = s.boundaries();
    bool aligned = true;
    for (Eigen::Index a = 0; a < c.size(); ++a) {
      const double scaled = c(a) * static_cast<double>(m);
      if (std::abs(scaled - std::round(scaled)) > 1e-9) aligned = false;
    }
    if (aligned) return step_cell_averages(s, m);
  }
  const double h = 1.0 / static_cast<double>(m);
  const double area_scale = static_cast<double>(m) * static_cast<double>(m);
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = a; b < m; ++b) {
      const double x0 = static_cast<double>(a) * h, y0 = static_cast<double>(b) * h;
      out(a, b) = area_scale * w.rect_integral(x0, x0 + h, y0, y0 + h);
      out(b, a) = out(a, b);
    }
  return out;
}

}  // namespace

QuadratureKernel::QuadratureKernel(const Graphon& w, Eigen::Index m) {
  if (m <= 0) throw ParameterError("quadrature kernel: grid must have at least one cell");
  if (const auto* s = std::get_if<StepGraphon<>>(&w))
    averages_ = step_cell_averages(*s, m);
  else
    averages_ = analytic_cell_averages(std::get<AnalyticGraphon>(w), m);
}

QuadratureKernel::QuadratureKernel(Eigen::MatrixXd averages) : averages_(std::move(averages)) {
  if (averages_.rows() != averages_.cols()) throw StructuralError("quadrature kernel: matrix must be square");
}

double discrete_F(const Graph& g, const Assignment& u, const LabelModel& model) {
  if (static_cast<int>(u.size()) != g.size()) throw ParameterError("discrete_F: one label per node required");
  for (int l : u)
    if (l < 0 || l >= model.size()) throw ParameterError("discrete_F: label index out of range");
  double total = 0.0;
  for (const auto& [i, j] : g.edges())
    total += model.f(u[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(j)]) +
             model.f(u[static_cast<std::size_t>(j)], u[static_cast<std::size_t>(i)]);
  const double n = static_cast<double>(g.size());
  return total / (n * n);
}

double limit_J(const QuadratureKernel& kernel, const ThetaField<>& theta, const LabelModel& model) {
  if (theta.cells() != kernel.cells()) throw ParameterError("limit_J: theta grid differs from the kernel grid");
  if (theta.labels() != model.size()) throw ParameterError("limit_J: label count mismatch");
  return limit_J(kernel.averages(), theta.weights(), model.coupling());
}

Eigen::MatrixXd J_gradient(const QuadratureKernel& kernel, const ThetaField<>& theta, const LabelModel& model) {
  if (theta.cells() != kernel.cells()) throw ParameterError("J_gradient: theta grid differs from the kernel grid");
  if (theta.labels() != model.size()) throw ParameterError("J_gradient: label count mismatch");
  return J_gradient(kernel.averages(), theta.weights(), model.coupling());
}

KktReport kkt_residual(const QuadratureKernel& kernel, const Eigen::VectorXd& theta, double tau) {
  if (theta.size() != kernel.cells()) throw ParameterError("kkt_residual: theta grid differs from the kernel grid");
  const double m = static_cast<double>(kernel.cells());
  KktReport out;
  out.phi = kernel.averages() * (Eigen::VectorXd::Ones(theta.size()) - 2.0 * theta) / m;
  double sum = 0.0;
  for (Eigen::Index a = 0; a < theta.size(); ++a)
    if (theta(a) > tau && theta(a) < 1.0 - tau) {
      sum += out.phi(a);
      ++out.interior_cells;
    }
  if (out.interior_cells == 0) return out;
  out.multiplier = sum / out.interior_cells;
  for (Eigen::Index a = 0; a < theta.size(); ++a)
    if (theta(a) > tau && theta(a) < 1.0 - tau)
      out.residual = std::max(out.residual, std::abs(out.phi(a) - out.multiplier));
  return out;
}

KktReport kkt_residual(const QuadratureKernel& kernel, const ThetaField<>& theta, double tau) {
  if (theta.labels() != 2) throw ParameterError("kkt_residual: two-label field required");
  return kkt_residual(kernel, Eigen::VectorXd(theta.weights().col(0)), tau);
}

double block_objective(const Eigen::VectorXd& lambda, const Eigen::VectorXd& masses) {
  return masses.dot(lambda - masses);
}

BlockReduction block_reduce(const Eigen::VectorXd& lambda, const ThetaField<>& theta) {
  if (theta.labels() != 2) throw ParameterError("block_reduce: two-label field required");
  const Eigen::Index m = theta.cells();
  BlockReduction out;
  out.masses = Eigen::VectorXd::Zero(lambda.size());
  Eigen::Index cell = 0;
  double edge = 0.0;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    edge += lambda(k);
    const double scaled = edge * static_cast<double>(m);
    const double r = std::round(scaled);
    if (std::abs(scaled - r) > 1e-9) throw ParameterError("block_reduce: grid does not refine the blocks");
    const auto end = k + 1 == lambda.size() ? m : static_cast<Eigen::Index>(r);
    for (; cell < end; ++cell) out.masses(k) += theta(cell, 0);
    out.masses(k) /= static_cast<double>(m);
  }
  out.g = block_objective(lambda, out.masses);
  out.J = 8.0 * out.g;
  return out;
}

double J_w_form(const Eigen::VectorXd& w1, const Eigen::VectorXd& w2) {
  constexpr double tol = 1e-9;
  if (w1.size() != w2.size() || w1.size() < 2) throw ParameterError("J_w_form: paths need equal length >= 2");
  const Eigen::Index k = w1.size() - 1;
  if (std::abs(w1(0)) > tol || std::abs(w2(0)) > tol) throw InfeasibleError("J_w_form: w(0) must vanish");
  if (std::abs(w1(k) + w2(k) - 0.5) > tol) throw InfeasibleError("J_w_form: w1(1/2) + w2(1/2) must equal 1/2");
  const double h = 0.5 / static_cast<double>(k);
  double total = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double d1 = (w1(i + 1) - w1(i)) / h;
    const double d2 = (w2(i + 1) - w2(i)) / h;
    if (d1 < -tol || d1 > 1.0 + tol || d2 < -tol || d2 > 1.0 + tol)
      throw InfeasibleError("J_w_form: slopes must lie in [0,1]");
    const double x0 = static_cast<double>(i) * h, x1 = x0 + h;
    const double x_moment = 0.5 * (x1 * x1 - x0 * x0);  // int x dx
    total += d1 * (0.5 * h - x_moment) + d2 * x_moment - 2.0 * d2 * h * 0.5 * (w1(i) + w1(i + 1));
  }
  return 8.0 * total;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> w_paths(const Eigen::VectorXd& theta) {
  const Eigen::Index m = theta.size();
  if (m % 2 != 0) throw ParameterError("w_paths: grid must have an even number of cells");
  const Eigen::Index half = m / 2;
  Eigen::VectorXd w1 = Eigen::VectorXd::Zero(half + 1), w2 = Eigen::VectorXd::Zero(half + 1);
  const double h = 1.0 / static_cast<double>(m);
  for (Eigen::Index i = 0; i < half; ++i) {
    w1(i + 1) = w1(i) + h * theta(i);
    w2(i + 1) = w2(i) + h * theta(half + i);
  }
  return {w1, w2};
}

}  // namespace graphcut
