#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "graphcut/fields.hpp"
#include "graphcut/graph.hpp"
#include "graphcut/graphon.hpp"

namespace graphcut {

/// Exact cell averages of a graphon on the uniform m-grid:
/// averages(a, b) = m^2 * integral of W over I_a x I_b.
class QuadratureKernel {
 public:
  /// Step graphons must have their block boundaries on the grid
  /// (ParameterError otherwise); analytic kernels work on any grid.
  QuadratureKernel(const Graphon& w, Eigen::Index m);
  explicit QuadratureKernel(Eigen::MatrixXd averages);

  Eigen::Index cells() const { return averages_.rows(); }
  const Eigen::MatrixXd& averages() const { return averages_; }

 private:
  Eigen::MatrixXd averages_;
};

/// sum_{h,k} f_hk (1/m^2) theta_h^T K theta_k for any m x N weight matrix
/// (the simplex constraint is not checked here).
template <typename DerivedK, typename DerivedT>
double limit_J(const Eigen::MatrixBase<DerivedK>& kernel, const Eigen::MatrixBase<DerivedT>& theta,
               const Eigen::MatrixXd& coupling) {
  const double m = static_cast<double>(kernel.rows());
  const Eigen::MatrixXd inner = theta.transpose() * kernel * theta;
  return inner.cwiseProduct(coupling).sum() / (m * m);
}

/// Partial derivatives of limit_J with respect to every theta_k(a).
template <typename DerivedK, typename DerivedT>
Eigen::MatrixXd J_gradient(const Eigen::MatrixBase<DerivedK>& kernel, const Eigen::MatrixBase<DerivedT>& theta,
                           const Eigen::MatrixXd& coupling) {
  const double m = static_cast<double>(kernel.rows());
  return (kernel * theta * coupling.transpose() + kernel.transpose() * theta * coupling) / (m * m);
}

/// Two-label form 8/m^2 theta^T K (1 - theta), theta the weight of +1.
template <typename DerivedK, typename DerivedT>
double spin_J(const Eigen::MatrixBase<DerivedK>& kernel, const Eigen::MatrixBase<DerivedT>& theta) {
  const double m = static_cast<double>(kernel.rows());
  const Eigen::VectorXd rest = Eigen::VectorXd::Ones(theta.size()) - theta;
  return 8.0 * theta.dot(kernel * rest) / (m * m);
}

/// d spin_J / d theta(a) = 8/m^2 (K (1 - 2 theta))_a.
template <typename DerivedK, typename DerivedT>
Eigen::VectorXd spin_J_gradient(const Eigen::MatrixBase<DerivedK>& kernel, const Eigen::MatrixBase<DerivedT>& theta) {
  const double m = static_cast<double>(kernel.rows());
  const Eigen::VectorXd shift = Eigen::VectorXd::Ones(theta.size()) - 2.0 * theta;
  return 8.0 * (kernel * shift) / (m * m);
}

/// (1/n^2) sum over ordered pairs of A_ij f(u(i), u(j)).
double discrete_F(const Graph& g, const Assignment& u, const LabelModel& model);

double limit_J(const QuadratureKernel& kernel, const ThetaField<>& theta, const LabelModel& model);
Eigen::MatrixXd J_gradient(const QuadratureKernel& kernel, const ThetaField<>& theta, const LabelModel& model);

/// Stationarity diagnostic for the two-label problem with a mass constraint.
struct KktReport {
  Eigen::VectorXd phi;     // cell averages of integral W(x,y)(1 - 2 theta(y)) dy
  double multiplier = 0;   // mean of phi over interior cells
  double residual = 0;     // max |phi - multiplier| over interior cells
  int interior_cells = 0;  // cells with theta in (tau, 1 - tau)
  bool vacuous() const { return interior_cells == 0; }
};

inline constexpr double kInteriorTolerance = 1e-9;

KktReport kkt_residual(const QuadratureKernel& kernel, const Eigen::VectorXd& theta,
                       double tau = kInteriorTolerance);
KktReport kkt_residual(const QuadratureKernel& kernel, const ThetaField<>& theta,
                       double tau = kInteriorTolerance);

/// sum_k A_k (lambda_k - A_k).
double block_objective(const Eigen::VectorXd& lambda, const Eigen::VectorXd& masses);

struct BlockReduction {
  Eigen::VectorXd masses;  // A_k: integral of theta over C_k
  double g = 0;
  double J = 0;  // 8 g
};

/// Reduces a two-label field on a grid refining the blocks C_k of a block
/// family kernel to its per-block masses.
BlockReduction block_reduce(const Eigen::VectorXd& lambda, const ThetaField<>& theta);

/// Half-graph cut functional in the primitive variables
/// w1(x) = int_0^x theta, w2(x) = int_0^x theta(. + 1/2) on [0, 1/2]:
/// 8 int ((1/2 - x) w1' + x w2' - 2 w2' w1) dx.
/// w1 and w2 are node values on a uniform grid of [0, 1/2] (piecewise linear
/// in between) and must satisfy w(0) = 0, w1(1/2) + w2(1/2) = 1/2 and
/// slopes in [0,1] (InfeasibleError otherwise).
double J_w_form(const Eigen::VectorXd& w1, const Eigen::VectorXd& w2);

/// Node values of (w1, w2) for a two-label field on an even grid.
std::pair<Eigen::VectorXd, Eigen::VectorXd> w_paths(const Eigen::VectorXd& theta);

}  // namespace graphcut
