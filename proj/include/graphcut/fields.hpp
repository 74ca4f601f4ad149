#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graphcut/errors.hpp"
#include "graphcut/graphon.hpp"

namespace graphcut {

/// Node/cell labelling by index into a LabelModel's label list.
using Assignment = std::vector<int>;

/// Label set {l_1..l_N} with a symmetric non-negative coupling f(l_h, l_k).
class LabelModel {
 public:
  LabelModel(std::vector<double> labels, Eigen::MatrixXd coupling);

  /// Labels (+1, -1) with f(a, b) = |a - b|^2. Index 0 is the +1 label, so a
  /// scalar spin field theta is column 0 of the weight matrix.
  static LabelModel spin();
  static LabelModel from_function(std::vector<double> labels,
                                  const std::function<double(double, double)>& f);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<double>& labels() const { return labels_; }
  const Eigen::MatrixXd& coupling() const { return coupling_; }
  double f(int h, int k) const { return coupling_(h, k); }

  /// Index of a label value; ParameterError if it is not in the set.
  int index_of(double label) const;
  bool zero_diagonal() const { return coupling_.diagonal().cwiseAbs().maxCoeff() == 0.0; }
  bool is_spin() const;

 private:
  std::vector<double> labels_;
  Eigen::MatrixXd coupling_;
};

/// Probability-weight field on the uniform grid I_i = ((i-1)/m, i/m]:
/// an m x N matrix whose rows lie in the simplex.
template <typename Scalar = double>
class ThetaField {
 public:
  using Matrix = MatrixX<Scalar>;
  using Vector = VectorX<Scalar>;

  ThetaField() = default;

  explicit ThetaField(Matrix weights) : weights_(std::move(weights)) {
    if (weights_.rows() == 0 || weights_.cols() == 0) throw ParameterError("theta field: empty");
    for (Eigen::Index i = 0; i < weights_.rows(); ++i) {
      for (Eigen::Index k = 0; k < weights_.cols(); ++k)
        if (!(weights_(i, k) >= Scalar(0) && weights_(i, k) <= Scalar(1)))
          throw ParameterError("theta field: weights must lie in [0,1]");
      if (std::abs(static_cast<double>(weights_.row(i).sum()) - 1.0) > 1e-12)
        throw ParameterError("theta field: row " + std::to_string(i + 1) + " does not sum to 1");
    }
  }

  /// Two-label field (theta, 1 - theta).
  static ThetaField spin(const Vector& theta) {
    Matrix w(theta.size(), 2);
    w.col(0) = theta;
    w.col(1) = Vector::Ones(theta.size()) - theta;
    return ThetaField(std::move(w));
  }

  static ThetaField from_assignment(const std::vector<int>& labels, int label_count) {
    Matrix w = Matrix::Zero(static_cast<Eigen::Index>(labels.size()), label_count);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] < 0 || labels[i] >= label_count) throw ParameterError("theta field: label index out of range");
      w(static_cast<Eigen::Index>(i), labels[i]) = Scalar(1);
    }
    return ThetaField(std::move(w));
  }

  Eigen::Index cells() const { return weights_.rows(); }
  Eigen::Index labels() const { return weights_.cols(); }
  const Matrix& weights() const { return weights_; }
  Scalar operator()(Eigen::Index cell, Eigen::Index label) const { return weights_(cell, label); }

  /// mass_k = (1/m) sum_i theta_k(i).
  Vector mass() const { return weights_.colwise().sum().transpose() / Scalar(cells()); }

  bool is_spin_valued() const {
    return ((weights_.array() == Scalar(0)) || (weights_.array() == Scalar(1))).all();
  }

  /// Label index per cell; only defined for spin-valued fields.
  std::vector<int> assignment() const {
    if (!is_spin_valued()) throw ParameterError("theta field: not spin-valued");
    std::vector<int> out(static_cast<std::size_t>(cells()));
    for (Eigen::Index i = 0; i < cells(); ++i) {
      Eigen::Index k;
      weights_.row(i).maxCoeff(&k);
      out[static_cast<std::size_t>(i)] = static_cast<int>(k);
    }
    return out;
  }

 private:
  Matrix weights_;
};

/// Target label masses and their integer counterparts for n nodes.
struct PartitionSpec {
  Eigen::VectorXd masses;
  std::vector<int> sizes;

  /// sizes_k = floor(n * mass_k), then the remaining units go to the largest
  /// fractional parts (ties to the lower label index).
  static PartitionSpec from_masses(const Eigen::VectorXd& masses, int n);
  static PartitionSpec bisection(int n);
  int total() const;
};

/// theta_k(i) = 1 iff u(i) = l_k. Unknown label values throw ParameterError.
ThetaField<> theta_from_spin(std::span<const double> u, const LabelModel& model);

/// Spin-valued field on n cells whose window averages converge to theta.
/// Each cell of theta must hold rationals p_k/q with a common q (found
/// automatically up to max_denominator), and n must be divisible by m*q.
/// Sub-cell i (1-based, residue i mod q taken in 1..q) receives label k when
/// p_1 + ... + p_{k-1} < residue <= p_1 + ... + p_k.
ThetaField<> recovery_sequence(const ThetaField<>& theta, int n, int max_denominator = 10000);

/// Reassigns cells so label k holds exactly sizes[k] cells. Lowest-index
/// cells of over-full labels move, in label order, to under-full labels.
ThetaField<> repair_mass(const ThetaField<>& theta, const std::vector<int>& sizes);

/// Mean of theta over consecutive windows of width h (h*m cells each).
Eigen::MatrixXd window_average(const ThetaField<>& theta, double h);
/// Same for a scalar sequence sampled on the uniform grid.
Eigen::VectorXd window_average(std::span<const double> values, double h);

}  // namespace graphcut
