#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "graphcut/errors.hpp"
#include "graphcut/graph.hpp"

namespace graphcut {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

/// Length of [a0, a1] intersected with [b0, b1].
template <typename Scalar>
Scalar overlap(Scalar a0, Scalar a1, Scalar b0, Scalar b1) {
  return std::max(Scalar(0), std::min(a1, b1) - std::max(a0, b0));
}

inline void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw ParameterError(std::string(what) + " must lie in [0,1]");
}

}  // namespace detail

/// Symmetric kernel on [0,1]^2 that is constant on the rectangles of a block
/// partition. Block a covers (c_a, c_{a+1}] with c the cumulative widths
/// (block 0 also contains 0). Values may be signed; use w0() to require the
/// [0,1] range of a graph limit.
template <typename Scalar = double>
class StepGraphon {
 public:
  using Vector = VectorX<Scalar>;
  using Matrix = MatrixX<Scalar>;

  StepGraphon() = default;

  StepGraphon(Vector widths, Matrix values) : widths_(std::move(widths)), values_(std::move(values)) {
    const Eigen::Index m = widths_.size();
    if (m == 0) throw ParameterError("step graphon: no blocks");
    if (values_.rows() != m || values_.cols() != m)
      throw StructuralError("step graphon: value matrix must be square and match the widths");
    if ((widths_.array() <= Scalar(0)).any())
      throw ParameterError("step graphon: block widths must be positive");
    if (std::abs(static_cast<double>(widths_.sum()) - 1.0) > 1e-12)
      throw ParameterError("step graphon: block widths must sum to 1");
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = i + 1; j < m; ++j)
        if (std::abs(static_cast<double>(values_(i, j) - values_(j, i))) > 1e-12)
          throw ParameterError("step graphon: values must be symmetric");
    // store an exactly symmetric copy
    const Matrix sym = (values_ + values_.transpose()) / Scalar(2);
    values_ = sym;
  }

  /// Equal-width blocks.
  static StepGraphon uniform(Matrix values) {
    const Eigen::Index m = values.rows();
    return StepGraphon(Vector::Constant(m, Scalar(1) / Scalar(m)), std::move(values));
  }

  static StepGraphon constant(Scalar c) {
    return StepGraphon(Vector::Ones(1), Matrix::Constant(1, 1, c));
  }

  /// Same as the constructor but also rejects values outside [0,1].
  static StepGraphon w0(Vector widths, Matrix values) {
    StepGraphon g(std::move(widths), std::move(values));
    if (!g.is_w0()) throw ParameterError("step graphon: W0 values must lie in [0,1]");
    return g;
  }

  Eigen::Index blocks() const { return widths_.size(); }
  const Vector& widths() const { return widths_; }
  const Matrix& values() const { return values_; }

  bool is_w0() const {
    return (values_.array() >= Scalar(0)).all() && (values_.array() <= Scalar(1)).all();
  }

  bool has_equal_widths() const {
    const Scalar w = Scalar(1) / Scalar(blocks());
    return ((widths_.array() - w).abs() <= Scalar(1e-12)).all();
  }

  /// Cumulative block boundaries c_0 = 0, ..., c_m = 1.
  Vector boundaries() const {
    Vector c(blocks() + 1);
    c(0) = Scalar(0);
    for (Eigen::Index a = 0; a < blocks(); ++a) c(a + 1) = c(a) + widths_(a);
    c(blocks()) = Scalar(1);
    return c;
  }

  Eigen::Index block_of(Scalar x) const {
    const Vector c = boundaries();
    for (Eigen::Index a = 0; a + 1 < blocks(); ++a)
      if (x <= c(a + 1)) return a;
    return blocks() - 1;
  }

  Scalar operator()(Scalar x, Scalar y) const { return values_(block_of(x), block_of(y)); }

  /// Exact integral over [x0,x1] x [y0,y1].
  Scalar rect_integral(Scalar x0, Scalar x1, Scalar y0, Scalar y1) const {
    const Vector c = boundaries();
    Vector ox(blocks()), oy(blocks());
    for (Eigen::Index a = 0; a < blocks(); ++a) {
      ox(a) = detail::overlap(x0, x1, c(a), c(a + 1));
      oy(a) = detail::overlap(y0, y1, c(a), c(a + 1));
    }
    return ox.dot(values_ * oy);
  }

  Scalar degree(Scalar x) const {
    detail::check_unit(static_cast<double>(x), "degree point");
    return values_.row(block_of(x)).dot(widths_);
  }

  /// Integral of W over the unit square.
  Scalar integral() const { return widths_.dot(values_ * widths_); }

  /// Integral of |W| over the unit square.
  Scalar l1_norm() const { return widths_.dot(values_.cwiseAbs() * widths_); }

  /// Relabels blocks: result block a is this graphon's block perm[a].
  StepGraphon permuted(const std::vector<int>& perm) const {
    const Eigen::Index m = blocks();
    if (static_cast<Eigen::Index>(perm.size()) != m)
      throw StructuralError("permutation size does not match block count");
    Vector w(m);
    Matrix v(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      w(a) = widths_(perm[static_cast<std::size_t>(a)]);
      for (Eigen::Index b = 0; b < m; ++b)
        v(a, b) = values_(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
    }
    return StepGraphon(std::move(w), std::move(v));
  }

  /// Same kernel on the common refinement of this partition and `cuts`.
  StepGraphon refined(const Vector& cuts) const {
    std::vector<Scalar> pts;
    const Vector c = boundaries();
    for (Eigen::Index a = 0; a < c.size(); ++a) pts.push_back(c(a));
    for (Eigen::Index a = 0; a < cuts.size(); ++a) pts.push_back(cuts(a));
    std::sort(pts.begin(), pts.end());
    std::vector<Scalar> uniq;
    for (Scalar p : pts)
      if (uniq.empty() || p - uniq.back() > Scalar(1e-13)) uniq.push_back(p);
    uniq.back() = Scalar(1);
    const auto m = static_cast<Eigen::Index>(uniq.size()) - 1;
    Vector w(m);
    std::vector<Eigen::Index> src(static_cast<std::size_t>(m));
    for (Eigen::Index a = 0; a < m; ++a) {
      w(a) = uniq[static_cast<std::size_t>(a + 1)] - uniq[static_cast<std::size_t>(a)];
      const Scalar mid = (uniq[static_cast<std::size_t>(a + 1)] + uniq[static_cast<std::size_t>(a)]) / 2;
      src[static_cast<std::size_t>(a)] = block_of(mid);
    }
    Matrix v(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = 0; b < m; ++b)
        v(a, b) = values_(src[static_cast<std::size_t>(a)], src[static_cast<std::size_t>(b)]);
    return StepGraphon(std::move(w), std::move(v));
  }

 private:
  Vector widths_;
  Matrix values_;
};

/// Pointwise difference on the common refinement of both block partitions.
template <typename Scalar>
StepGraphon<Scalar> operator-(const StepGraphon<Scalar>& u, const StepGraphon<Scalar>& w) {
  if (u.blocks() == w.blocks() && (u.widths() - w.widths()).cwiseAbs().maxCoeff() <= Scalar(1e-15))
    return StepGraphon<Scalar>(u.widths(), u.values() - w.values());
  const auto ur = u.refined(w.boundaries());
  const auto wr = w.refined(u.boundaries());
  if (ur.blocks() != wr.blocks())
    throw StructuralError("step graphon difference: partitions could not be aligned");
  return StepGraphon<Scalar>(ur.widths(), ur.values() - wr.values());
}

template <typename Scalar>
StepGraphon<Scalar> operator-(const StepGraphon<Scalar>& u, Scalar c) {
  return StepGraphon<Scalar>(u.widths(), u.values().array() - c);
}

/// W_G: n equal blocks carrying the adjacency matrix.
StepGraphon<> from_graph(const Graph& g);

/// Closed-form limit kernels. All are [0,1]-valued and symmetric, and every
/// rectangle integral is evaluated in closed form.
class AnalyticGraphon {
 public:
  enum class Kind { Constant, HalfGraph, BlockFamily, Bipartite, Checkerboard };

  static AnalyticGraphon constant(double c);
  /// 1 where |x - y| >= 1/2.
  static AnalyticGraphon halfgraph();
  /// 1 on the diagonal squares C_k x C_k with |C_k| = lambda_k.
  static AnalyticGraphon block_family(std::vector<double> lambda);
  /// 1 on ([0,g] x [g,1]) u ([g,1] x [0,g]).
  static AnalyticGraphon bipartite(double gamma);
  /// 1 between blocks of different parity among 2n equal blocks.
  static AnalyticGraphon checkerboard(int n);

  Kind kind() const { return kind_; }
  std::string name() const;
  double parameter() const { return param_; }
  const std::vector<double>& lambda() const { return lambda_; }
  int checker_n() const { return checker_n_; }

  double operator()(double x, double y) const;
  double rect_integral(double x0, double x1, double y0, double y1) const;
  double degree(double x) const;

  /// Every kind except the half graph is a step function.
  bool is_step() const { return kind_ != Kind::HalfGraph; }
  StepGraphon<> to_step() const;

 private:
  AnalyticGraphon(Kind kind, double param, std::vector<double> lambda, int checker_n);

  Kind kind_;
  double param_ = 0.0;
  std::vector<double> lambda_;
  int checker_n_ = 0;
  StepGraphon<> step_;  // populated for step-representable kinds
};

using Graphon = std::variant<StepGraphon<>, AnalyticGraphon>;

double evaluate(const Graphon& w, double x, double y);
double rect_integral(const Graphon& w, double x0, double x1, double y0, double y1);
/// deg_W(x) = integral over y of W(x, y). x outside [0,1] is rejected.
double degree(const Graphon& w, double x);
bool is_w0(const Graphon& w);

}  // namespace graphcut
