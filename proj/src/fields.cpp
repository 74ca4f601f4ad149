#include "graphcut/fields.hpp"

#include <algorithm>
#include <numeric>

namespace graphcut {

LabelModel::LabelModel(std::vector<double> labels, Eigen::MatrixXd coupling)
    : labels_(std::move(labels)), coupling_(std::move(coupling)) {
  const auto n = static_cast<Eigen::Index>(labels_.size());
  if (n == 0) throw ParameterError("label model: no labels");
  if (coupling_.rows() != n || coupling_.cols() != n)
    throw StructuralError("label model: coupling must be N x N");
  for (std::size_t i = 0; i < labels_.size(); ++i)
    for (std::size_t j = i + 1; j < labels_.size(); ++j)
      if (labels_[i] == labels_[j]) throw ParameterError("label model: labels must be distinct");
  if ((coupling_.array() < 0.0).any()) throw ParameterError("label model: coupling must be non-negative");
  if ((coupling_ - coupling_.transpose()).cwiseAbs().maxCoeff() > 0.0)
    throw ParameterError("label model: coupling must be symmetric");
}

LabelModel LabelModel::spin() {
  return from_function({1.0, -1.0}, [](double a, double b) { return (a - b) * (a - b); });
}

LabelModel LabelModel::from_function(std::vector<double> labels,
                                     const std::function<double(double, double)>& f) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXd c(n, n);
  for (Eigen::Index h = 0; h < n; ++h)
    for (Eigen::Index k = 0; k < n; ++k)
      c(h, k) = f(labels[static_cast<std::size_t>(h)], labels[static_cast<std::size_t>(k)]);
  return LabelModel(std::move(labels), std::move(c));
}

int LabelModel::index_of(double label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw ParameterError("label " + std::to_string(label) + " is not in the label set");
  return static_cast<int>(it - labels_.begin());
}

bool LabelModel::is_spin() const {
  return labels_.size() == 2 && labels_[0] == 1.0 && labels_[1] == -1.0 && coupling_(0, 0) == 0.0 &&
         coupling_(1, 1) == 0.0 && coupling_(0, 1) == 4.0;
}

PartitionSpec PartitionSpec::from_masses(const Eigen::VectorXd& masses, int n) {
  if (masses.size() == 0) throw ParameterError("partition: no masses");
  if ((masses.array() < 0.0).any() || std::abs(masses.sum() - 1.0) > 1e-12)
    throw InfeasibleError("partition: masses must be non-negative and sum to 1");
  if (n < 0) throw ParameterError("partition: negative node count");
  PartitionSpec spec;
  spec.masses = masses;
  const auto k = static_cast<std::size_t>(masses.size());
  spec.sizes.resize(k);
  std::vector<double> rem(k);
  int assigned = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double exact = masses(static_cast<Eigen::Index>(i)) * n;
    // values within rounding noise of an integer count as that integer
    const double fl = std::floor(exact + 1e-9);
    spec.sizes[i] = static_cast<int>(fl);
    rem[i] = std::max(0.0, exact - fl);
    assigned += spec.sizes[i];
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
  for (std::size_t r = 0; assigned < n; ++r, ++assigned) ++spec.sizes[order[r % k]];
  return spec;
}

PartitionSpec PartitionSpec::bisection(int n) {
  if (n % 2 != 0) throw ParameterError("bisection needs an even node count");
  return from_masses(Eigen::Vector2d(0.5, 0.5), n);
}

int PartitionSpec::total() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }

ThetaField<> theta_from_spin(std::span<const double> u, const LabelModel& model) {
  Assignment a(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) a[i] = model.index_of(u[i]);
  return ThetaField<>::from_assignment(a, model.size());
}

ThetaField<> recovery_sequence(const ThetaField<>& theta, int n, int max_denominator) {
  const Eigen::Index m = theta.cells();
  const Eigen::Index labels = theta.labels();
  if (n <= 0 || n % m != 0) throw ParameterError("recovery_sequence: n must be a positive multiple of the grid size");
  const int per_cell = static_cast<int>(n / m);

  std::vector<int> out(static_cast<std::size_t>(n));
  for (Eigen::Index cell = 0; cell < m; ++cell) {
    int q = 0;
    std::vector<int> p(static_cast<std::size_t>(labels));
    for (int cand = 1; cand <= max_denominator && q == 0; ++cand) {
      bool ok = true;
      for (Eigen::Index k = 0; k < labels && ok; ++k) {
        const double scaled = theta(cell, k) * cand;
        const double r = std::round(scaled);
        if (std::abs(scaled - r) > 1e-9 * cand) ok = false;
        p[static_cast<std::size_t>(k)] = static_cast<int>(r);
      }
      if (ok && std::accumulate(p.begin(), p.end(), 0) == cand) q = cand;
    }
    if (q == 0) throw ParameterError("recovery_sequence: weights of cell " + std::to_string(cell + 1) +
                                     " are not rational with denominator <= " + std::to_string(max_denominator));
    if (per_cell % q != 0)
      throw ParameterError("recovery_sequence: n must be divisible by m * q (q = " + std::to_string(q) + ")");
    for (int local = 0; local < per_cell; ++local) {
      const int global = static_cast<int>(cell) * per_cell + local + 1;  // 1-based
      int residue = global % q;
      if (residue == 0) residue = q;
      int upper = 0;
      int label = 0;
      for (Eigen::Index k = 0; k < labels; ++k) {
        upper += p[static_cast<std::size_t>(k)];
        if (residue <= upper) {
          label = static_cast<int>(k);
          break;
        }
      }
      out[static_cast<std::size_t>(global - 1)] = label;
    }
  }
  return ThetaField<>::from_assignment(out, static_cast<int>(labels));
}

ThetaField<> repair_mass(const ThetaField<>& theta, const std::vector<int>& sizes) {
  const Eigen::Index n = theta.cells();
  const auto labels = static_cast<std::size_t>(theta.labels());
  if (sizes.size() != labels) throw ParameterError("repair_mass: one size per label required");
  for (int s : sizes)
    if (s < 0) throw InfeasibleError("repair_mass: negative size");
  if (std::accumulate(sizes.begin(), sizes.end(), 0L) != n)
    throw InfeasibleError("repair_mass: sizes must sum to the number of cells");
  Assignment a = theta.assignment();

  std::vector<int> count(labels, 0);
  for (int l : a) ++count[static_cast<std::size_t>(l)];
  std::vector<int> movers;
  for (std::size_t k = 0; k < labels; ++k) {
    int excess = count[k] - sizes[k];
    for (std::size_t i = 0; i < a.size() && excess > 0; ++i)
      if (a[i] == static_cast<int>(k)) {
        movers.push_back(static_cast<int>(i));
        --excess;
      }
  }
  std::sort(movers.begin(), movers.end());
  std::size_t next = 0;
  for (std::size_t k = 0; k < labels; ++k)
    for (int deficit = sizes[k] - count[k]; deficit > 0; --deficit)
      a[static_cast<std::size_t>(movers[next++])] = static_cast<int>(k);
  return ThetaField<>::from_assignment(a, static_cast<int>(labels));
}

namespace {

Eigen::Index window_cells(Eigen::Index m, double h) {
  const double cells = h * static_cast<double>(m);
  const double r = std::round(cells);
  if (!(h > 0.0) || r < 1.0 || std::abs(cells - r) > 1e-9 || m % static_cast<Eigen::Index>(r) != 0)
    throw ParameterError("window_average: h must be a multiple of 1/m that tiles [0,1]");
  return static_cast<Eigen::Index>(r);
}

}  // namespace

Eigen::MatrixXd window_average(const ThetaField<>& theta, double h) {
  const Eigen::Index c = window_cells(theta.cells(), h);
  const Eigen::Index windows = theta.cells() / c;
  Eigen::MatrixXd out(windows, theta.labels());
  for (Eigen::Index w = 0; w < windows; ++w)
    out.row(w) = theta.weights().middleRows(w * c, c).colwise().mean();
  return out;
}

Eigen::VectorXd window_average(std::span<const double> values, double h) {
  const auto m = static_cast<Eigen::Index>(values.size());
  const Eigen::Index c = window_cells(m, h);
  Eigen::Map<const Eigen::VectorXd> v(values.data(), m);
  Eigen::VectorXd out(m / c);
  for (Eigen::Index w = 0; w < out.size(); ++w) out(w) = v.segment(w * c, c).mean();
  return out;
}

}  // namespace graphcut
