#pragma once

#include <vector>

#include <Eigen/Dense>

#include "graphcut/fields.hpp"
#include "graphcut/graph.hpp"
#include "graphcut/graphon.hpp"
#include "graphcut/random.hpp"

namespace graphcut::testing {

inline Graph random_graph(int n, double p, SplitMix64& rng) {
  std::vector<Graph::Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < p) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

/// Widths bounded away from zero, symmetric values in [lo, hi).
inline StepGraphon<> random_step(Eigen::Index m, SplitMix64& rng, double lo = 0.0, double hi = 1.0) {
  Eigen::VectorXd w(m);
  for (Eigen::Index a = 0; a < m; ++a) w(a) = 0.2 + rng.uniform();
  w /= w.sum();
  w(m - 1) = 1.0 - w.head(m - 1).sum();
  Eigen::MatrixXd v(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = a; b < m; ++b) v(a, b) = v(b, a) = lo + (hi - lo) * rng.uniform();
  return StepGraphon<>(w, v);
}

/// Random balanced spin assignment (label indices 0 / 1) on n nodes, n even.
inline Assignment random_balanced(int n, SplitMix64& rng) {
  const std::vector<int> p = rng.permutation(n);
  Assignment u(static_cast<std::size_t>(n), 1);
  for (int r = 0; r < n / 2; ++r) u[static_cast<std::size_t>(p[static_cast<std::size_t>(r)])] = 0;
  return u;
}

/// Random field with values in [0,1] whose mean is exactly representable
/// as mass: pairs of cells carry (x, 2 mass - x) style complements.
inline Eigen::VectorXd random_spin_field(Eigen::Index m, SplitMix64& rng) {
  Eigen::VectorXd t(m);
  for (Eigen::Index i = 0; i < m; ++i) t(i) = rng.uniform();
  return t;
}

}  // namespace graphcut::testing
