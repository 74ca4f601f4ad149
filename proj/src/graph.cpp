#include "graphcut/graph.hpp"

#include <algorithm>

#include "graphcut/errors.hpp"

namespace graphcut {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
  if (n < 0) throw ParameterError("graph: negative node count");
  for (auto& [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw ParameterError("graph: edge endpoint out of range");
    if (i == j) throw ParameterError("graph: loops are not allowed");
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw ParameterError("graph: duplicate edge");
  edges_ = std::move(edges);

  const auto un = static_cast<std::size_t>(n);
  adjacency_.assign(un * un, 0);
  neighbors_.assign(un, {});
  for (const auto& [i, j] : edges_) {
    adjacency_[static_cast<std::size_t>(i) * un + static_cast<std::size_t>(j)] = 1;
    adjacency_[static_cast<std::size_t>(j) * un + static_cast<std::size_t>(i)] = 1;
    neighbors_[static_cast<std::size_t>(i)].push_back(j);
    neighbors_[static_cast<std::size_t>(j)].push_back(i);
  }
  for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
}

Eigen::MatrixXd Graph::adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (const auto& [i, j] : edges_) {
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  return a;
}

Motif::Motif(int k, std::vector<Graph::Edge> edges) : graph_(k, std::move(edges)) {
  if (k < 1 || k > kMaxNodes) throw CapacityError("motif: at most 5 nodes supported");
}

Motif Motif::edge() { return Motif(2, {{0, 1}}); }
Motif Motif::path3() { return Motif(3, {{0, 1}, {1, 2}}); }
Motif Motif::triangle() { return Motif(3, {{0, 1}, {1, 2}, {0, 2}}); }
Motif Motif::cycle4() { return Motif(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

Motif Motif::named(const std::string& name) {
  if (name == "edge") return edge();
  if (name == "path3") return path3();
  if (name == "triangle") return triangle();
  if (name == "cycle4") return cycle4();
  throw ParameterError("unknown motif '" + name + "'");
}

}  // namespace graphcut
