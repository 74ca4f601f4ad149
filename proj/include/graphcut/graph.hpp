#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace graphcut {

/// Simple undirected graph on nodes 0..n-1 (files and the CLI use 1-based
/// labels). No loops, no multi-edges; edges are stored as (i, j) with i < j,
/// sorted.
class Graph {
 public:
  using Edge = std::pair<int, int>;

  Graph() = default;
  /// Throws ParameterError on loops, out-of-range endpoints or duplicates.
  Graph(int n, std::vector<Edge> edges);

  int size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_edge(int i, int j) const {
    return adjacency_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                      static_cast<std::size_t>(j)] != 0;
  }
  const std::vector<int>& neighbors(int i) const {
    return neighbors_[static_cast<std::size_t>(i)];
  }

  /// Dense symmetric 0/1 adjacency matrix.
  Eigen::MatrixXd adjacency() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> adjacency_;
  std::vector<std::vector<int>> neighbors_;
};

/// Small pattern graph F for homomorphism densities (at most 5 nodes).
class Motif {
 public:
  static constexpr int kMaxNodes = 5;

  Motif(int k, std::vector<Graph::Edge> edges);

  static Motif edge();
  static Motif path3();
  static Motif triangle();
  static Motif cycle4();
  /// "edge", "path3", "triangle", "cycle4".
  static Motif named(const std::string& name);

  int size() const { return graph_.size(); }
  const std::vector<Graph::Edge>& edges() const { return graph_.edges(); }
  const Graph& graph() const { return graph_; }

 private:
  Graph graph_;
};

}  // namespace graphcut
