#include "graphcut/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "graphcut/errors.hpp"

namespace graphcut {

namespace {

class MinCostFlow {
 public:
  explicit MinCostFlow(int nodes) : graph_(static_cast<std::size_t>(nodes)) {}

  int add_edge(int from, int to, double cap, double cost) {
    graph_[static_cast<std::size_t>(from)].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({to, cap, cost});
    graph_[static_cast<std::size_t>(to)].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({from, 0.0, -cost});
    return static_cast<int>(edges_.size()) - 2;
  }

  double flow_on(int edge) const { return edges_[static_cast<std::size_t>(edge) ^ 1U].cap; }

  // Pushes up to `amount` units from s to t; all costs must be non-negative.
  double run(int s, int t, double amount) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    constexpr double eps = 1e-13;
    const std::size_t n = graph_.size();
    std::vector<double> potential(n, 0.0), dist(n);
    std::vector<int> prev_edge(n);
    double pushed = 0.0;
    while (amount - pushed > eps) {
      std::fill(dist.begin(), dist.end(), inf);
      std::fill(prev_edge.begin(), prev_edge.end(), -1);
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
      dist[static_cast<std::size_t>(s)] = 0.0;
      queue.emplace(0.0, s);
      while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[static_cast<std::size_t>(u)]) continue;
        for (int id : graph_[static_cast<std::size_t>(u)]) {
          const Edge& e = edges_[static_cast<std::size_t>(id)];
          if (e.cap <= eps) continue;
          const double nd = d + e.cost + potential[static_cast<std::size_t>(u)] -
                            potential[static_cast<std::size_t>(e.to)];
          if (nd < dist[static_cast<std::size_t>(e.to)] - 1e-15) {
            dist[static_cast<std::size_t>(e.to)] = nd;
            prev_edge[static_cast<std::size_t>(e.to)] = id;
            queue.emplace(nd, e.to);
          }
        }
      }
      if (dist[static_cast<std::size_t>(t)] == inf) break;
      for (std::size_t v = 0; v < n; ++v)
        if (dist[v] < inf) potential[v] += dist[v];
      double push = amount - pushed;
      for (int v = t; v != s;) {
        const int id = prev_edge[static_cast<std::size_t>(v)];
        push = std::min(push, edges_[static_cast<std::size_t>(id)].cap);
        v = edges_[static_cast<std::size_t>(id) ^ 1U].to;
      }
      for (int v = t; v != s;) {
        const int id = prev_edge[static_cast<std::size_t>(v)];
        edges_[static_cast<std::size_t>(id)].cap -= push;
        edges_[static_cast<std::size_t>(id) ^ 1U].cap += push;
        v = edges_[static_cast<std::size_t>(id) ^ 1U].to;
      }
      pushed += push;
    }
    return pushed;
  }

 private:
  struct Edge {
    int to;
    double cap;
    double cost;
  };
  std::vector<std::vector<int>> graph_;
  std::vector<Edge> edges_;
};

}  // namespace

Eigen::MatrixXd transport_lmo(const Eigen::MatrixXd& cost, const Eigen::VectorXd& capacity) {
  const auto m = static_cast<int>(cost.rows());
  const auto labels = static_cast<int>(cost.cols());
  if (capacity.size() != labels) throw StructuralError("transport_lmo: one capacity per label required");
  if ((capacity.array() < 0.0).any() || std::abs(capacity.sum() - m) > 1e-9)
    throw InfeasibleError("transport_lmo: capacities must be non-negative and sum to the row count");

  const int source = m + labels, sink = source + 1;
  MinCostFlow flow(m + labels + 2);
  std::vector<std::vector<int>> cell_edges(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    flow.add_edge(source, i, 1.0, 0.0);
    // subtracting the row minimum keeps every cost non-negative without
    // changing the optimum (each row carries exactly one unit)
    const double shift = cost.row(i).minCoeff();
    for (int k = 0; k < labels; ++k)
      cell_edges[static_cast<std::size_t>(i)].push_back(flow.add_edge(i, m + k, 1.0, cost(i, k) - shift));
  }
  for (int k = 0; k < labels; ++k) flow.add_edge(m + k, sink, capacity(k), 0.0);
  const double pushed = flow.run(source, sink, static_cast<double>(m));
  if (std::abs(pushed - m) > 1e-9) throw InfeasibleError("transport_lmo: could not route all rows");

  Eigen::MatrixXd x(m, labels);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < labels; ++k) x(i, k) = flow.flow_on(cell_edges[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
  return x;
}

}  // namespace graphcut
