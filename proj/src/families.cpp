#include "graphcut/families.hpp"

#include <cmath>
#include <numeric>

#include "graphcut/errors.hpp"
#include "graphcut/random.hpp"

namespace graphcut {

namespace {

// floor with a small allowance for partial sums such as 0.45 + 0.35.
int guarded_floor(double x) { return static_cast<int>(std::floor(x + 1e-9)); }

}  // namespace

FamilyMember complete(int n) {
  if (n < 1) throw ParameterError("complete: n must be positive");
  std::vector<Graph::Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return {Graph(n, std::move(edges)), AnalyticGraphon::constant(1.0)};
}

std::vector<std::pair<int, int>> block_family_ranges(const std::vector<double>& lambda, int n) {
  if (lambda.empty()) throw ParameterError("block family: empty lambda");
  if (std::abs(std::accumulate(lambda.begin(), lambda.end(), 0.0) - 1.0) > 1e-12)
    throw ParameterError("block family: lambda must sum to 1");
  std::vector<std::pair<int, int>> ranges;
  double partial = 0.0;
  int start = 0;
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    partial += lambda[k];
    const int end = k + 1 == lambda.size() ? n : guarded_floor(n * partial);
    if (end <= start) throw ParameterError("block family: block " + std::to_string(k + 1) + " is empty at n = " +
                                           std::to_string(n));
    ranges.emplace_back(start, end);
    start = end;
  }
  return ranges;
}

FamilyMember block_family(const std::vector<double>& lambda, int n) {
  auto limit = AnalyticGraphon::block_family(lambda);
  const auto ranges = block_family_ranges(lambda, n);
  std::vector<Graph::Edge> edges;
  for (std::size_t k = 0; k < ranges.size(); ++k) {
    const auto [lo, hi] = ranges[k];
    for (int i = lo; i < hi; ++i)
      for (int j = i + 1; j < hi; ++j) edges.emplace_back(i, j);
    if (k + 1 < ranges.size()) edges.emplace_back(hi - 1, ranges[k + 1].first);
  }
  return {Graph(n, std::move(edges)), std::move(limit)};
}

FamilyMember bipartite(double gamma, int n) {
  auto limit = AnalyticGraphon::bipartite(gamma);
  const int p = guarded_floor(n * gamma);
  const int q = n - p;
  if (n < 2 || p < 1 || q < 1) throw ParameterError("bipartite: both groups must be non-empty");
  std::vector<Graph::Edge> edges;
  for (int i = 0; i < p; ++i)
    for (int j = p; j < n; ++j) edges.emplace_back(i, j);
  return {Graph(n, std::move(edges)), std::move(limit)};
}

FamilyMember halfgraph(int n) {
  if (n < 2 || n % 2 != 0) throw ParameterError("halfgraph: n must be even and positive");
  const int k = n / 2;
  std::vector<Graph::Edge> edges;
  for (int i = 1; i <= k; ++i)
    for (int j = k + 1; j <= n; ++j)
      if (i <= j - k) edges.emplace_back(i - 1, j - 1);
  return {Graph(n, std::move(edges)), AnalyticGraphon::halfgraph()};
}

StepGraphon<> checkerboard(int n) { return AnalyticGraphon::checkerboard(n).to_step(); }

Graph w_random(const Graphon& w, int n, std::uint64_t seed) {
  if (!is_w0(w)) throw ParameterError("w_random: kernel values must lie in [0,1]");
  if (n < 1) throw ParameterError("w_random: n must be positive");
  SplitMix64 rng(seed);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (double& xi : x) xi = rng.uniform();
  std::vector<Graph::Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < evaluate(w, x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)]))
        edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

std::vector<double> sign_sin_field(int n, int m) {
  if (n < 1 || m < 1 || m % n != 0) throw ParameterError("sign_sin_field: m must be a positive multiple of n");
  std::vector<double> u(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    // n * pi * (i + 1/2) / m lies in the half-period floor((2i+1) n / 2m);
    // even half-periods are where sine is positive.
    const long half_period = (2L * i + 1) * n / (2L * m);
    u[static_cast<std::size_t>(i)] = half_period % 2 == 0 ? 1.0 : -1.0;
  }
  return u;
}

}  // namespace graphcut
