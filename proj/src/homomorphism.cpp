#include "graphcut/homomorphism.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "graphcut/errors.hpp"

namespace graphcut {

namespace {

// Calls visit(assignment) for every map {0..k-1} -> {0..n-1}.
template <typename Visit>
void for_each_map(int k, int n, Visit&& visit) {
  std::vector<int> phi(static_cast<std::size_t>(k), 0);
  while (true) {
    visit(phi);
    int pos = 0;
    while (pos < k && ++phi[static_cast<std::size_t>(pos)] == n) phi[static_cast<std::size_t>(pos++)] = 0;
    if (pos == k) return;
  }
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

std::uint64_t hom_count(const Motif& f, const Graph& g) {
  if (g.size() > kHomGraphMaxNodes) throw CapacityError("hom_density: graph has more than 12 nodes");
  if (g.size() == 0) return 0;
  std::uint64_t count = 0;
  for_each_map(f.size(), g.size(), [&](const std::vector<int>& phi) {
    for (const auto& [a, b] : f.edges())
      if (!g.has_edge(phi[static_cast<std::size_t>(a)], phi[static_cast<std::size_t>(b)])) return;
    ++count;
  });
  return count;
}

Rational hom_density(const Motif& f, const Graph& g) {
  const std::uint64_t num = hom_count(f, g);
  const std::uint64_t den = ipow(static_cast<std::uint64_t>(g.size()), f.size());
  const std::uint64_t d = std::gcd(num, den);
  return Rational{num / d, den / d};
}

double hom_density(const Motif& f, const StepGraphon<>& w) {
  const auto m = static_cast<int>(w.blocks());
  if (std::pow(static_cast<double>(m), f.size()) > static_cast<double>(kHomGraphonMaxAssignments))
    throw CapacityError("hom_density: too many block assignments");
  double total = 0.0;
  for_each_map(f.size(), m, [&](const std::vector<int>& b) {
    double term = 1.0;
    for (int v : b) term *= w.widths()(v);
    for (const auto& [x, y] : f.edges()) term *= w.values()(b[static_cast<std::size_t>(x)], b[static_cast<std::size_t>(y)]);
    total += term;
  });
  return total;
}

}  // namespace graphcut
