#pragma once

#include <cstdint>
#include <vector>

#include "graphcut/graph.hpp"
#include "graphcut/graphon.hpp"

namespace graphcut {

/// A member of a dense graph sequence together with the sequence's limit.
struct FamilyMember {
  Graph graph;
  AnalyticGraphon limit;
};

FamilyMember complete(int n);

/// Cliques on C_k = {floor(n L_{k-1}) + 1, ..., floor(n L_k)} (L the partial
/// sums of lambda), joined in a chain by one edge from the last node of C_k to
/// the first node of C_{k+1}.
FamilyMember block_family(const std::vector<double>& lambda, int n);

/// Node ranges of the block family (0-based, half-open).
std::vector<std::pair<int, int>> block_family_ranges(const std::vector<double>& lambda, int n);

/// K_{p,q} with p = floor(n gamma).
FamilyMember bipartite(double gamma, int n);

/// H_{n/2,n/2}: i <= n/2 < j joined iff i <= j - n/2 (1-based).
FamilyMember halfgraph(int n);

/// 2n equal blocks, value 1 between blocks of different parity.
StepGraphon<> checkerboard(int n);

/// W-random graph: x_1..x_n uniform, then edge ij (i < j, row-major) with
/// probability W(x_i, x_j), all from one SplitMix64 stream seeded by `seed`.
Graph w_random(const Graphon& w, int n, std::uint64_t seed);

/// sign(sin(n pi x)) at the midpoints of m cells (m a multiple of n).
std::vector<double> sign_sin_field(int n, int m);

}  // namespace graphcut
