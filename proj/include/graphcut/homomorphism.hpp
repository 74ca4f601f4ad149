#pragma once

#include <cstdint>

#include "graphcut/graph.hpp"
#include "graphcut/graphon.hpp"

namespace graphcut {

inline constexpr int kHomGraphMaxNodes = 12;
inline constexpr std::uint64_t kHomGraphonMaxAssignments = 10'000'000;

/// Reduced non-negative fraction.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Number of adjacency-preserving maps V(F) -> V(G).
std::uint64_t hom_count(const Motif& f, const Graph& g);

/// t(F, G) = hom(F, G) / |V(G)|^|V(F)|, exact.
Rational hom_density(const Motif& f, const Graph& g);

/// t(F, W) for a step graphon: sum over block assignments of the product of
/// edge values and block widths.
double hom_density(const Motif& f, const StepGraphon<>& w);

}  // namespace graphcut
