#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "graphcut/errors.hpp"
#include "graphcut/graphon.hpp"
#include "graphcut/parallel.hpp"
#include "graphcut/random.hpp"

namespace graphcut {

inline constexpr int kCutNormExactMaxBlocks = 22;
inline constexpr int kCutNormFormsMaxBlocks = 10;
inline constexpr int kCutDistanceMaxBlocks = 8;

/// Value of the cut norm together with the sets attaining it, given as the
/// fraction of each block that belongs to S and to T.
template <typename Scalar = double>
struct CutNormResult {
  Scalar value = Scalar(0);
  VectorX<Scalar> s;
  VectorX<Scalar> t;
  bool exact = true;
};

struct CutNormOptions {
  enum class Mode { Exact, Heuristic };
  Mode mode = Mode::Exact;
  int restarts = 32;
  std::uint64_t seed = 0;
};

namespace detail {

/// Block-weighted kernel diag(w) V diag(w): integral over S x T becomes s^T K t.
template <typename Scalar>
MatrixX<Scalar> weighted_kernel(const StepGraphon<Scalar>& w) {
  return w.widths().asDiagonal() * w.values() * w.widths().asDiagonal();
}

template <typename Scalar>
Scalar bilinear(const MatrixX<Scalar>& k, const VectorX<Scalar>& s, const VectorX<Scalar>& t) {
  Scalar acc(0);
  for (Eigen::Index i = 0; i < k.rows(); ++i) {
    if (s(i) == Scalar(0)) continue;
    for (Eigen::Index j = 0; j < k.cols(); ++j) acc += s(i) * k(i, j) * t(j);
  }
  return acc;
}

template <typename Scalar>
VectorX<Scalar> bits_to_vector(std::uint32_t bits, Eigen::Index m) {
  VectorX<Scalar> v(m);
  for (Eigen::Index i = 0; i < m; ++i) v(i) = ((bits >> i) & 1U) ? Scalar(1) : Scalar(0);
  return v;
}

template <typename Scalar>
bool lex_less(const VectorX<Scalar>& a, const VectorX<Scalar>& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

/// True when (v, s, t) beats (best_v, best_s, best_t): larger value, ties
/// broken towards the lexicographically smallest witness.
template <typename Scalar>
bool better(Scalar v, const VectorX<Scalar>& s, const VectorX<Scalar>& t, const CutNormResult<Scalar>& best) {
  if (v != best.value) return v > best.value;
  if (best.s.size() == 0) return true;
  if (lex_less(s, best.s)) return true;
  if (lex_less(best.s, s)) return false;
  return lex_less(t, best.t);
}

}  // namespace detail

/// Exact cut norm of a step graphon.
///
/// The integral over S x T is bilinear in the block fractions (s, t), so the
/// supremum sits at a vertex of the box. For each 0/1 pattern s the best t is
/// read off column by column (t_j = 1 where the column sum has the wanted
/// sign). Patterns are walked in Gray-code order inside fixed-size chunks;
/// chunks are independent, so the result does not depend on the number of
/// workers.
template <typename Scalar>
CutNormResult<Scalar> cut_norm_exact(const StepGraphon<Scalar>& w) {
  const Eigen::Index m = w.blocks();
  if (m > kCutNormExactMaxBlocks) throw CapacityError("cut_norm exact: more than 22 blocks");
  const MatrixX<Scalar> k = detail::weighted_kernel(w);

  const int low_bits = static_cast<int>(std::min<Eigen::Index>(m, 14));
  const std::size_t chunks = std::size_t{1} << (m - low_bits);
  std::vector<CutNormResult<Scalar>> chunk_best(chunks);

  parallel_for(chunks, [&](std::size_t chunk) {
    VectorX<Scalar> r = VectorX<Scalar>::Zero(m);
    const auto high = static_cast<std::uint32_t>(chunk) << low_bits;
    for (Eigen::Index i = low_bits; i < m; ++i)
      if ((high >> i) & 1U) r += k.row(i).transpose();

    Scalar best = Scalar(-1);
    std::uint32_t best_bits = 0;
    int best_sign = 1;
    std::uint32_t gray = 0;
    const std::uint32_t steps = std::uint32_t{1} << low_bits;
    for (std::uint32_t step = 0; step < steps; ++step) {
      if (step > 0) {
        const int bit = std::countr_zero(step);
        gray ^= (1U << bit);
        if ((gray >> bit) & 1U)
          r += k.row(bit).transpose();
        else
          r -= k.row(bit).transpose();
      }
      Scalar pos(0), neg(0);
      for (Eigen::Index j = 0; j < m; ++j) {
        if (r(j) > Scalar(0))
          pos += r(j);
        else
          neg -= r(j);
      }
      if (pos > best) {
        best = pos;
        best_bits = high | gray;
        best_sign = 1;
      }
      if (neg > best) {
        best = neg;
        best_bits = high | gray;
        best_sign = -1;
      }
    }
    // Recompute the column sums for the winning pattern from scratch.
    CutNormResult<Scalar> out;
    out.s = detail::bits_to_vector<Scalar>(best_bits, m);
    const VectorX<Scalar> col = k.transpose() * out.s;
    out.t.resize(m);
    for (Eigen::Index j = 0; j < m; ++j)
      out.t(j) = (Scalar(best_sign) * col(j) > Scalar(0)) ? Scalar(1) : Scalar(0);
    out.value = std::abs(detail::bilinear(k, out.s, out.t));
    chunk_best[chunk] = std::move(out);
  });

  CutNormResult<Scalar> result;
  result.value = Scalar(-1);
  for (const auto& c : chunk_best)
    if (detail::better(c.value, c.s, c.t, result)) result = c;
  result.exact = true;
  return result;
}

/// Lower bound on the cut norm by alternating best responses between S and T
/// from random starting sets.
template <typename Scalar>
CutNormResult<Scalar> cut_norm_heuristic(const StepGraphon<Scalar>& w, int restarts, std::uint64_t seed) {
  if (restarts <= 0) throw ParameterError("cut_norm heuristic: restarts must be positive");
  const Eigen::Index m = w.blocks();
  const MatrixX<Scalar> k = detail::weighted_kernel(w);
  CutNormResult<Scalar> best;
  best.value = Scalar(-1);
  for (int r = 0; r < restarts; ++r) {
    SplitMix64 rng(seed + static_cast<std::uint64_t>(r));
    for (int sign : {1, -1}) {
      VectorX<Scalar> s(m), t(m);
      for (Eigen::Index i = 0; i < m; ++i) s(i) = (rng.next() >> 63) ? Scalar(1) : Scalar(0);
      for (int iter = 0; iter < 200; ++iter) {
        const VectorX<Scalar> col = Scalar(sign) * (k.transpose() * s);
        for (Eigen::Index j = 0; j < m; ++j) t(j) = col(j) > Scalar(0) ? Scalar(1) : Scalar(0);
        const VectorX<Scalar> row = Scalar(sign) * (k * t);
        VectorX<Scalar> next(m);
        for (Eigen::Index i = 0; i < m; ++i) next(i) = row(i) > Scalar(0) ? Scalar(1) : Scalar(0);
        if (next == s) break;
        s = next;
      }
      const VectorX<Scalar> col = Scalar(sign) * (k.transpose() * s);
      for (Eigen::Index j = 0; j < m; ++j) t(j) = col(j) > Scalar(0) ? Scalar(1) : Scalar(0);
      const Scalar v = std::abs(detail::bilinear(k, s, t));
      if (detail::better(v, s, t, best)) {
        best.value = v;
        best.s = s;
        best.t = t;
      }
    }
  }
  best.exact = false;
  return best;
}

template <typename Scalar>
CutNormResult<Scalar> cut_norm(const StepGraphon<Scalar>& w, const CutNormOptions& options = {}) {
  if (options.mode == CutNormOptions::Mode::Exact) return cut_norm_exact(w);
  return cut_norm_heuristic(w, options.restarts, options.seed);
}

/// The four classical expressions of the cut norm, evaluated independently.
template <typename Scalar = double>
struct CutNormForms {
  Scalar rectangles;      // sup over S, T of |W(S x T)|
  Scalar complement;      // sup over S of |W(S x S^c)|
  Scalar disjoint;        // sup over disjoint S, T
  Scalar functional;      // sup over f, g : [0,1] -> [0,1]
};

namespace detail {

/// Maximises |sum_{i,j in H} K_ij s_i (1 - s_j)| over s in [0,1]^H for every
/// admissible per-block state assignment. States: 0 = block outside H,
/// 1 = s_i = 0, 2 = s_i = 1, 3 = s_i free. A global maximiser is stationary
/// in its free coordinates, so enumerating the stationary point of every
/// face is exact.
template <typename Scalar>
Scalar max_complement_form(const MatrixX<Scalar>& k, int first_state) {
  const Eigen::Index m = k.rows();
  const int radix = 4 - first_state;
  std::size_t patterns = 1;
  for (Eigen::Index i = 0; i < m; ++i) patterns *= static_cast<std::size_t>(radix);

  Scalar best(0);
  std::vector<int> state(static_cast<std::size_t>(m));
  for (std::size_t p = 0; p < patterns; ++p) {
    std::size_t code = p;
    std::vector<Eigen::Index> in_h, free, ones;
    for (Eigen::Index i = 0; i < m; ++i) {
      const int st = first_state + static_cast<int>(code % static_cast<std::size_t>(radix));
      code /= static_cast<std::size_t>(radix);
      state[static_cast<std::size_t>(i)] = st;
      if (st == 0) continue;
      in_h.push_back(i);
      if (st == 2) ones.push_back(i);
      if (st == 3) free.push_back(i);
    }
    VectorX<Scalar> s = VectorX<Scalar>::Zero(m);
    for (auto i : ones) s(i) = Scalar(1);
    if (!free.empty()) {
      const auto f = static_cast<Eigen::Index>(free.size());
      MatrixX<Scalar> a(f, f);
      VectorX<Scalar> rhs(f);
      for (Eigen::Index x = 0; x < f; ++x) {
        Scalar b(0), fixed(0);
        for (auto j : in_h) b += k(free[static_cast<std::size_t>(x)], j);
        for (auto j : ones) fixed += k(free[static_cast<std::size_t>(x)], j);
        rhs(x) = b - Scalar(2) * fixed;
        for (Eigen::Index y = 0; y < f; ++y)
          a(x, y) = Scalar(2) * k(free[static_cast<std::size_t>(x)], free[static_cast<std::size_t>(y)]);
      }
      const VectorX<Scalar> sol = a.completeOrthogonalDecomposition().solve(rhs);
      const Scalar scale = std::max(Scalar(1), rhs.cwiseAbs().maxCoeff());
      if ((a * sol - rhs).cwiseAbs().maxCoeff() > Scalar(1e-10) * scale) continue;
      bool inside = true;
      for (Eigen::Index x = 0; x < f; ++x)
        if (sol(x) < Scalar(-1e-12) || sol(x) > Scalar(1) + Scalar(1e-12)) inside = false;
      if (!inside) continue;
      for (Eigen::Index x = 0; x < f; ++x)
        s(free[static_cast<std::size_t>(x)]) = std::clamp(sol(x), Scalar(0), Scalar(1));
    }
    Scalar q(0);
    for (auto i : in_h)
      for (auto j : in_h) q += k(i, j) * s(i) * (Scalar(1) - s(j));
    best = std::max(best, std::abs(q));
  }
  return best;
}

}  // namespace detail

/// Evaluates all four cut-norm expressions for a small step graphon. The
/// rectangle form enumerates every pair of block subsets; the functional form
/// goes through cut_norm_exact; the complement and disjoint forms solve the
/// (indefinite) quadratic programs over block fractions exactly.
template <typename Scalar>
CutNormForms<Scalar> cut_norm_forms(const StepGraphon<Scalar>& w) {
  const Eigen::Index m = w.blocks();
  if (m > kCutNormFormsMaxBlocks) throw CapacityError("cut_norm_forms: more than 10 blocks");
  const MatrixX<Scalar> k = detail::weighted_kernel(w);
  CutNormForms<Scalar> out{};

  const std::uint32_t n_sets = std::uint32_t{1} << m;
  Scalar rect(0);
  for (std::uint32_t sb = 0; sb < n_sets; ++sb) {
    const VectorX<Scalar> col = k.transpose() * detail::bits_to_vector<Scalar>(sb, m);
    for (std::uint32_t tb = 0; tb < n_sets; ++tb) {
      Scalar v(0);
      for (Eigen::Index j = 0; j < m; ++j)
        if ((tb >> j) & 1U) v += col(j);
      rect = std::max(rect, std::abs(v));
    }
  }
  out.rectangles = rect;
  out.functional = cut_norm_exact(w).value;
  // S x S^c: each block splits into a fraction s_i in S and 1 - s_i outside.
  out.complement = detail::max_complement_form(k, 1);
  // Disjoint S, T: an optimal block either lies outside S u T or is split
  // between them (s_i + t_i = 1); within a block the objective is bilinear in
  // (s_i, t_i), so no other face of the triangle can be strictly optimal.
  out.disjoint = detail::max_complement_form(k, 0);
  return out;
}

/// min over block permutations pi of ||u^pi - w||, for equal-width step
/// graphons with the same block count. An upper bound on the cut distance.
template <typename Scalar>
Scalar cut_distance_blocks(const StepGraphon<Scalar>& u, const StepGraphon<Scalar>& w) {
  if (u.blocks() != w.blocks() || !u.has_equal_widths() || !w.has_equal_widths())
    throw StructuralError("cut_distance_blocks: graphons need the same equal-width block structure");
  if (u.blocks() > kCutDistanceMaxBlocks) throw CapacityError("cut_distance_blocks: more than 8 blocks");
  std::vector<int> perm(static_cast<std::size_t>(u.blocks()));
  std::iota(perm.begin(), perm.end(), 0);
  Scalar best = cut_norm_exact(u - w).value;
  while (std::next_permutation(perm.begin(), perm.end()))
    best = std::min(best, cut_norm_exact(u.permuted(perm) - w).value);
  return best;
}

}  // namespace graphcut
