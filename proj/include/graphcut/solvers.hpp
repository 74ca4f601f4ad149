#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graphcut/fields.hpp"
#include "graphcut/functionals.hpp"
#include "graphcut/graph.hpp"
#include "graphcut/graphon.hpp"

namespace graphcut {

/// Result of any discrete or continuum minimization.
/// Exactly one of `assignment` (discrete) and `theta` (continuum) is set.
struct SolveReport {
  double value = 0;
  std::optional<Assignment> assignment;  // label index per node
  std::vector<double> labels;            // label value per node, with `assignment`
  std::optional<ThetaField<>> theta;
  std::string method;
  std::uint64_t seed = 0;
  int restarts = 0;
  long iterations = 0;
  std::optional<double> residual;  // continuum only
  std::vector<double> history;     // objective per iteration of the reported restart (continuum)
};

inline constexpr int kBruteBisectionMaxNodes = 24;

/// Exact minimum of the spin cut functional over balanced assignments.
/// S (node 0 always in S) gets the +1 label; ties go to the lexicographically
/// smallest S.
SolveReport brute_bisection(const Graph& g);

/// Size-preserving pairwise-swap descent with random feasible starts.
SolveReport local_search_partition(const Graph& g, const PartitionSpec& spec, const LabelModel& model,
                                   std::uint64_t seed, int restarts);

/// Swap descent from a given assignment; never returns something worse.
SolveReport swap_descent(const Graph& g, const Assignment& start, const LabelModel& model);

enum class Method { Pgd, FrankWolfe };

std::string to_string(Method method);
Method parse_method(const std::string& name);

struct MinimizeOptions {
  Method method = Method::Pgd;
  std::uint64_t seed = 0;
  int restarts = 1;
  int max_iterations = 20000;
  double tolerance = 1e-13;  // stop when an iteration moves less than this (sup norm)
};

/// Minimizes the discretized limit functional over fields with prescribed
/// label masses. Restart r is seeded with seed + r.
SolveReport minimize_J(const QuadratureKernel& kernel, const LabelModel& model, const Eigen::VectorXd& masses,
                       const MinimizeOptions& options);
SolveReport minimize_J(const Graphon& w, const LabelModel& model, const Eigen::VectorXd& masses, Eigen::Index m,
                       const MinimizeOptions& options);

/// Euclidean projection onto {theta in [0,1]^m : mean(theta) = mass}.
Eigen::VectorXd project_box_mean(const Eigen::VectorXd& y, double mass);

/// Euclidean projection onto {Theta : rows in the simplex, column means = masses}.
Eigen::MatrixXd project_transport(const Eigen::MatrixXd& y, const Eigen::VectorXd& masses);

/// Minimizer of <gradient, theta> over [0,1]^m with mean `mass`: the
/// m*mass cells with the smallest gradient get 1 (ties to lower index), the
/// next one gets the fractional remainder.
Eigen::VectorXd box_mean_lmo(const Eigen::VectorXd& gradient, double mass);

struct VertexEnumeration {
  double min_J = 0;
  std::vector<Eigen::VectorXd> argmins;  // lexicographically sorted
  std::size_t vertices = 0;              // feasible (choice, subset) pairs visited
};

inline constexpr int kVertexEnumerationMaxBlocks = 20;

/// Minimum of 8 sum A_k (lambda_k - A_k) over the vertices of
/// {0 <= A <= lambda, sum A = mass}.
VertexEnumeration vertex_enumeration_blocks(const Eigen::VectorXd& lambda, double mass = 0.5);

/// The six vertices A..F of the three-block polytope at mass 1/2, in the
/// (A_1, A_2) coordinates (A_3 = 1/2 - A_1 - A_2).
std::array<Eigen::Vector2d, 6> dumbbell_vertices(const Eigen::Vector3d& lambda);
/// g = sum A_k (lambda_k - A_k) at (A_1, A_2).
double dumbbell_g(const Eigen::Vector3d& lambda, const Eigen::Vector2d& a);

struct PlateauResult {
  Eigen::VectorXd theta;  // on the possibly refined grid
  int refinement = 1;     // output cells per input cell
  bool no_plateau = false;
  double J_before = 0;
  double J_after = 0;
};

/// Replaces every theta = 1/2 plateau on R and R - 1/2 (R in [1/2, 1]) of a
/// half-graph spin field by the better of the two split fields with split
/// parameter 2/3. The grid is refined by 3 when a plateau length is not a
/// multiple of three cells.
PlateauResult sharpen_plateau(const Eigen::VectorXd& theta, double tol = 1e-6);

}  // namespace graphcut
