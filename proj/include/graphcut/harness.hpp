#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graphcut/families.hpp"
#include "graphcut/io.hpp"
#include "graphcut/solvers.hpp"

namespace graphcut {

/// One convergence experiment: a graph family with its limit, solved at a
/// list of sizes and compared against the continuum minimum on a grid.
struct ExperimentConfig {
  std::string family = "halfgraph";  // complete | blockfamily | bipartite | halfgraph
  std::vector<double> lambda;        // blockfamily
  double gamma = 0.5;                // bipartite
  std::vector<int> n_list;
  Eigen::Index grid = 48;
  Eigen::VectorXd masses = Eigen::Vector2d(0.5, 0.5);  // spin labels (+1, -1)
  Method method = Method::Pgd;
  int restarts = 20;
  std::uint64_t seed = 0;
  std::string out;      // empty: standard output
  bool timing = false;  // seconds column stays 0 unless set, keeping output reproducible

  /// ParameterError naming the offending field.
  void validate() const;
  /// Applies the fields present in `j` on top of the current values.
  void merge_json(const Json& j);

  FamilyMember member(int n) const;
  Graphon limit() const;
};

struct ConvergenceRow {
  int n = 0;
  double F_n = 0;
  bool F_exact = false;
  double J_star = 0;
  double gap = 0;
  double cutnorm = 0;
  bool cutnorm_exact = false;
  double seconds = 0;
};

inline constexpr const char* kConvergeHeader = "n,F_n,F_exact_flag,J_star,gap,cutnorm,cutnorm_exact_flag,seconds";

/// Cut norm of W_G - W: exact up to kCutNormExactMaxBlocks blocks, else a
/// heuristic lower bound (flag false).
std::pair<double, bool> graph_limit_gap(const Graph& g, const Graphon& w, std::uint64_t seed);

/// Seed for the row of size n.
std::uint64_t row_seed(std::uint64_t seed, int n);

/// Runs every row (in parallel) and writes header plus rows in n-list order.
/// On a failing row, the rows before it are written and flushed, then the
/// error propagates.
std::vector<ConvergenceRow> run_converge(const ExperimentConfig& config, std::ostream& csv);

void write_row(std::ostream& out, const ConvergenceRow& row);

}  // namespace graphcut
