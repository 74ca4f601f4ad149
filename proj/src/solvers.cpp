#include "graphcut/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "graphcut/errors.hpp"
#include "graphcut/parallel.hpp"
#include "graphcut/random.hpp"
#include "graphcut/transport.hpp"

namespace graphcut {

namespace {

// Lexicographic order on the row-major entries.
bool lex_less(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      if (a(i, k) != b(i, k)) return a(i, k) < b(i, k);
  return false;
}

std::vector<double> label_values(const Assignment& u, const LabelModel& model) {
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = model.labels()[static_cast<std::size_t>(u[i])];
  return out;
}

}  // namespace

SolveReport brute_bisection(const Graph& g) {
  const int n = g.size();
  if (n <= 0 || n % 2 != 0) throw ParameterError("brute_bisection: n must be positive and even");
  if (n > kBruteBisectionMaxNodes)
    throw CapacityError("brute_bisection: n = " + std::to_string(n) + " exceeds " +
                        std::to_string(kBruteBisectionMaxNodes));

  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (const auto& [i, j] : g.edges()) {
    adj[static_cast<std::size_t>(i)] |= 1U << j;
    adj[static_cast<std::size_t>(j)] |= 1U << i;
  }
  const std::uint32_t full = n == 32 ? ~0U : (1U << n) - 1U;

  // S always holds node 0; the other n/2 - 1 members range over subsets of
  // 1..n-1 in increasing bit-pattern order (Gosper's hack).
  const int rest = n / 2 - 1;
  std::uint32_t best_set = 0;
  int best_cut = std::numeric_limits<int>::max();
  long visited = 0;
  std::uint32_t mask = rest == 0 ? 0U : (1U << rest) - 1U;
  const std::uint32_t stop = 1U << (n - 1);
  while (true) {
    const std::uint32_t s = (mask << 1) | 1U;
    const std::uint32_t outside = full & ~s;
    int cut = 0;
    for (std::uint32_t bits = s; bits != 0; bits &= bits - 1)
      cut += std::popcount(adj[static_cast<std::size_t>(std::countr_zero(bits))] & outside);
    ++visited;
    if (cut < best_cut) {
      best_cut = cut;
      best_set = s;
    } else if (cut == best_cut) {
      // the set owning the lowest differing node is lexicographically smaller
      const std::uint32_t diff = s ^ best_set;
      if ((s & (diff & (~diff + 1U))) != 0) best_set = s;
    }
    if (mask == 0) break;
    const std::uint32_t low = mask & (~mask + 1U);
    const std::uint32_t ripple = mask + low;
    mask = (((ripple ^ mask) >> 2) / low) | ripple;
    if (mask >= stop) break;
  }

  const LabelModel spin = LabelModel::spin();
  Assignment u(static_cast<std::size_t>(n), 1);
  for (int i = 0; i < n; ++i)
    if ((best_set >> i) & 1U) u[static_cast<std::size_t>(i)] = 0;
  SolveReport out;
  out.value = discrete_F(g, u, spin);
  out.labels = label_values(u, spin);
  out.assignment = std::move(u);
  out.method = "brute";
  out.restarts = 1;
  out.iterations = visited;
  return out;
}

namespace {

struct SwapState {
  const Graph& g;
  const LabelModel& model;
  Assignment u;
  Eigen::MatrixXi counts;  // counts(i, k) = neighbours of i with label k

  SwapState(const Graph& graph, const LabelModel& m, Assignment start)
      : g(graph), model(m), u(std::move(start)), counts(Eigen::MatrixXi::Zero(graph.size(), m.size())) {
    for (const auto& [i, j] : g.edges()) {
      ++counts(i, u[static_cast<std::size_t>(j)]);
      ++counts(j, u[static_cast<std::size_t>(i)]);
    }
  }

  // n^2 times the change of discrete_F when i and j exchange labels.
  double delta(int i, int j) const {
    const int a = u[static_cast<std::size_t>(i)], b = u[static_cast<std::size_t>(j)];
    double d = 0.0;
    for (int k = 0; k < model.size(); ++k)
      d += counts(i, k) * (model.f(b, k) - model.f(a, k)) + counts(j, k) * (model.f(a, k) - model.f(b, k));
    // the edge ij itself keeps its pair of labels
    if (g.has_edge(i, j)) d -= model.f(b, b) - model.f(a, b) + model.f(a, a) - model.f(b, a);
    return 2.0 * d;
  }

  void swap(int i, int j) {
    const int a = u[static_cast<std::size_t>(i)], b = u[static_cast<std::size_t>(j)];
    for (int v : g.neighbors(i)) {
      --counts(v, a);
      ++counts(v, b);
    }
    for (int v : g.neighbors(j)) {
      --counts(v, b);
      ++counts(v, a);
    }
    u[static_cast<std::size_t>(i)] = b;
    u[static_cast<std::size_t>(j)] = a;
  }
};

void validate_assignment(const Graph& g, const Assignment& u, const LabelModel& model) {
  if (static_cast<int>(u.size()) != g.size()) throw ParameterError("swap descent: one label per node required");
  for (int l : u)
    if (l < 0 || l >= model.size()) throw ParameterError("swap descent: label index out of range");
}

}  // namespace

SolveReport swap_descent(const Graph& g, const Assignment& start, const LabelModel& model) {
  validate_assignment(g, start, model);
  SwapState state(g, model, start);
  const int n = g.size();
  long swaps = 0;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (state.u[static_cast<std::size_t>(i)] == state.u[static_cast<std::size_t>(j)]) continue;
        if (state.delta(i, j) < -1e-12) {
          state.swap(i, j);
          ++swaps;
          improved = true;
        }
      }
  }
  SolveReport out;
  out.value = discrete_F(g, state.u, model);
  out.labels = label_values(state.u, model);
  out.assignment = std::move(state.u);
  out.method = "swap";
  out.restarts = 1;
  out.iterations = swaps;
  return out;
}

SolveReport local_search_partition(const Graph& g, const PartitionSpec& spec, const LabelModel& model,
                                   std::uint64_t seed, int restarts) {
  if (restarts <= 0) throw ParameterError("local_search_partition: restarts must be positive");
  if (static_cast<int>(spec.sizes.size()) != model.size())
    throw ParameterError("local_search_partition: one size per label required");
  for (int s : spec.sizes)
    if (s < 0) throw ParameterError("local_search_partition: negative label size");
  if (spec.total() != g.size()) throw ParameterError("local_search_partition: label sizes must sum to n");

  std::vector<SolveReport> runs(static_cast<std::size_t>(restarts));
  parallel_for(runs.size(), [&](std::size_t r) {
    SplitMix64 rng(seed + r);
    const std::vector<int> order = rng.permutation(g.size());
    Assignment start(static_cast<std::size_t>(g.size()));
    std::size_t pos = 0;
    for (int k = 0; k < model.size(); ++k)
      for (int c = 0; c < spec.sizes[static_cast<std::size_t>(k)]; ++c)
        start[static_cast<std::size_t>(order[pos++])] = k;
    runs[r] = swap_descent(g, start, model);
  });

  std::size_t best = 0;
  long total_swaps = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    total_swaps += runs[r].iterations;
    if (runs[r].value < runs[best].value ||
        (runs[r].value == runs[best].value && *runs[r].assignment < *runs[best].assignment))
      best = r;
  }
  SolveReport out = std::move(runs[best]);
  out.method = "local_search";
  out.seed = seed;
  out.restarts = restarts;
  out.iterations = total_swaps;
  return out;
}

std::string to_string(Method method) { return method == Method::Pgd ? "pgd" : "frank_wolfe"; }

Method parse_method(const std::string& name) {
  if (name == "pgd") return Method::Pgd;
  if (name == "frank_wolfe" || name == "fw") return Method::FrankWolfe;
  throw ParameterError("unknown method '" + name + "' (expected pgd or frank_wolfe)");
}

Eigen::VectorXd project_box_mean(const Eigen::VectorXd& y, double mass) {
  const Eigen::Index m = y.size();
  if (m == 0) throw ParameterError("project_box_mean: empty vector");
  if (!(mass >= 0.0 && mass <= 1.0)) throw InfeasibleError("project_box_mean: mass must lie in [0,1]");
  const double target = mass * static_cast<double>(m);
  auto clipped_sum = [&](double tau) { return (y.array() - tau).cwiseMax(0.0).cwiseMin(1.0).sum(); };

  // clipped_sum is non-increasing in tau: equal to m at lo and 0 at hi
  double lo = y.minCoeff() - 1.0, hi = y.maxCoeff();
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (clipped_sum(mid) > target ? lo : hi) = mid;
  }
  double tau = 0.5 * (lo + hi);

  // exact shift for the free set identified by the bisection
  double free_sum = 0.0, upper = 0.0;
  int free_count = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double v = y(i) - tau;
    if (v >= 1.0)
      upper += 1.0;
    else if (v > 0.0) {
      free_sum += y(i);
      ++free_count;
    }
  }
  if (free_count > 0) {
    const double exact = (free_sum - (target - upper)) / free_count;
    bool consistent = true;
    for (Eigen::Index i = 0; i < m && consistent; ++i) {
      const double before = y(i) - tau, after = y(i) - exact;
      const bool was_free = before > 0.0 && before < 1.0;
      if (was_free && (after < -1e-12 || after > 1.0 + 1e-12)) consistent = false;
      if (!was_free && after > 1e-12 && after < 1.0 - 1e-12) consistent = false;
    }
    if (consistent) tau = exact;
  }
  return (y.array() - tau).cwiseMax(0.0).cwiseMin(1.0);
}

namespace {

Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
  Eigen::VectorXd sorted = v;
  std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<>());
  double cumulative = 0.0, tau = 0.0;
  for (Eigen::Index k = 0; k < sorted.size(); ++k) {
    cumulative += sorted(k);
    const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted(k) - t > 0.0) tau = t;
  }
  return (v.array() - tau).cwiseMax(0.0);
}

// Solves the projection exactly for the support pattern of `approx`
// (entries above 1e-10); returns false if the KKT conditions fail.
bool polish_transport(const Eigen::MatrixXd& y, const Eigen::VectorXd& columns, const Eigen::MatrixXd& approx,
                      Eigen::MatrixXd& out) {
  const Eigen::Index m = y.rows(), labels = y.cols();
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(labels, labels);
  Eigen::VectorXd rhs = -columns;
  std::vector<std::vector<Eigen::Index>> support(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    auto& s = support[static_cast<std::size_t>(i)];
    for (Eigen::Index k = 0; k < labels; ++k)
      if (approx(i, k) > 1e-10) s.push_back(k);
    if (s.empty()) return false;
    const double size = static_cast<double>(s.size());
    double y_sum = 0.0;
    for (Eigen::Index k : s) y_sum += y(i, k);
    for (Eigen::Index k : s) {
      system(k, k) += 1.0;
      for (Eigen::Index l : s) system(k, l) -= 1.0 / size;
      rhs(k) += y(i, k) - (y_sum - 1.0) / size;
    }
  }
  const Eigen::VectorXd mu = system.completeOrthogonalDecomposition().solve(rhs);
  out = Eigen::MatrixXd::Zero(m, labels);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& s = support[static_cast<std::size_t>(i)];
    double shifted = 0.0;
    for (Eigen::Index k : s) shifted += y(i, k) - mu(k);
    const double nu = (shifted - 1.0) / static_cast<double>(s.size());
    for (Eigen::Index k = 0; k < labels; ++k) {
      const double v = y(i, k) - mu(k) - nu;
      const bool on = std::find(s.begin(), s.end(), k) != s.end();
      if (on) {
        if (v < -1e-12) return false;
        out(i, k) = std::max(v, 0.0);
      } else if (v > 1e-9) {
        return false;
      }
    }
  }
  if ((out.colwise().sum().transpose() - columns).cwiseAbs().maxCoeff() > 1e-11) return false;
  return (out - approx).cwiseAbs().maxCoeff() < 1e-6;
}

}  // namespace

Eigen::MatrixXd project_transport(const Eigen::MatrixXd& y, const Eigen::VectorXd& masses) {
  const Eigen::Index m = y.rows(), labels = y.cols();
  if (m == 0 || labels == 0) throw ParameterError("project_transport: empty matrix");
  if (masses.size() != labels) throw ParameterError("project_transport: one mass per label required");
  if ((masses.array() < 0.0).any() || std::abs(masses.sum() - 1.0) > 1e-12)
    throw InfeasibleError("project_transport: masses must lie in the simplex");
  const Eigen::VectorXd columns = masses * static_cast<double>(m);

  // Dykstra between the row simplices and the affine column-sum set
  Eigen::MatrixXd x = y, p = Eigen::MatrixXd::Zero(m, labels), q = Eigen::MatrixXd::Zero(m, labels);
  Eigen::MatrixXd rows(m, labels);
  for (int it = 0; it < 20000; ++it) {
    const Eigen::MatrixXd shifted = x + p;
    for (Eigen::Index i = 0; i < m; ++i) rows.row(i) = project_simplex(shifted.row(i).transpose()).transpose();
    p = shifted - rows;
    Eigen::MatrixXd next = rows + q;
    const Eigen::VectorXd deficit = columns - next.colwise().sum().transpose();
    next.rowwise() += deficit.transpose() / static_cast<double>(m);
    q = rows + q - next;
    const double change = (next - x).cwiseAbs().maxCoeff();
    x = std::move(next);
    if (change < 1e-15 && (x - rows).cwiseAbs().maxCoeff() < 1e-14) break;
  }
  Eigen::MatrixXd polished;
  if (polish_transport(y, columns, rows, polished)) return polished;
  return rows;
}

Eigen::VectorXd box_mean_lmo(const Eigen::VectorXd& gradient, double mass) {
  const Eigen::Index m = gradient.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return gradient(a) < gradient(b); });
  const double units = mass * static_cast<double>(m);
  const auto whole = static_cast<Eigen::Index>(std::floor(units + 1e-12));
  const double fraction = std::max(0.0, units - static_cast<double>(whole));
  Eigen::VectorXd s = Eigen::VectorXd::Zero(m);
  for (Eigen::Index r = 0; r < std::min(whole, m); ++r) s(order[static_cast<std::size_t>(r)]) = 1.0;
  if (whole < m && fraction > 1e-15) s(order[static_cast<std::size_t>(whole)]) = fraction;
  return s;
}

namespace {

struct Run {
  Eigen::MatrixXd theta;  // m x N
  double value = std::numeric_limits<double>::infinity();
  long iterations = 0;
  std::vector<double> history;
};

Eigen::MatrixXd two_label(const Eigen::VectorXd& theta) {
  Eigen::MatrixXd out(theta.size(), 2);
  out.col(0) = theta;
  out.col(1) = Eigen::VectorXd::Ones(theta.size()) - theta;
  return out;
}

class Problem {
 public:
  Problem(const Eigen::MatrixXd& kernel, const LabelModel& model, const Eigen::VectorXd& masses)
      : kernel_(kernel), coupling_(model.coupling()), masses_(masses) {
    const double m = static_cast<double>(kernel.rows());
    lipschitz_ = 2.0 * coupling_.cwiseAbs().sum() * kernel.cwiseAbs().maxCoeff() / m;
  }

  Eigen::Index cells() const { return kernel_.rows(); }
  bool scalar() const { return coupling_.rows() == 2; }
  double lipschitz() const { return lipschitz_; }
  const Eigen::VectorXd& masses() const { return masses_; }

  // Two-label problems work on theta = column 0; others on the full matrix.
  double value(const Eigen::MatrixXd& x) const { return limit_J(kernel_, full(x), coupling_); }

  Eigen::MatrixXd gradient(const Eigen::MatrixXd& x) const {
    const Eigen::MatrixXd g = J_gradient(kernel_, full(x), coupling_);
    if (scalar()) return g.col(0) - g.col(1);
    return g;
  }

  Eigen::MatrixXd project(const Eigen::MatrixXd& y) const {
    if (scalar()) return project_box_mean(y.col(0), masses_(0));
    return project_transport(y, masses_);
  }

  Eigen::MatrixXd lmo(const Eigen::MatrixXd& g) const {
    if (scalar()) return box_mean_lmo(g.col(0), masses_(0));
    return transport_lmo(g, masses_ * static_cast<double>(cells()));
  }

  Eigen::MatrixXd full(const Eigen::MatrixXd& x) const { return scalar() ? two_label(x.col(0)) : x; }

 private:
  const Eigen::MatrixXd& kernel_;
  Eigen::MatrixXd coupling_;
  Eigen::VectorXd masses_;
  double lipschitz_ = 0;
};

Run run_pgd(const Problem& problem, Eigen::MatrixXd x, const MinimizeOptions& options) {
  Run run;
  double value = problem.value(x);
  run.history.push_back(value);
  if (problem.lipschitz() > 0.0) {
    double step = 1.0 / problem.lipschitz();
    for (int it = 0; it < options.max_iterations; ++it) {
      Eigen::MatrixXd next;
      double next_value = 0;
      bool accepted = false;
      // 1/L already guarantees descent; halving only guards rounding
      for (int tries = 0; tries < 40 && !accepted; ++tries) {
        next = problem.project(x - step * problem.gradient(x));
        next_value = problem.value(next);
        if (next_value <= value)
          accepted = true;
        else
          step *= 0.5;
      }
      ++run.iterations;
      if (!accepted) break;
      const double moved = (next - x).cwiseAbs().maxCoeff();
      x = std::move(next);
      value = next_value;
      run.history.push_back(value);
      if (moved <= options.tolerance) break;
    }
  }
  run.theta = std::move(x);
  run.value = value;
  return run;
}

Run run_frank_wolfe(const Problem& problem, Eigen::MatrixXd x, const MinimizeOptions& options) {
  Run run;
  run.theta = x;
  run.value = problem.value(x);
  run.history.push_back(run.value);
  auto consider = [&](const Eigen::MatrixXd& candidate) {
    const double v = problem.value(candidate);
    if (v < run.value) {
      run.value = v;
      run.theta = candidate;
    }
  };
  for (int t = 0; t < options.max_iterations; ++t) {
    const Eigen::MatrixXd g = problem.gradient(x);
    const Eigen::MatrixXd s = problem.lmo(g);
    ++run.iterations;
    consider(s);
    const double gap = g.cwiseProduct(x - s).sum();
    if (gap <= options.tolerance) {
      run.history.push_back(run.value);
      break;
    }
    x += (2.0 / (t + 2.0)) * (s - x);
    consider(x);
    run.history.push_back(run.value);
  }
  return run;
}

Eigen::MatrixXd random_start(const Problem& problem, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const Eigen::Index m = problem.cells();
  const Eigen::Index cols = problem.scalar() ? 1 : problem.masses().size();
  Eigen::MatrixXd y(m, cols);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index k = 0; k < cols; ++k) y(i, k) = rng.uniform();
  return problem.project(y);
}

}  // namespace

SolveReport minimize_J(const QuadratureKernel& kernel, const LabelModel& model, const Eigen::VectorXd& masses,
                       const MinimizeOptions& options) {
  if (options.restarts <= 0) throw ParameterError("minimize_J: restarts must be positive");
  if (options.max_iterations <= 0) throw ParameterError("minimize_J: max_iterations must be positive");
  if (masses.size() != model.size()) throw ParameterError("minimize_J: one mass per label required");
  if ((masses.array() < 0.0).any() || std::abs(masses.sum() - 1.0) > 1e-12)
    throw InfeasibleError("minimize_J: masses must lie in the simplex");

  const Problem problem(kernel.averages(), model, masses);
  std::vector<Run> runs(static_cast<std::size_t>(options.restarts));
  parallel_for(runs.size(), [&](std::size_t r) {
    Eigen::MatrixXd start = random_start(problem, options.seed + r);
    runs[r] = options.method == Method::Pgd ? run_pgd(problem, std::move(start), options)
                                            : run_frank_wolfe(problem, std::move(start), options);
  });
  std::size_t best = 0;
  long iterations = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    iterations += runs[r].iterations;
    if (runs[r].value < runs[best].value ||
        (runs[r].value == runs[best].value && lex_less(runs[r].theta, runs[best].theta)))
      best = r;
  }

  Eigen::MatrixXd weights = problem.full(runs[best].theta).cwiseMax(0.0).cwiseMin(1.0);
  SolveReport out;
  out.theta = ThetaField<>(weights);
  out.value = limit_J(kernel, *out.theta, model);
  out.method = to_string(options.method);
  out.seed = options.seed;
  out.restarts = options.restarts;
  out.iterations = iterations;
  out.history = std::move(runs[best].history);
  if (model.is_spin()) {
    out.residual = kkt_residual(kernel, Eigen::VectorXd(weights.col(0))).residual;
  } else {
    // sup-norm projected gradient, with the gradient scaled to unit cell measure
    const Eigen::MatrixXd x = problem.scalar() ? Eigen::MatrixXd(weights.col(0)) : weights;
    const double m = static_cast<double>(kernel.cells());
    out.residual = (x - problem.project(x - m * problem.gradient(x))).cwiseAbs().maxCoeff();
  }
  return out;
}

SolveReport minimize_J(const Graphon& w, const LabelModel& model, const Eigen::VectorXd& masses, Eigen::Index m,
                       const MinimizeOptions& options) {
  return minimize_J(QuadratureKernel(w, m), model, masses, options);
}

VertexEnumeration vertex_enumeration_blocks(const Eigen::VectorXd& lambda, double mass) {
  const auto n = static_cast<int>(lambda.size());
  if (n == 0) throw ParameterError("vertex enumeration: no blocks");
  if (n > kVertexEnumerationMaxBlocks)
    throw CapacityError("vertex enumeration: more than " + std::to_string(kVertexEnumerationMaxBlocks) + " blocks");
  if ((lambda.array() < 0.0).any()) throw ParameterError("vertex enumeration: negative block width");
  if (!(mass >= 0.0) || mass > lambda.sum() + 1e-12)
    throw ParameterError("vertex enumeration: mass outside [0, sum lambda]");

  constexpr double tie = 1e-12;
  VertexEnumeration out;
  out.min_J = std::numeric_limits<double>::infinity();
  Eigen::VectorXd a(n);
  for (int f = 0; f < n; ++f) {
    const std::uint32_t subsets = 1U << (n - 1);
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      // bits of mask address the indices other than f, in order
      double used = 0.0;
      for (int k = 0, bit = 0; k < n; ++k) {
        if (k == f) continue;
        a(k) = ((mask >> bit++) & 1U) ? lambda(k) : 0.0;
        used += a(k);
      }
      const double rest = mass - used;
      if (rest < -tie || rest > lambda(f) + tie) continue;
      a(f) = std::clamp(rest, 0.0, lambda(f));
      ++out.vertices;
      const double value = 8.0 * block_objective(lambda, a);
      if (value < out.min_J - tie) {
        out.min_J = value;
        out.argmins.clear();
      }
      if (value <= out.min_J + tie) {
        out.min_J = std::min(out.min_J, value);
        const bool seen = std::any_of(out.argmins.begin(), out.argmins.end(), [&](const Eigen::VectorXd& b) {
          return (b - a).cwiseAbs().maxCoeff() <= tie;
        });
        if (!seen) out.argmins.push_back(a);
      }
    }
  }
  // drop candidates that a later, strictly better vertex pushed out of the tie window
  std::erase_if(out.argmins,
                [&](const Eigen::VectorXd& b) { return 8.0 * block_objective(lambda, b) > out.min_J + tie; });
  std::sort(out.argmins.begin(), out.argmins.end(), [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return std::lexicographical_compare(x.data(), x.data() + x.size(), y.data(), y.data() + y.size());
  });
  return out;
}

std::array<Eigen::Vector2d, 6> dumbbell_vertices(const Eigen::Vector3d& lambda) {
  const double l1 = lambda(0), l2 = lambda(1), l3 = lambda(2);
  return {Eigen::Vector2d(0.5 - l3, 0.0), Eigen::Vector2d(l1, 0.0), Eigen::Vector2d(l1, 0.5 - l1),
          Eigen::Vector2d(0.5 - l2, l2),  Eigen::Vector2d(0.0, l2), Eigen::Vector2d(0.0, 0.5 - l3)};
}

double dumbbell_g(const Eigen::Vector3d& lambda, const Eigen::Vector2d& a) {
  const double a3 = 0.5 - a(0) - a(1);
  return a(0) * (lambda(0) - a(0)) + a(1) * (lambda(1) - a(1)) + a3 * (lambda(2) - a3);
}

PlateauResult sharpen_plateau(const Eigen::VectorXd& theta, double tol) {
  if (theta.size() == 0 || theta.size() % 2 != 0)
    throw ParameterError("sharpen_plateau: grid must have an even number of cells");
  auto runs_of = [&](const Eigen::VectorXd& t) {
    const Eigen::Index half = t.size() / 2;
    auto on = [&](Eigen::Index a) {
      return std::abs(t(a) - 0.5) <= tol && std::abs(t(a - half) - 0.5) <= tol;
    };
    std::vector<std::pair<Eigen::Index, Eigen::Index>> runs;  // [begin, end) in the upper half
    for (Eigen::Index a = half; a < t.size();) {
      if (!on(a)) {
        ++a;
        continue;
      }
      Eigen::Index b = a;
      while (b < t.size() && on(b)) ++b;
      runs.emplace_back(a, b);
      a = b;
    }
    return runs;
  };

  PlateauResult out;
  out.theta = theta;
  auto runs = runs_of(theta);
  const Graphon half_graph = AnalyticGraphon::halfgraph();
  if (runs.empty()) {
    out.no_plateau = true;
    out.J_before = out.J_after = spin_J(QuadratureKernel(half_graph, theta.size()).averages(), theta);
    return out;
  }
  const bool refine = std::any_of(runs.begin(), runs.end(), [](const auto& r) { return (r.second - r.first) % 3; });
  if (refine) {
    out.refinement = 3;
    out.theta.resize(theta.size() * 3);
    for (Eigen::Index a = 0; a < theta.size(); ++a) out.theta.segment(3 * a, 3).setConstant(theta(a));
    runs = runs_of(out.theta);
  }
  const QuadratureKernel kernel(half_graph, out.theta.size());
  out.J_before = spin_J(kernel.averages(), out.theta);
  double current = out.J_before;
  const Eigen::Index half = out.theta.size() / 2;
  for (const auto& [begin, end] : runs) {
    const Eigen::Index length = end - begin, third = length / 3;
    Eigen::VectorXd tilde = out.theta, bar = out.theta;
    // lower copy: first (1 - lambda) l at 0; upper copy: first lambda l at 0
    for (Eigen::Index j = 0; j < length; ++j) {
      const double lower = j < third ? 0.0 : 1.0;
      const double upper = j < 2 * third ? 0.0 : 1.0;
      tilde(begin - half + j) = lower;
      tilde(begin + j) = upper;
      bar(begin - half + j) = 1.0 - lower;
      bar(begin + j) = 1.0 - upper;
    }
    const double j_tilde = spin_J(kernel.averages(), tilde), j_bar = spin_J(kernel.averages(), bar);
    if (std::min(j_tilde, j_bar) < current) {
      out.theta = j_tilde <= j_bar ? tilde : bar;
      current = std::min(j_tilde, j_bar);
    }
  }
  out.J_after = current;
  return out;
}

}  // namespace graphcut
