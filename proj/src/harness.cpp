#include "graphcut/harness.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <ostream>

#include "graphcut/cut_norm.hpp"
#include "graphcut/errors.hpp"
#include "graphcut/functionals.hpp"
#include "graphcut/parallel.hpp"

namespace graphcut {

void ExperimentConfig::validate() const {
  auto bad = [](const std::string& field, const std::string& why) {
    throw ParameterError("config field '" + field + "': " + why);
  };
  if (family != "complete" && family != "blockfamily" && family != "bipartite" && family != "halfgraph")
    bad("family", "unknown family '" + family + "'");
  if (family == "blockfamily" && lambda.empty()) bad("lambda", "required for blockfamily");
  if (family == "bipartite" && !(gamma > 0.0 && gamma < 1.0)) bad("gamma", "must lie in (0,1)");
  if (n_list.empty()) bad("n", "at least one size is required");
  for (int n : n_list)
    if (n <= 0 || n % 2 != 0) bad("n", "sizes must be positive and even, got " + std::to_string(n));
  if (grid <= 0) bad("grid", "must be positive");
  if (family == "halfgraph" && grid % 2 != 0) bad("grid", "must be even for the half graph");
  if (masses.size() != 2) bad("masses", "two masses (+1, -1) are required");
  if ((masses.array() < 0.0).any() || std::abs(masses.sum() - 1.0) > 1e-12) bad("masses", "must sum to 1");
  for (Eigen::Index k = 0; k < masses.size(); ++k) {
    const double units = masses(k) * static_cast<double>(grid);
    if (std::abs(units - std::round(units)) > 1e-9) bad("masses", "denominators must divide the grid");
  }
  if (restarts <= 0) bad("restarts", "must be positive");
}

void ExperimentConfig::merge_json(const Json& j) {
  if (!j.is_object()) throw ParameterError("config: top level must be an object");
  auto get = [&](const char* key, auto& target) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(target);
    } catch (const Json::exception& e) {
      throw ParameterError(std::string("config field '") + key + "': " + e.what());
    }
  };
  get("family", family);
  get("lambda", lambda);
  get("gamma", gamma);
  get("n", n_list);
  long g = grid;
  get("grid", g);
  grid = g;
  if (j.contains("masses")) {
    std::vector<double> m;
    get("masses", m);
    masses = Eigen::Map<Eigen::VectorXd>(m.data(), static_cast<Eigen::Index>(m.size()));
  }
  if (j.contains("method")) {
    std::string name;
    get("method", name);
    method = parse_method(name);
  }
  get("restarts", restarts);
  get("seed", seed);
  get("out", out);
  get("timing", timing);
}

FamilyMember ExperimentConfig::member(int n) const {
  if (family == "complete") return complete(n);
  if (family == "blockfamily") return block_family(lambda, n);
  if (family == "bipartite") return bipartite(gamma, n);
  return halfgraph(n);
}

Graphon ExperimentConfig::limit() const { return member(n_list.front()).limit; }

std::pair<double, bool> graph_limit_gap(const Graph& g, const Graphon& w, std::uint64_t seed) {
  const StepGraphon<> wg = from_graph(g);
  StepGraphon<> diff;
  if (const auto* s = std::get_if<StepGraphon<>>(&w)) {
    diff = wg - *s;
  } else if (const auto& a = std::get<AnalyticGraphon>(w); a.is_step()) {
    diff = wg - a.to_step();
  } else {
    // Half graph: on the n-grid W_G - W is sign-definite, so its cut norm is
    // |integral| and equals the cut norm of the cell averages.
    const QuadratureKernel kernel(w, g.size());
    diff = StepGraphon<>::uniform(wg.values() - kernel.averages());
  }
  // a sign-definite difference attains its cut norm on the full square
  if ((diff.values().array() >= 0.0).all() || (diff.values().array() <= 0.0).all())
    return {std::abs(diff.integral()), true};
  if (diff.blocks() <= kCutNormExactMaxBlocks) return {cut_norm_exact(diff).value, true};
  return {cut_norm_heuristic(diff, 32, seed).value, false};
}

std::uint64_t row_seed(std::uint64_t seed, int n) {
  SplitMix64 mix(seed ^ (static_cast<std::uint64_t>(n) * 0x9E3779B97F4A7C15ULL));
  return mix.next();
}

void write_row(std::ostream& out, const ConvergenceRow& row) {
  out << row.n << ',' << format_double(row.F_n) << ',' << (row.F_exact ? 1 : 0) << ',' << format_double(row.J_star)
      << ',' << format_double(row.gap) << ',' << format_double(row.cutnorm) << ',' << (row.cutnorm_exact ? 1 : 0)
      << ',' << format_double(row.seconds) << '\n';
}

std::vector<ConvergenceRow> run_converge(const ExperimentConfig& config, std::ostream& csv) {
  config.validate();
  const Graphon limit = config.limit();
  const LabelModel spin = LabelModel::spin();

  MinimizeOptions options;
  options.method = config.method;
  options.seed = config.seed;
  options.restarts = config.restarts;
  const double j_star = minimize_J(limit, spin, config.masses, config.grid, options).value;

  const std::size_t count = config.n_list.size();
  std::vector<ConvergenceRow> rows(count);
  std::vector<std::exception_ptr> failures(count);
  parallel_for(count, [&](std::size_t r) {
    try {
      const auto start = std::chrono::steady_clock::now();
      const int n = config.n_list[r];
      const std::uint64_t seed = row_seed(config.seed, n);
      const FamilyMember member = config.member(n);
      ConvergenceRow row;
      row.n = n;
      const bool balanced = config.masses(0) == 0.5;
      if (balanced && n <= kBruteBisectionMaxNodes) {
        row.F_n = brute_bisection(member.graph).value;
        row.F_exact = true;
      } else {
        const PartitionSpec spec = PartitionSpec::from_masses(config.masses, n);
        row.F_n = local_search_partition(member.graph, spec, spin, seed, config.restarts).value;
      }
      row.J_star = j_star;
      row.gap = std::abs(row.F_n - j_star);
      std::tie(row.cutnorm, row.cutnorm_exact) = graph_limit_gap(member.graph, member.limit, seed);
      if (config.timing)
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      rows[r] = row;
    } catch (...) {
      failures[r] = std::current_exception();
    }
  });

  csv << kConvergeHeader << '\n';
  for (std::size_t r = 0; r < count; ++r) {
    if (failures[r]) {
      csv.flush();
      rows.resize(r);
      std::rethrow_exception(failures[r]);
    }
    write_row(csv, rows[r]);
  }
  csv.flush();
  return rows;
}

}  // namespace graphcut
