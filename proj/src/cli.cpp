#include "graphcut/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "graphcut/cut_norm.hpp"
#include "graphcut/errors.hpp"
#include "graphcut/families.hpp"
#include "graphcut/functionals.hpp"
#include "graphcut/harness.hpp"
#include "graphcut/homomorphism.hpp"
#include "graphcut/io.hpp"
#include "graphcut/solvers.hpp"

namespace graphcut {

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw ParameterError("cannot write '" + g.out + "'");
  file << text;
}

struct FamilyArgs {
  std::string family;
  int n = 0;
  std::vector<double> lambda;
  double gamma = 0.5;
  double c = 1.0;
  int checker = 1;
  std::string graphon_file;
};

void add_family_options(CLI::App* sub, FamilyArgs& a, bool with_n) {
  sub->add_option("--family", a.family, "complete | blockfamily | bipartite | halfgraph | checkerboard | constant");
  if (with_n) sub->add_option("--n", a.n, "number of nodes");
  sub->add_option("--lambda", a.lambda, "block widths for blockfamily, comma separated")->delimiter(',');
  sub->add_option("--gamma", a.gamma, "group-1 fraction for bipartite");
  sub->add_option("--c", a.c, "value of the constant graphon");
  sub->add_option("--checker", a.checker, "checkerboard index n (2n blocks)");
}

AnalyticGraphon family_limit(const FamilyArgs& a) {
  if (a.family == "complete") return AnalyticGraphon::constant(1.0);
  if (a.family == "constant") return AnalyticGraphon::constant(a.c);
  if (a.family == "blockfamily") return AnalyticGraphon::block_family(a.lambda);
  if (a.family == "bipartite") return AnalyticGraphon::bipartite(a.gamma);
  if (a.family == "halfgraph") return AnalyticGraphon::halfgraph();
  if (a.family == "checkerboard") return AnalyticGraphon::checkerboard(a.checker);
  throw ParameterError("unknown family '" + a.family + "'");
}

// A file holding either a graph ({"n", "edges"}) or a graphon.
Graphon load_kernel(const std::string& path) {
  const Json j = read_json_file(path);
  if (j.is_object() && j.contains("edges")) return from_graph(graph_from_json(j));
  return graphon_from_json(j);
}

Graphon kernel_source(const std::string& file, const FamilyArgs& family) {
  if (!file.empty()) return load_kernel(file);
  if (!family.family.empty()) return family_limit(family);
  throw ParameterError("a graphon file or --family is required");
}

std::optional<StepGraphon<>> as_step(const Graphon& w) {
  if (const auto* s = std::get_if<StepGraphon<>>(&w)) return *s;
  if (const auto& a = std::get<AnalyticGraphon>(w); a.is_step()) return a.to_step();
  return std::nullopt;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd parse_masses(const std::vector<double>& masses, int labels) {
  if (masses.empty()) return Eigen::VectorXd::Constant(labels, 1.0 / labels);
  return Eigen::Map<const Eigen::VectorXd>(masses.data(), static_cast<Eigen::Index>(masses.size()));
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Graph cut functionals, graph limits and their minimizers"};
  app.name("graphcut");
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--seed", globals.seed, "random seed (default 0)");
  app.add_option("--out", globals.out, "output file (default standard output)");
  app.add_option("--format", globals.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  // gen
  FamilyArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate a family member or a W-random graph");
  add_family_options(gen, gen_args, true);
  gen->add_option("--graphon", gen_args.graphon_file, "sample a W-random graph from this graphon file");

  // graphon
  FamilyArgs graphon_args;
  std::string graphon_graph;
  auto* graphon = app.add_subcommand("graphon", "write a limit graphon or the step graphon of a graph");
  add_family_options(graphon, graphon_args, false);
  graphon->add_option("--graph", graphon_graph, "graph file whose step graphon W_G is written");

  // cutnorm
  std::string cut_a, cut_b, cut_mode = "exact";
  int cut_restarts = 32;
  Eigen::Index cut_grid = 16;
  auto* cutnorm = app.add_subcommand("cutnorm", "cut norm of a graphon or of the difference of two");
  cutnorm->add_option("--a", cut_a, "graph or graphon file")->required();
  cutnorm->add_option("--b", cut_b, "graph or graphon file subtracted from --a");
  cutnorm->add_option("--mode", cut_mode, "exact | heuristic")->check(CLI::IsMember({"exact", "heuristic"}));
  cutnorm->add_option("--restarts", cut_restarts, "heuristic restarts");
  cutnorm->add_option("--grid", cut_grid, "cell grid used when a kernel is not a step function");

  // homdensity
  std::string motif = "edge", hom_graph, hom_graphon;
  auto* hom = app.add_subcommand("homdensity", "homomorphism density t(F, G) or t(F, W)");
  hom->add_option("--motif", motif, "edge | path3 | triangle | cycle4");
  hom->add_option("--graph", hom_graph, "graph file (exact rational result)");
  hom->add_option("--graphon", hom_graphon, "graphon file");

  // solve-discrete
  std::string sd_graph, sd_method = "auto";
  std::vector<double> sd_masses;
  int sd_restarts = 8;
  auto* sd = app.add_subcommand("solve-discrete", "minimum cut partition of a graph (spin labels)");
  sd->add_option("--graph", sd_graph, "graph file")->required();
  sd->add_option("--method", sd_method, "auto | brute | local")->check(CLI::IsMember({"auto", "brute", "local"}));
  sd->add_option("--masses", sd_masses, "label masses (+1, -1), default 0.5,0.5")->delimiter(',');
  sd->add_option("--restarts", sd_restarts, "local search restarts");

  // solve-limit
  FamilyArgs sl_args;
  std::string sl_method = "pgd";
  std::vector<double> sl_masses;
  Eigen::Index sl_grid = 48;
  int sl_restarts = 20, sl_iterations = 20000;
  auto* sl = app.add_subcommand("solve-limit", "minimize the limit functional J (spin labels)");
  add_family_options(sl, sl_args, false);
  sl->add_option("--graphon", sl_args.graphon_file, "graphon or graph file");
  sl->add_option("--grid", sl_grid, "number of cells m");
  sl->add_option("--masses", sl_masses, "label masses (+1, -1), default 0.5,0.5")->delimiter(',');
  sl->add_option("--method", sl_method, "pgd | frank_wolfe")->check(CLI::IsMember({"pgd", "frank_wolfe"}));
  sl->add_option("--restarts", sl_restarts, "independent restarts");
  sl->add_option("--iterations", sl_iterations, "iteration cap per restart");

  // kkt
  FamilyArgs kkt_args;
  std::string kkt_theta;
  double kkt_tau = kInteriorTolerance;
  auto* kkt = app.add_subcommand("kkt", "stationarity residual of a two-label field");
  add_family_options(kkt, kkt_args, false);
  kkt->add_option("--graphon", kkt_args.graphon_file, "graphon or graph file");
  kkt->add_option("--theta", kkt_theta, "theta CSV (cell,theta_1,theta_2)")->required();
  kkt->add_option("--tau", kkt_tau, "interior threshold");

  // converge
  ExperimentConfig config;
  std::string config_file, cv_method;
  std::vector<int> cv_n;
  std::vector<double> cv_lambda, cv_masses;
  double cv_gamma = 0.5;
  Eigen::Index cv_grid = 48;
  int cv_restarts = 20;
  std::string cv_family;
  bool cv_timing = false;
  auto* cv = app.add_subcommand("converge", "discrete minima against the continuum minimum along n");
  cv->add_option("--config", config_file, "JSON config; flags override its fields");
  auto* o_family = cv->add_option("--family", cv_family, "complete | blockfamily | bipartite | halfgraph");
  auto* o_n = cv->add_option("--n", cv_n, "even sizes, comma separated")->delimiter(',');
  auto* o_lambda = cv->add_option("--lambda", cv_lambda, "block widths for blockfamily")->delimiter(',');
  auto* o_gamma = cv->add_option("--gamma", cv_gamma, "group-1 fraction for bipartite");
  auto* o_grid = cv->add_option("--grid", cv_grid, "cells for the continuum problem");
  auto* o_masses = cv->add_option("--masses", cv_masses, "label masses (+1, -1)")->delimiter(',');
  auto* o_method = cv->add_option("--method", cv_method, "pgd | frank_wolfe");
  auto* o_restarts = cv->add_option("--restarts", cv_restarts, "restarts for heuristics");
  auto* o_timing = cv->add_flag("--timing", cv_timing, "fill the seconds column with wall time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "graphcut: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    const bool csv = globals.format == "csv";
    if (gen->parsed()) {
      Graph g;
      if (!gen_args.graphon_file.empty())
        g = w_random(load_kernel(gen_args.graphon_file), gen_args.n, globals.seed);
      else if (gen_args.family == "complete")
        g = complete(gen_args.n).graph;
      else if (gen_args.family == "blockfamily")
        g = block_family(gen_args.lambda, gen_args.n).graph;
      else if (gen_args.family == "bipartite")
        g = bipartite(gen_args.gamma, gen_args.n).graph;
      else if (gen_args.family == "halfgraph")
        g = halfgraph(gen_args.n).graph;
      else
        throw ParameterError("gen: --family complete|blockfamily|bipartite|halfgraph or --graphon is required");
      if (csv) {
        std::ostringstream text;
        text << "i,j\n";
        for (const auto& [i, j] : g.edges()) text << i + 1 << ',' << j + 1 << '\n';
        emit(globals, text.str());
      } else {
        emit(globals, dump_json(graph_to_json(g)));
      }
    } else if (graphon->parsed()) {
      const Graphon w = graphon_graph.empty() ? Graphon(family_limit(graphon_args))
                                              : Graphon(from_graph(graph_from_json(read_json_file(graphon_graph))));
      emit(globals, dump_json(graphon_to_json(w)));
    } else if (cutnorm->parsed()) {
      const Graphon a = load_kernel(cut_a);
      std::optional<Graphon> b;
      if (!cut_b.empty()) b = load_kernel(cut_b);
      StepGraphon<> diff;
      bool projected = false;
      const auto sa = as_step(a);
      const auto sb = b ? as_step(*b) : std::optional<StepGraphon<>>();
      if (sa && (!b || sb)) {
        diff = b ? *sa - *sb : *sa;
      } else {
        // non-step kernels enter through their exact cell averages
        Eigen::MatrixXd d = QuadratureKernel(a, cut_grid).averages();
        if (b) d -= QuadratureKernel(*b, cut_grid).averages();
        diff = StepGraphon<>::uniform(d);
        projected = true;
      }
      CutNormOptions options;
      options.mode = cut_mode == "exact" ? CutNormOptions::Mode::Exact : CutNormOptions::Mode::Heuristic;
      options.restarts = cut_restarts;
      options.seed = globals.seed;
      const auto r = cut_norm(diff, options);
      if (csv) {
        emit(globals, "value,exact,projected\n" + format_double(r.value) + ',' + (r.exact ? "1" : "0") + ',' +
                          (projected ? "1" : "0") + '\n');
      } else {
        Json j;
        j["value"] = r.value;
        j["exact"] = r.exact;
        j["projected"] = projected;
        j["boundaries"] = vector_json(diff.boundaries());
        j["s"] = vector_json(r.s);
        j["t"] = vector_json(r.t);
        emit(globals, dump_json(j));
      }
    } else if (hom->parsed()) {
      const Motif f = Motif::named(motif);
      Json j;
      j["motif"] = motif;
      if (!hom_graph.empty()) {
        const Rational t = hom_density(f, graph_from_json(read_json_file(hom_graph)));
        j["value"] = t.value();
        j["num"] = t.num;
        j["den"] = t.den;
      } else if (!hom_graphon.empty()) {
        const auto w = as_step(load_kernel(hom_graphon));
        if (!w) throw ParameterError("homdensity: the graphon must be a step function");
        j["value"] = hom_density(f, *w);
      } else {
        throw ParameterError("homdensity: --graph or --graphon is required");
      }
      if (csv)
        emit(globals, "motif,value\n" + motif + ',' + format_double(j["value"].get<double>()) + '\n');
      else
        emit(globals, dump_json(j));
    } else if (sd->parsed()) {
      const Graph g = graph_from_json(read_json_file(sd_graph));
      const LabelModel spin = LabelModel::spin();
      const Eigen::VectorXd masses = parse_masses(sd_masses, 2);
      const bool balanced = masses.size() == 2 && masses(0) == 0.5 && masses(1) == 0.5;
      const bool brute =
          sd_method == "brute" || (sd_method == "auto" && balanced && g.size() <= kBruteBisectionMaxNodes);
      if (brute && !balanced) throw ParameterError("solve-discrete: brute force needs masses 0.5,0.5");
      const SolveReport report = brute ? brute_bisection(g)
                                       : local_search_partition(g, PartitionSpec::from_masses(masses, g.size()),
                                                                spin, globals.seed, sd_restarts);
      if (csv) {
        std::ostringstream text;
        text << "node,label\n";
        for (std::size_t i = 0; i < report.labels.size(); ++i)
          text << i + 1 << ',' << format_double(report.labels[i]) << '\n';
        emit(globals, text.str());
      } else {
        emit(globals, dump_json(report_to_json(report)));
      }
    } else if (sl->parsed()) {
      const Graphon w = kernel_source(sl_args.graphon_file, sl_args);
      MinimizeOptions options;
      options.method = parse_method(sl_method);
      options.seed = globals.seed;
      options.restarts = sl_restarts;
      options.max_iterations = sl_iterations;
      const SolveReport report = minimize_J(w, LabelModel::spin(), parse_masses(sl_masses, 2), sl_grid, options);
      if (csv) {
        std::ostringstream text;
        write_theta_csv(text, *report.theta);
        emit(globals, text.str());
      } else {
        emit(globals, dump_json(report_to_json(report)));
      }
    } else if (kkt->parsed()) {
      const Graphon w = kernel_source(kkt_args.graphon_file, kkt_args);
      const ThetaField<> theta = read_theta_file(kkt_theta);
      const KktReport r = kkt_residual(QuadratureKernel(w, theta.cells()), theta, kkt_tau);
      if (csv) {
        emit(globals, "residual,multiplier,interior_cells,vacuous\n" + format_double(r.residual) + ',' +
                          format_double(r.multiplier) + ',' + std::to_string(r.interior_cells) + ',' +
                          (r.vacuous() ? "1" : "0") + '\n');
      } else {
        Json j;
        j["residual"] = r.residual;
        j["multiplier"] = r.multiplier;
        j["interior_cells"] = r.interior_cells;
        j["vacuous"] = r.vacuous();
        emit(globals, dump_json(j));
      }
    } else if (cv->parsed()) {
      if (!config_file.empty()) config.merge_json(read_json_file(config_file));
      if (o_family->count() > 0) config.family = cv_family;
      if (o_n->count() > 0) config.n_list = cv_n;
      if (o_lambda->count() > 0) config.lambda = cv_lambda;
      if (o_gamma->count() > 0) config.gamma = cv_gamma;
      if (o_grid->count() > 0) config.grid = cv_grid;
      if (o_masses->count() > 0) config.masses = parse_masses(cv_masses, 2);
      if (o_method->count() > 0) config.method = parse_method(cv_method);
      if (o_restarts->count() > 0) config.restarts = cv_restarts;
      if (o_timing->count() > 0) config.timing = cv_timing;
      if (app.get_option("--seed")->count() > 0 || config_file.empty()) config.seed = globals.seed;
      if (!globals.out.empty()) config.out = globals.out;
      std::ostringstream text;
      try {
        run_converge(config, text);
      } catch (...) {
        // rows finished before the failure are kept
        Globals target = globals;
        target.out = config.out;
        emit(target, text.str());
        throw;
      }
      Globals target = globals;
      target.out = config.out;
      emit(target, text.str());
    }
  } catch (const CapacityError& e) {
    std::cerr << "graphcut: capacity: " << e.what() << '\n';
    return 3;
  } catch (const InfeasibleError& e) {
    std::cerr << "graphcut: infeasible: " << e.what() << '\n';
    return 4;
  } catch (const Error& e) {
    std::cerr << "graphcut: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "graphcut: internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace graphcut
