#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "graphcut/cut_norm.hpp"
#include "graphcut/errors.hpp"
#include "graphcut/families.hpp"
#include "graphcut/homomorphism.hpp"
#include "support.hpp"

using namespace graphcut;
using graphcut::testing::random_graph;
using graphcut::testing::random_step;

namespace {

Graph k2() { return Graph(2, {{0, 1}}); }

}  // namespace

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), ParameterError);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), ParameterError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), ParameterError);
  const Graph g(3, {{2, 1}, {0, 1}});
  CHECK(g.edges() == std::vector<Graph::Edge>{{0, 1}, {1, 2}});
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK_THROWS_AS(Motif(6, {}), CapacityError);
  CHECK_THROWS_AS(Motif::named("star"), ParameterError);
}

TEST_CASE("from_graph") {
  const auto w = from_graph(k2());
  CHECK(w.widths().isApprox(Eigen::Vector2d(0.5, 0.5)));
  CHECK(w.values() == (Eigen::Matrix2d() << 0, 1, 1, 0).finished());

  CHECK(from_graph(Graph(3, {})).values().isZero(0.0));

  Eigen::Matrix3d path;
  path << 0, 1, 0, 1, 0, 1, 0, 1, 0;
  CHECK(from_graph(Graph(3, {{0, 1}, {1, 2}})).values() == path);
}

TEST_CASE("step graphon validation") {
  CHECK_THROWS_AS(StepGraphon<>(Eigen::Vector2d(0.5, 0.6), Eigen::Matrix2d::Zero()), ParameterError);
  CHECK_THROWS_AS(StepGraphon<>(Eigen::Vector2d(1.0, 0.0), Eigen::Matrix2d::Zero()), ParameterError);
  CHECK_THROWS_AS(StepGraphon<>(Eigen::Vector2d(0.5, 0.5), (Eigen::Matrix2d() << 0, 1, 0, 0).finished()),
                  ParameterError);
  CHECK_THROWS_AS(StepGraphon<>::w0(Eigen::Vector2d(0.5, 0.5), Eigen::Matrix2d::Constant(1.5)), ParameterError);
  // signed kernels are allowed outside the W0 constructor
  CHECK_NOTHROW(StepGraphon<>(Eigen::Vector2d(0.5, 0.5), Eigen::Matrix2d::Constant(-0.5)));
}

TEST_CASE("degree") {
  CHECK(degree(AnalyticGraphon::constant(1.0), 0.3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(degree(AnalyticGraphon::halfgraph(), 0.25) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(degree(AnalyticGraphon::halfgraph(), 0.9) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(from_graph(k2()).degree(0.25) == 0.5);
  CHECK_THROWS_AS(from_graph(k2()).degree(1.5), ParameterError);
  CHECK_THROWS_AS(AnalyticGraphon::halfgraph().degree(-0.1), ParameterError);
}

TEST_CASE("analytic kernels are symmetric and integrate exactly") {
  SplitMix64 rng(3);
  const std::vector<AnalyticGraphon> kernels = {AnalyticGraphon::constant(0.3), AnalyticGraphon::halfgraph(),
                                                AnalyticGraphon::block_family({0.45, 0.35, 0.2}),
                                                AnalyticGraphon::bipartite(0.3), AnalyticGraphon::checkerboard(2)};
  for (const auto& w : kernels) {
    for (int s = 0; s < 200; ++s) {
      const double x = rng.uniform(), y = rng.uniform();
      CHECK(w(x, y) == w(y, x));
      CHECK(w(x, y) >= 0.0);
      CHECK(w(x, y) <= 1.0);
    }
    // midpoint rule on a fine grid agrees with the closed form up to the
    // measure of cells cut by a discontinuity
    const double x0 = 0.1, x1 = 0.7, y0 = 0.25, y1 = 0.95;
    const int k = 600;
    double sum = 0.0;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        sum += w(x0 + (x1 - x0) * (i + 0.5) / k, y0 + (y1 - y0) * (j + 0.5) / k);
    sum *= (x1 - x0) * (y1 - y0) / (double(k) * k);
    CHECK(w.rect_integral(x0, x1, y0, y1) == doctest::Approx(sum).epsilon(5e-3));
  }
  // half graph: W = 1 on the two corner triangles of area 1/8 each
  CHECK(AnalyticGraphon::halfgraph().rect_integral(0, 1, 0, 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(AnalyticGraphon::halfgraph().rect_integral(0, 0.5, 0.5, 1) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(AnalyticGraphon::bipartite(0.3).rect_integral(0, 1, 0, 1) == doctest::Approx(2 * 0.3 * 0.7).epsilon(1e-15));
}

TEST_CASE("cut norm examples") {
  CHECK(cut_norm_exact(StepGraphon<>::constant(1.0)).value == 1.0);
  CHECK(cut_norm_exact(from_graph(k2())).value == doctest::Approx(0.5).epsilon(1e-15));

  const auto diff = checkerboard(1) - 0.5;
  const auto r = cut_norm_exact(diff);
  CHECK(r.value == doctest::Approx(0.125).epsilon(1e-15));
  const Eigen::VectorXd s = r.s.cwiseProduct(diff.widths()), t = r.t.cwiseProduct(diff.widths());
  CHECK(std::abs(s.dot(diff.values() * t)) == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("cut norm witness reproduces the value") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto w = random_step(1 + trial % 7, rng, -1.0, 1.0);
    const auto r = cut_norm_exact(w);
    const Eigen::VectorXd s = r.s.cwiseProduct(w.widths()), t = r.t.cwiseProduct(w.widths());
    CHECK(std::abs(std::abs(s.dot(w.values() * t)) - r.value) <= 1e-12);
  }
}

TEST_CASE("cut norm errors") {
  SplitMix64 rng(1);
  CHECK_THROWS_AS(cut_norm_exact(random_step(23, rng)), CapacityError);
  CHECK_THROWS_AS(cut_norm_heuristic(random_step(3, rng), 0, 1), ParameterError);
  CHECK_THROWS_AS(cut_norm_forms(random_step(11, rng)), CapacityError);
}

TEST_CASE("heuristic cut norm is a sound lower bound") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto w = random_step(1 + trial % 6, rng, -1.0, 1.0);
    const double exact = cut_norm_exact(w).value;
    const double heuristic = cut_norm_heuristic(w, 32, static_cast<std::uint64_t>(trial)).value;
    CHECK(heuristic <= exact + 1e-12);
    CHECK(heuristic == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("cut norm forms") {
  const auto zero = cut_norm_forms(StepGraphon<>::constant(0.0));
  CHECK(zero.rectangles == 0.0);
  CHECK(zero.complement == 0.0);
  CHECK(zero.disjoint == 0.0);
  CHECK(zero.functional == 0.0);

  const auto one = cut_norm_forms(StepGraphon<>::constant(1.0));
  CHECK(one.rectangles == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one.functional == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one.complement == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(one.disjoint == doctest::Approx(0.25).epsilon(1e-12));

  SplitMix64 seeded(7);
  const auto w = random_step(3, seeded);
  const auto f = cut_norm_forms(w);
  CHECK(std::abs(f.rectangles - f.functional) <= 1e-12);
  CHECK(std::abs(f.complement - f.disjoint) <= 1e-12);

  SplitMix64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto v = random_step(1 + trial % 6, rng);
    const auto forms = cut_norm_forms(v);
    CHECK(std::abs(forms.rectangles - forms.functional) <= 1e-12);
    CHECK(std::abs(forms.complement - forms.disjoint) <= 1e-12);
  }

  // signed kernels: T = S^c is no longer the best disjoint partner
  for (int trial = 0; trial < 30; ++trial) {
    const auto v = random_step(1 + trial % 6, rng, -1.0, 1.0);
    const auto forms = cut_norm_forms(v);
    CHECK(std::abs(forms.rectangles - forms.functional) <= 1e-12);
    CHECK(forms.disjoint >= forms.complement - 1e-12);
    CHECK(forms.rectangles >= forms.disjoint - 1e-12);
  }
  Eigen::Matrix2d signed_kernel;
  signed_kernel << 0.5, 0.125, 0.125, -1.0;
  const auto strict = cut_norm_forms(StepGraphon<>::uniform(signed_kernel));
  CHECK(std::abs(strict.disjoint - 0.0625) <= 1e-12);
  CHECK(std::abs(strict.complement - 25.0 / 512.0) <= 1e-12);
}

TEST_CASE("cut distance over block permutations") {
  SplitMix64 rng(2);
  const auto w = random_step(4, rng);
  const auto equal = StepGraphon<>::uniform(w.values());
  CHECK(cut_distance_blocks(equal, equal) == 0.0);

  Eigen::Matrix2d a, b;
  a << 1, 0, 0, 0;
  b << 0, 0, 0, 1;
  CHECK(cut_distance_blocks(StepGraphon<>::uniform(a), StepGraphon<>::uniform(b)) == 0.0);
  CHECK(cut_distance_blocks(from_graph(k2()), StepGraphon<>::uniform(Eigen::Matrix2d::Zero())) ==
        doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(cut_distance_blocks(StepGraphon<>::uniform(a), StepGraphon<>::constant(0.0)), StructuralError);
  CHECK_THROWS_AS(cut_distance_blocks(StepGraphon<>::uniform(Eigen::MatrixXd::Zero(9, 9)),
                                      StepGraphon<>::uniform(Eigen::MatrixXd::Zero(9, 9))),
                  CapacityError);
}

TEST_CASE("norm ordering") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index m = 2 + trial % 4;
    const auto u = StepGraphon<>::uniform(random_step(m, rng).values());
    const auto w = StepGraphon<>::uniform(random_step(m, rng).values());
    const auto d = u - w;
    const double norm = cut_norm_exact(d).value;
    CHECK(norm <= d.l1_norm() + 1e-12);
    CHECK(cut_distance_blocks(u, w) <= norm + 1e-12);
  }
}

TEST_CASE("complete graph cut norm gap is 1/n") {
  for (int n : {2, 4, 8, 16}) {
    const auto d = from_graph(complete(n).graph) - StepGraphon<>::constant(1.0);
    CHECK(cut_norm_exact(d).value == doctest::Approx(1.0 / n).epsilon(1e-15));
  }
}

TEST_CASE("cut norm does not depend on the worker count") {
  SplitMix64 rng(9);
  const auto w = random_step(18, rng, -1.0, 1.0);
  setenv("GRAPHCUT_THREADS", "1", 1);
  const auto one = cut_norm_exact(w);
  setenv("GRAPHCUT_THREADS", "3", 1);
  const auto three = cut_norm_exact(w);
  unsetenv("GRAPHCUT_THREADS");
  CHECK(one.value == three.value);
  CHECK(one.s == three.s);
  CHECK(one.t == three.t);
}

TEST_CASE("cut norm with float scalars") {
  const StepGraphon<float> w(Eigen::Vector2f(0.5f, 0.5f), (Eigen::Matrix2f() << 0, 1, 1, 0).finished());
  CHECK(cut_norm_exact(w).value == doctest::Approx(0.5f));
}

TEST_CASE("homomorphism density examples") {
  const Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(hom_density(Motif::edge(), Graph(4, {})) == Rational{0, 1});
  CHECK(hom_density(Motif::edge(), k3) == Rational{2, 3});
  CHECK(hom_density(Motif::triangle(), k3) == Rational{2, 9});
  CHECK(hom_density(Motif::edge(), StepGraphon<>::constant(1.0)) == 1.0);
  CHECK(hom_density(Motif::triangle(), StepGraphon<>::constant(0.3)) == doctest::Approx(0.027).epsilon(1e-14));
  CHECK(hom_density(Motif::edge(), from_graph(k3)) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(hom_density(Motif::edge(), Graph(13, {})), CapacityError);
  CHECK_THROWS_AS(hom_density(Motif::cycle4(), StepGraphon<>::uniform(Eigen::MatrixXd::Zero(60, 60))),
                  CapacityError);
}

TEST_CASE("consistency identity t(F, G) = t(F, W_G)") {
  SplitMix64 rng(31);
  const std::vector<Motif> motifs = {Motif::edge(), Motif::path3(), Motif::triangle(), Motif::cycle4()};
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_graph(2 + trial % 7, 0.5, rng);
    for (const auto& f : motifs)
      CHECK(std::abs(hom_density(f, g).value() - hom_density(f, from_graph(g))) <= 1e-12);
  }
}
