#include "graphcut/graphon.hpp"

#include <numeric>

namespace graphcut {

namespace {

// Antiderivative of clamp(t, 0, h).
double clamp_primitive(double t, double h) {
  if (t <= 0.0) return 0.0;
  if (t <= h) return 0.5 * t * t;
  return 0.5 * h * h + h * (t - h);
}

// Area of [x0,x1] x [y0,y1] intersected with {y - x >= c}. The slice length
// at x is clamp(y1 - c - x, 0, y1 - y0), integrated in closed form.
double band_area(double x0, double x1, double y0, double y1, double c) {
  const double h = y1 - y0;
  if (h <= 0.0 || x1 <= x0) return 0.0;
  return clamp_primitive(y1 - c - x0, h) - clamp_primitive(y1 - c - x1, h);
}

}  // namespace

StepGraphon<> from_graph(const Graph& g) {
  if (g.size() == 0) throw ParameterError("from_graph: empty graph");
  return StepGraphon<>::uniform(g.adjacency());
}

AnalyticGraphon::AnalyticGraphon(Kind kind, double param, std::vector<double> lambda, int checker_n)
    : kind_(kind), param_(param), lambda_(std::move(lambda)), checker_n_(checker_n) {
  switch (kind_) {
    case Kind::Constant:
      step_ = StepGraphon<>::constant(param_);
      break;
    case Kind::HalfGraph:
      break;
    case Kind::BlockFamily: {
      const auto m = static_cast<Eigen::Index>(lambda_.size());
      Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(lambda_.data(), m);
      step_ = StepGraphon<>(w, Eigen::MatrixXd::Identity(m, m));
      break;
    }
    case Kind::Bipartite: {
      Eigen::Vector2d w(param_, 1.0 - param_);
      Eigen::Matrix2d v;
      v << 0, 1, 1, 0;
      step_ = StepGraphon<>(w, v);
      break;
    }
    case Kind::Checkerboard: {
      const int m = 2 * checker_n_;
      Eigen::MatrixXd v(m, m);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) v(a, b) = (a % 2 != b % 2) ? 1.0 : 0.0;
      step_ = StepGraphon<>::uniform(v);
      break;
    }
  }
}

AnalyticGraphon AnalyticGraphon::constant(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw ParameterError("constant graphon: value must lie in [0,1]");
  return AnalyticGraphon(Kind::Constant, c, {}, 0);
}

AnalyticGraphon AnalyticGraphon::halfgraph() { return AnalyticGraphon(Kind::HalfGraph, 0.0, {}, 0); }

AnalyticGraphon AnalyticGraphon::block_family(std::vector<double> lambda) {
  if (lambda.empty()) throw ParameterError("block family: empty lambda");
  for (double l : lambda)
    if (!(l > 0.0)) throw ParameterError("block family: lambda entries must be positive");
  if (std::abs(std::accumulate(lambda.begin(), lambda.end(), 0.0) - 1.0) > 1e-12)
    throw ParameterError("block family: lambda must sum to 1");
  return AnalyticGraphon(Kind::BlockFamily, 0.0, std::move(lambda), 0);
}

AnalyticGraphon AnalyticGraphon::bipartite(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ParameterError("bipartite: gamma must lie in (0,1)");
  return AnalyticGraphon(Kind::Bipartite, gamma, {}, 0);
}

AnalyticGraphon AnalyticGraphon::checkerboard(int n) {
  if (n < 1) throw ParameterError("checkerboard: n must be positive");
  return AnalyticGraphon(Kind::Checkerboard, 0.0, {}, n);
}

std::string AnalyticGraphon::name() const {
  switch (kind_) {
    case Kind::Constant: return "constant";
    case Kind::HalfGraph: return "halfgraph";
    case Kind::BlockFamily: return "blockfamily";
    case Kind::Bipartite: return "bipartite";
    case Kind::Checkerboard: return "checkerboard";
  }
  return "unknown";
}

double AnalyticGraphon::operator()(double x, double y) const {
  if (kind_ == Kind::HalfGraph) return (y + 0.5 <= x || x + 0.5 <= y) ? 1.0 : 0.0;
  return step_(x, y);
}

double AnalyticGraphon::rect_integral(double x0, double x1, double y0, double y1) const {
  if (kind_ == Kind::HalfGraph)
    return band_area(x0, x1, y0, y1, 0.5) + band_area(y0, y1, x0, x1, 0.5);
  return step_.rect_integral(x0, x1, y0, y1);
}

double AnalyticGraphon::degree(double x) const {
  detail::check_unit(x, "degree point");
  if (kind_ == Kind::HalfGraph) return std::abs(x - 0.5);
  return step_.degree(x);
}

StepGraphon<> AnalyticGraphon::to_step() const {
  if (!is_step()) throw StructuralError("half graph kernel is not a step function");
  return step_;
}

double evaluate(const Graphon& w, double x, double y) {
  return std::visit([&](const auto& g) { return static_cast<double>(g(x, y)); }, w);
}

double rect_integral(const Graphon& w, double x0, double x1, double y0, double y1) {
  return std::visit([&](const auto& g) { return static_cast<double>(g.rect_integral(x0, x1, y0, y1)); },
                    w);
}

double degree(const Graphon& w, double x) {
  return std::visit([&](const auto& g) { return static_cast<double>(g.degree(x)); }, w);
}

bool is_w0(const Graphon& w) {
  if (const auto* s = std::get_if<StepGraphon<>>(&w)) return s->is_w0();
  return true;
}

}  // namespace graphcut
