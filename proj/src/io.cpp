#include "graphcut/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "graphcut/errors.hpp"

namespace graphcut {

std::string format_double(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

namespace {

void write_value(std::ostream& out, const Json& v, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  const char* newline = indent > 0 ? "\n" : "";
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << '{' << newline;
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out << ',' << newline;
        first = false;
        out << pad << Json(key).dump() << (indent > 0 ? ": " : ":");
        write_value(out, item, indent, depth + 1);
      }
      out << newline << close << '}';
      return;
    }
    case Json::value_t::array: {
      // arrays of scalars stay on one line
      const bool flat = std::none_of(v.begin(), v.end(), [](const Json& e) { return e.is_structured(); });
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << '[';
      if (!flat) out << newline;
      bool first = true;
      for (const auto& item : v) {
        if (!first) out << (flat ? ", " : ",") << (flat ? "" : newline);
        first = false;
        if (!flat) out << pad;
        write_value(out, item, indent, depth + 1);
      }
      if (!flat) out << newline << close;
      out << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      if (!std::isfinite(x)) {
        out << "null";
        return;
      }
      out << format_double(x);
      return;
    }
    default:
      out << v.dump();
  }
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParameterError(std::string("expected a number for '") + what + "'");
  return j.get<double>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParameterError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

void write_json(std::ostream& out, const Json& value) {
  write_value(out, value, 2, 0);
  out << '\n';
}

std::string dump_json(const Json& value) {
  std::ostringstream out;
  write_json(out, value);
  return out.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParameterError(path + ": " + e.what());
  }
}

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& [i, j] : g.edges()) edges.push_back(Json::array({i + 1, j + 1}));
  Json out;
  out["n"] = g.size();
  out["edges"] = std::move(edges);
  return out;
}

Graph graph_from_json(const Json& j) {
  const Json& n = field(j, "n");
  if (!n.is_number_integer() || n.get<long>() < 0) throw ParameterError("field 'n' must be a non-negative integer");
  std::vector<Graph::Edge> edges;
  const Json& list = field(j, "edges");
  if (!list.is_array()) throw ParameterError("field 'edges' must be an array");
  for (std::size_t e = 0; e < list.size(); ++e) {
    const Json& pair = list[e];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer())
      throw ParameterError("edges[" + std::to_string(e) + "] must be a pair of node numbers");
    edges.emplace_back(pair[0].get<int>() - 1, pair[1].get<int>() - 1);
  }
  return Graph(n.get<int>(), std::move(edges));
}

Json graphon_to_json(const Graphon& w) {
  Json out;
  if (const auto* s = std::get_if<StepGraphon<>>(&w)) {
    out["type"] = "step";
    Json widths = Json::array();
    for (Eigen::Index a = 0; a < s->blocks(); ++a) widths.push_back(s->widths()(a));
    Json values = Json::array();
    for (Eigen::Index a = 0; a < s->blocks(); ++a) {
      Json row = Json::array();
      for (Eigen::Index b = 0; b < s->blocks(); ++b) row.push_back(s->values()(a, b));
      values.push_back(std::move(row));
    }
    out["widths"] = std::move(widths);
    out["values"] = std::move(values);
    return out;
  }
  const auto& a = std::get<AnalyticGraphon>(w);
  out["type"] = "analytic";
  out["kind"] = a.name();
  Json params = Json::object();
  switch (a.kind()) {
    case AnalyticGraphon::Kind::Constant: params["c"] = a.parameter(); break;
    case AnalyticGraphon::Kind::HalfGraph: break;
    case AnalyticGraphon::Kind::BlockFamily: params["lambda"] = a.lambda(); break;
    case AnalyticGraphon::Kind::Bipartite: params["gamma"] = a.parameter(); break;
    case AnalyticGraphon::Kind::Checkerboard: params["n"] = a.checker_n(); break;
  }
  out["params"] = std::move(params);
  return out;
}

Graphon graphon_from_json(const Json& j) {
  const Json& type = field(j, "type");
  if (type == "step") {
    const Json& widths = field(j, "widths");
    const Json& values = field(j, "values");
    if (!widths.is_array() || !values.is_array() || values.size() != widths.size())
      throw ParameterError("step graphon: 'values' must be a square array matching 'widths'");
    const auto m = static_cast<Eigen::Index>(widths.size());
    Eigen::VectorXd w(m);
    Eigen::MatrixXd v(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      w(a) = number(widths[static_cast<std::size_t>(a)], "widths");
      const Json& row = values[static_cast<std::size_t>(a)];
      if (!row.is_array() || row.size() != widths.size())
        throw ParameterError("step graphon: row " + std::to_string(a + 1) + " of 'values' has the wrong length");
      for (Eigen::Index b = 0; b < m; ++b) v(a, b) = number(row[static_cast<std::size_t>(b)], "values");
    }
    return StepGraphon<>(std::move(w), std::move(v));
  }
  if (type != "analytic") throw ParameterError("graphon 'type' must be \"step\" or \"analytic\"");
  const Json& kind = field(j, "kind");
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  if (kind == "constant") return AnalyticGraphon::constant(number(field(params, "c"), "c"));
  if (kind == "halfgraph") return AnalyticGraphon::halfgraph();
  if (kind == "bipartite") return AnalyticGraphon::bipartite(number(field(params, "gamma"), "gamma"));
  if (kind == "checkerboard") {
    const Json& n = field(params, "n");
    if (!n.is_number_integer()) throw ParameterError("checkerboard 'n' must be an integer");
    return AnalyticGraphon::checkerboard(n.get<int>());
  }
  if (kind == "blockfamily" || kind == "block_family") {
    const Json& lambda = field(params, "lambda");
    if (!lambda.is_array()) throw ParameterError("'lambda' must be an array");
    std::vector<double> l;
    for (const auto& x : lambda) l.push_back(number(x, "lambda"));
    return AnalyticGraphon::block_family(std::move(l));
  }
  throw ParameterError("unknown analytic kind " + kind.dump());
}

void write_theta_csv(std::ostream& out, const ThetaField<>& theta) {
  out << "cell";
  for (Eigen::Index k = 0; k < theta.labels(); ++k) out << ",theta_" << k + 1;
  out << '\n';
  for (Eigen::Index i = 0; i < theta.cells(); ++i) {
    out << i + 1;
    for (Eigen::Index k = 0; k < theta.labels(); ++k) out << ',' << format_double(theta(i, k));
    out << '\n';
  }
}

ThetaField<> read_theta_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("cell,", 0) != 0)
    throw ParameterError("theta csv: header must start with 'cell,'");
  const auto labels = static_cast<Eigen::Index>(std::count(line.begin(), line.end(), ','));
  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream cells(line);
    std::string item;
    std::vector<double> row;
    std::getline(cells, item, ',');  // cell number
    while (std::getline(cells, item, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw ParameterError("theta csv line " + std::to_string(line_no) + ": bad number '" + item + "'");
      }
    }
    if (static_cast<Eigen::Index>(row.size()) != labels)
      throw ParameterError("theta csv line " + std::to_string(line_no) + ": expected " + std::to_string(labels) +
                           " weights");
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXd w(static_cast<Eigen::Index>(rows.size()), labels);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (Eigen::Index k = 0; k < labels; ++k) w(static_cast<Eigen::Index>(i), k) = rows[i][static_cast<std::size_t>(k)];
  return ThetaField<>(std::move(w));
}

ThetaField<> read_theta_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  return read_theta_csv(in);
}

Json report_to_json(const SolveReport& report) {
  Json out;
  out["value"] = report.value;
  if (report.theta) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < report.theta->cells(); ++i) {
      Json row = Json::array();
      for (Eigen::Index k = 0; k < report.theta->labels(); ++k) row.push_back((*report.theta)(i, k));
      rows.push_back(std::move(row));
    }
    out["theta"] = std::move(rows);
  } else {
    out["labels"] = report.labels;
  }
  out["method"] = report.method;
  out["seed"] = report.seed;
  out["restarts"] = report.restarts;
  out["iterations"] = report.iterations;
  out["residual"] = report.residual ? Json(*report.residual) : Json(nullptr);
  return out;
}

}  // namespace graphcut
