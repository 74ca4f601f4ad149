#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "graphcut/fields.hpp"
#include "graphcut/graph.hpp"
#include "graphcut/graphon.hpp"
#include "graphcut/solvers.hpp"

namespace graphcut {

using Json = nlohmann::ordered_json;

/// Shortest text that still round-trips: printf %.17g.
std::string format_double(double x);

/// Writes JSON with every floating value printed by format_double.
void write_json(std::ostream& out, const Json& value);
std::string dump_json(const Json& value);

/// Parses a JSON file; unreadable files and syntax errors are ParameterErrors.
Json read_json_file(const std::string& path);

/// {"n": n, "edges": [[i, j], ...]} with 1-based node labels.
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

/// {"type": "step", "widths": [...], "values": [[...], ...]} or
/// {"type": "analytic", "kind": "halfgraph", "params": {...}}.
Json graphon_to_json(const Graphon& w);
Graphon graphon_from_json(const Json& j);

/// CSV with header cell,theta_1,...,theta_N and 1-based cell numbers.
void write_theta_csv(std::ostream& out, const ThetaField<>& theta);
ThetaField<> read_theta_csv(std::istream& in);
ThetaField<> read_theta_file(const std::string& path);

/// Keys value, labels|theta, method, seed, restarts, iterations, residual.
Json report_to_json(const SolveReport& report);

}  // namespace graphcut
