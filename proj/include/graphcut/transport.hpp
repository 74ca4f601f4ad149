#pragma once

#include <Eigen/Dense>

namespace graphcut {

/// Solves min <cost, X> over X >= 0 with unit row sums and column sums equal
/// to `capacity` (which must sum to the number of rows) by successive
/// shortest paths on the cells -> labels flow network.
Eigen::MatrixXd transport_lmo(const Eigen::MatrixXd& cost, const Eigen::VectorXd& capacity);

}  // namespace graphcut
