#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "pcr/params.hpp"

namespace pcr {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct PowellIterate {
  int iteration = 0;
  Eigen::VectorXd x;
  double cost = 0.0;
};

struct PowellResult {
  Eigen::VectorXd x;
  double cost = 0.0;
  bool converged = false;
  int major_iterations = 0;
  long evaluations = 0;
  std::vector<PowellIterate> trace;  // accepted major iterations
};

struct PowellOptions {
  double eps = 1e-6;            // convergence: ||x_new - x0|| < eps
  int max_iter = 100;           // major iterations
  double line_tol = 1e-4;       // relative golden-section tolerance
  double initial_step = 0.05;   // bracketing scale per direction
  // Optional n x n starting direction set (columns are searched in order).
  // Empty means the standard basis. Lets the caller search well-scaled or
  // sign-carrying coordinates before stiff ones.
  Eigen::MatrixXd initial_directions;
};

// Powell conjugate-direction minimization with bracketing + golden-section
// line searches. Steps are clipped to the bounds; after each major
// iteration the direction of the longest step is replaced by the overall
// displacement, with a reset to the standard basis if the direction set
// degenerates.
PowellResult powell_minimize(const Objective& objective,
                             const Eigen::VectorXd& x0,
                             const ParameterBounds& bounds,
                             const PowellOptions& options = {});

}  // namespace pcr
