#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

namespace qsl {

struct LbfgsOptions {
  int max_iterations = 10000;
  double gradient_tolerance = 1e-8;  // on the Euclidean gradient norm
  int memory = 10;
};

struct LbfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string status;
};

/// Returns f(x) and writes the gradient into `grad`. May return +inf to
/// signal an infeasible point; the line search backs off from it.
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

/// Limited-memory BFGS with a backtracking Armijo line search. Once the
/// objective differences fall into rounding noise, steps that keep f within
/// noise and reduce the gradient norm are accepted, so the gradient criterion
/// stays reachable near flat optima.
LbfgsResult minimize_lbfgs(const Objective& f, Eigen::VectorXd x0, const LbfgsOptions& opts = {});

}  // namespace qsl
