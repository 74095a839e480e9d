#pragma once

// Damped Gauss-Newton (Levenberg-Marquardt schedule) for real residual
// vectors. Complex residuals are stacked as (re, im) pairs by the callers.

#include <functional>
#include <string>
#include <vector>

namespace ppc {

using ResidualFunction =
    std::function<void(const std::vector<double>& params, std::vector<double>& residuals)>;

struct LeastSquaresOptions {
  int max_iterations = 200;
  double step_tolerance = 1e-9;   // relative parameter step
  double cost_tolerance = 1e-12;  // relative cost decrease
  double initial_damping = 1e-4;
  double gradient_tolerance = 1e-3;  // cosine between J^T r and the data
  /// Typical magnitude per parameter. Sets the finite-difference step and
  /// the step test for parameters that sit near zero. Empty means |p|.
  std::vector<double> scale;
};

struct LeastSquaresResult {
  std::vector<double> params;
  std::vector<double> uncertainties;
  std::vector<std::vector<double>> covariance;
  double cost = 0.0;            // 0.5 |r|^2
  double residual_norm = 0.0;   // |r|
  double gradient_norm = 0.0;   // |J^T r|_inf / (|J|_F |r|)
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string message;
  std::vector<double> cost_history;  // cost after each accepted step
};

LeastSquaresResult least_squares(const ResidualFunction& residuals,
                                 const std::vector<double>& initial,
                                 const LeastSquaresOptions& options = {});

}  // namespace ppc
