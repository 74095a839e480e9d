#include "ppcircuit/least_squares.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "ppcircuit/errors.hpp"

namespace ppc {

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Problem {
  const ResidualFunction& fn;
  std::size_t m = 0;
  int evaluations = 0;

  Vec eval(const Vec& p) {
    std::vector<double> params(p.data(), p.data() + p.size());
    std::vector<double> r;
    fn(params, r);
    ++evaluations;
    if (m == 0) m = r.size();
    if (r.size() != m) throw DomainError("residual length changed between evaluations");
    return Eigen::Map<Vec>(r.data(), static_cast<Eigen::Index>(r.size()));
  }
};

bool all_finite(const Vec& v) { return v.allFinite(); }

}  // namespace

LeastSquaresResult least_squares(const ResidualFunction& residuals,
                                 const std::vector<double>& initial,
                                 const LeastSquaresOptions& options) {
  const auto n = static_cast<Eigen::Index>(initial.size());
  if (n == 0) throw DomainError("least_squares: no parameters");
  for (double v : initial) {
    if (!std::isfinite(v)) throw DomainError("least_squares: initial guess not finite");
  }
  if (!options.scale.empty() && options.scale.size() != initial.size()) {
    throw DomainError("least_squares: scale length differs from parameter count");
  }

  Problem prob{residuals};
  Vec p = Eigen::Map<const Vec>(initial.data(), n);
  Vec r = prob.eval(p);
  if (!all_finite(r)) throw DomainError("least_squares: residuals not finite at initial guess");
  if (static_cast<Eigen::Index>(prob.m) < n) {
    throw NonIdentifiableError("fewer residuals than parameters");
  }

  auto typical = [&](Eigen::Index i) {
    const double s = options.scale.empty() ? 0.0 : std::abs(options.scale[i]);
    return std::max(std::abs(p[i]), s);
  };

  LeastSquaresResult out;
  double cost = 0.5 * r.squaredNorm();
  const double initial_norm = r.norm();
  double lambda = options.initial_damping;
  Mat jac(static_cast<Eigen::Index>(prob.m), n);
  bool done = false;
  int iterations = 0;

  auto jacobian = [&]() {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double h = std::max(1e-8 * typical(i), 1e-12);
      Vec q = p;
      q[i] += h;
      const double actual = q[i] - p[i];
      jac.col(i) = (prob.eval(q) - r) / actual;
    }
  };

  while (!done && iterations < options.max_iterations) {
    if (cost == 0.0) {
      out.converged = true;
      out.message = "exact fit";
      break;
    }
    jacobian();
    const Vec grad = jac.transpose() * r;
    const Mat normal = jac.transpose() * jac;
    Vec diag = normal.diagonal();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!(diag[i] > 0.0)) diag[i] = 1.0;
    }

    bool accepted = false;
    while (!accepted) {
      Mat a = normal;
      a.diagonal() += lambda * diag;
      const Vec step = a.ldlt().solve(-grad);
      double rel_step = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double t = typical(i);
        rel_step = std::max(rel_step, std::abs(step[i]) / (t > 0.0 ? t : 1.0));
      }
      if (!all_finite(step)) {
        lambda *= 10.0;
      } else {
        const Vec trial = p + step;
        Vec r_trial = prob.eval(trial);
        const double trial_cost = all_finite(r_trial)
                                      ? 0.5 * r_trial.squaredNorm()
                                      : std::numeric_limits<double>::infinity();
        if (trial_cost < cost) {
          const double decrease = (cost - trial_cost) / cost;
          p = trial;
          r = std::move(r_trial);
          cost = trial_cost;
          out.cost_history.push_back(cost);
          lambda = std::max(lambda / 10.0, 1e-15);
          accepted = true;
          // A step already below tolerance only confirms convergence.
          if (rel_step < options.step_tolerance) {
            done = true;
            out.message = "relative step below tolerance";
          } else {
            ++iterations;
            if (decrease < options.cost_tolerance) {
              done = true;
              out.message = "relative cost decrease below tolerance";
            }
          }
        } else {
          if (rel_step < options.step_tolerance) {
            // No representable improvement left.
            done = true;
            accepted = true;
            out.message = "relative step below tolerance";
          } else {
            lambda *= 10.0;
          }
        }
      }
      if (!accepted && lambda > 1e16) {
        done = true;
        out.message = "damping exhausted";
        break;
      }
    }
    out.converged = done;
  }

  if (!done && !out.converged) out.message = "maximum iterations reached";

  // Final diagnostics at the accepted point.
  jacobian();
  const Vec grad = jac.transpose() * r;
  const double jnorm = jac.norm();
  const double rnorm = r.norm();
  out.gradient_norm = (jnorm > 0.0 && rnorm > 0.0)
                          ? grad.cwiseAbs().maxCoeff() / (jnorm * rnorm)
                          : 0.0;
  out.residual_norm = rnorm;
  out.cost = cost;
  // Residuals at rounding level leave J^T r without structure; accept them.
  const bool tiny_residual = rnorm <= 1e-9 * initial_norm;
  if (out.converged && out.message == "damping exhausted") {
    out.converged = tiny_residual || out.gradient_norm < options.gradient_tolerance;
  }
  if (out.converged && !(tiny_residual || out.gradient_norm < options.gradient_tolerance)) {
    out.converged = false;
    out.message += "; gradient not small";
  }

  out.params.assign(p.data(), p.data() + n);
  out.iterations = iterations;
  out.evaluations = prob.evaluations;

  const auto dof = static_cast<double>(prob.m) - static_cast<double>(n);
  const double variance = dof > 0 ? 2.0 * cost / dof : 0.0;
  const Mat normal = jac.transpose() * jac;
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(normal);
  Mat cov = cod.pseudoInverse() * variance;
  out.uncertainties.resize(static_cast<std::size_t>(n));
  out.covariance.assign(static_cast<std::size_t>(n), std::vector<double>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    out.uncertainties[i] = std::sqrt(std::max(cov(i, i), 0.0));
    for (Eigen::Index j = 0; j < n; ++j) out.covariance[i][j] = cov(i, j);
  }
  return out;
}

}  // namespace ppc
