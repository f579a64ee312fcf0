#pragma once

#include <optional>
#include <vector>

#include "core/process.hpp"

namespace abw {

// Weighted barycenter problem over Gaussian processes with a common shape.
struct BarycenterProblem {
  // Validates common shapes, positive weights summing to 1 within 1e-12.
  BarycenterProblem(std::vector<LowerBlockFactor> factors_in,
                    std::vector<Eigen::VectorXd> means_in,
                    Eigen::VectorXd weights_in);

  // Centered problem (all means zero).
  static BarycenterProblem centered(std::vector<LowerBlockFactor> factors_in,
                                    Eigen::VectorXd weights_in);

  int count() const { return static_cast<int>(factors.size()); }
  int dim() const { return factors.front().dim(); }
  int steps() const { return factors.front().steps(); }

  std::vector<LowerBlockFactor> factors;
  std::vector<Eigen::VectorXd> means;
  Eigen::VectorXd weights;
};

struct SolverConfig {
  // Frobenius displacement threshold; non-positive selects the default
  // 1e-10 * (1 + ||initial iterate||_F).
  double tolerance = -1.0;
  int max_iterations = 10000;
  // Initialization: explicit factor wins over input index; with neither set
  // the iteration starts from the weighted mean of the inputs.
  std::optional<int> init_index;
  std::optional<LowerBlockFactor> init_factor;
};

struct BarycenterResult {
  LowerBlockFactor factor;            // canonicalized representative
  Eigen::VectorXd mean;               // weighted mean of input means
  std::vector<double> objective_trace;  // weighted squared-distance objective
  int iterations = 0;
  double residual = 0.0;              // fixed-point residual at exit
  bool converged = false;
};

// Weighted Euclidean mean of the input means.
Eigen::VectorXd mean_barycenter(const std::vector<Eigen::VectorXd>& means,
                                const Eigen::VectorXd& weights);

// Alternating-minimization fixed-point iteration on the full factor:
// L <- sum_i w_i L_i O_i with O_i the optimal block rotation onto the
// current iterate. Stops when the iterate displacement drops below the
// tolerance; non-convergence is reported through the flag, not an error.
BarycenterResult solve_fixed_point(const BarycenterProblem& problem,
                                   const SolverConfig& config = {});

// Same minimization run independently per truncated column (the problems
// decouple), then reassembled. Columns may be solved in parallel; see
// worker_threads().
BarycenterResult solve_by_columns(const BarycenterProblem& problem,
                                  const SolverConfig& config = {});

// Exact d = 1 solver: per column, exhausts all sign vectors (first sign
// fixed positive; ties resolved toward the lexicographically smallest
// vector) and keeps the weighted mean with maximal norm.
BarycenterResult sign_oracle_1d(const BarycenterProblem& problem);

// ||candidate - sum_i w_i L_i O_i(candidate)||_F.
double fixed_point_residual(const LowerBlockFactor& candidate,
                            const BarycenterProblem& problem);

struct ClassicalBarycenterResult {
  Eigen::MatrixXd covariance;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// Classical Bures-Wasserstein barycenter of positive definite covariances
// via the congruence fixed-point map
//   S <- S^{-1/2} (sum_i w_i (S^{1/2} C_i S^{1/2})^{1/2})^2 S^{-1/2},
// initialized at the weighted arithmetic mean. Inputs whose smallest
// eigenvalue falls below 1e-10 * ||C||_F receive a jitter of
// 1e-10 * mean-trace on the diagonal; inputs singular beyond that repair
// raise SingularInput. Convergence is measured by the fixed-point residual
// relative to 1 + ||S||_F.
ClassicalBarycenterResult classical_bw_barycenter(
    const std::vector<Eigen::MatrixXd>& covariances,
    const Eigen::VectorXd& weights, const SolverConfig& config = {});

// AR(1) structure test for scalar factors: the ratios L(t,s)/L(t-1,s) must
// agree across s (entries with |L(t-1,s)| <= tol are skipped).
bool is_ar1(const LowerBlockFactor& factor, double tol);

}  // namespace abw
