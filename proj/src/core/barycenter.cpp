#include "core/barycenter.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "core/matcore.hpp"
#include "core/metrics.hpp"
#include "core/threads.hpp"

namespace abw {

namespace {

void validate_weights(const Eigen::VectorXd& weights, int count,
                      const char* context) {
  if (weights.size() != count) {
    fail(ErrorCode::DimensionMismatch,
         std::string(context) + ": " + std::to_string(weights.size()) +
             " weights for " + std::to_string(count) + " inputs");
  }
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (!(weights(i) > 0.0)) {
      fail(ErrorCode::InvalidArgument,
           std::string(context) + ": weight " + std::to_string(i) +
               " must be strictly positive, got " +
               std::to_string(weights(i)));
    }
  }
  if (std::abs(weights.sum() - 1.0) > 1e-12) {
    fail(ErrorCode::InvalidArgument,
         std::string(context) + ": weights sum to " +
             std::to_string(weights.sum()) + ", expected 1 within 1e-12");
  }
}

LowerBlockFactor initial_factor(const BarycenterProblem& problem,
                                const SolverConfig& config) {
  if (config.init_factor.has_value()) {
    if (!config.init_factor->same_shape(problem.factors.front())) {
      fail(ErrorCode::DimensionMismatch,
           "solver init factor does not match the problem shape");
    }
    return *config.init_factor;
  }
  if (config.init_index.has_value()) {
    const int k = *config.init_index;
    if (k < 0 || k >= problem.count()) {
      fail(ErrorCode::IndexOutOfRange,
           "solver init index " + std::to_string(k) + " outside [0, " +
               std::to_string(problem.count() - 1) + "]");
    }
    return problem.factors[k];
  }
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(problem.factors.front().size(),
                                              problem.factors.front().size());
  for (int i = 0; i < problem.count(); ++i) {
    acc += problem.weights(i) * problem.factors[i].matrix();
  }
  return LowerBlockFactor::from_matrix(problem.dim(), acc);
}

double default_tolerance(const SolverConfig& config, double init_norm) {
  return config.tolerance > 0.0 ? config.tolerance
                                : 1e-10 * (1.0 + init_norm);
}

void validate_config(const SolverConfig& config) {
  if (config.max_iterations < 1) {
    fail(ErrorCode::InvalidArgument,
         "solver max_iterations must be >= 1, got " +
             std::to_string(config.max_iterations));
  }
}

// One alternating-minimization sweep at the current iterate, returning the
// next iterate and the objective value attained at the current one.
std::pair<Eigen::MatrixXd, double> fixed_point_step(
    const BarycenterProblem& problem, const LowerBlockFactor& iterate) {
  Eigen::MatrixXd acc =
      Eigen::MatrixXd::Zero(iterate.size(), iterate.size());
  double objective = 0.0;
  for (int i = 0; i < problem.count(); ++i) {
    const LowerBlockFactor rotated = apply_rotation(
        problem.factors[i], optimal_rotation(iterate, problem.factors[i]));
    objective +=
        problem.weights(i) *
        (iterate.matrix() - rotated.matrix()).squaredNorm();
    acc += problem.weights(i) * rotated.matrix();
  }
  return {std::move(acc), objective};
}

struct ColumnSolve {
  Eigen::MatrixXd column;
  std::vector<double> objective_trace;
  int iterations = 0;
  bool converged = false;
};

ColumnSolve solve_column(const BarycenterProblem& problem,
                         const SolverConfig& config,
                         const LowerBlockFactor& init, int t) {
  const int n = problem.count();
  std::vector<Eigen::MatrixXd> cols(n);
  for (int i = 0; i < n; ++i) cols[i] = problem.factors[i].truncated_column(t);

  ColumnSolve out;
  out.column = init.truncated_column(t);
  const double delta = default_tolerance(config, out.column.norm());
  for (int k = 0; k < config.max_iterations; ++k) {
    Eigen::MatrixXd next =
        Eigen::MatrixXd::Zero(out.column.rows(), out.column.cols());
    double objective = 0.0;
    for (int i = 0; i < n; ++i) {
      const Eigen::MatrixXd rotated =
          cols[i] *
          procrustes_align(cols[i].transpose() * out.column).rotation;
      objective += problem.weights(i) * (out.column - rotated).squaredNorm();
      next += problem.weights(i) * rotated;
    }
    out.objective_trace.push_back(objective);
    const double displacement = (next - out.column).norm();
    out.column = std::move(next);
    out.iterations = k + 1;
    if (displacement < delta) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace

BarycenterProblem::BarycenterProblem(std::vector<LowerBlockFactor> factors_in,
                                     std::vector<Eigen::VectorXd> means_in,
                                     Eigen::VectorXd weights_in)
    : factors(std::move(factors_in)),
      means(std::move(means_in)),
      weights(std::move(weights_in)) {
  if (factors.empty()) {
    fail(ErrorCode::InvalidArgument,
         "BarycenterProblem: at least one input process is required");
  }
  for (size_t i = 1; i < factors.size(); ++i) {
    if (!factors[i].same_shape(factors.front())) {
      fail(ErrorCode::DimensionMismatch,
           "BarycenterProblem: factor " + std::to_string(i) +
               " has a different shape than factor 0");
    }
  }
  if (means.size() != factors.size()) {
    fail(ErrorCode::DimensionMismatch,
         "BarycenterProblem: " + std::to_string(means.size()) +
             " means for " + std::to_string(factors.size()) + " factors");
  }
  for (size_t i = 0; i < means.size(); ++i) {
    if (means[i].size() != factors.front().size()) {
      fail(ErrorCode::DimensionMismatch,
           "BarycenterProblem: mean " + std::to_string(i) + " has " +
               std::to_string(means[i].size()) + " entries, expected " +
               std::to_string(factors.front().size()));
    }
  }
  validate_weights(weights, count(), "BarycenterProblem");
}

BarycenterProblem BarycenterProblem::centered(
    std::vector<LowerBlockFactor> factors_in, Eigen::VectorXd weights_in) {
  if (factors_in.empty()) {
    fail(ErrorCode::InvalidArgument,
         "BarycenterProblem: at least one input process is required");
  }
  std::vector<Eigen::VectorXd> zeros(
      factors_in.size(), Eigen::VectorXd::Zero(factors_in.front().size()));
  return BarycenterProblem(std::move(factors_in), std::move(zeros),
                           std::move(weights_in));
}

Eigen::VectorXd mean_barycenter(const std::vector<Eigen::VectorXd>& means,
                                const Eigen::VectorXd& weights) {
  if (means.empty()) {
    fail(ErrorCode::InvalidArgument, "mean_barycenter: no means given");
  }
  for (size_t i = 1; i < means.size(); ++i) {
    if (means[i].size() != means.front().size()) {
      fail(ErrorCode::DimensionMismatch,
           "mean_barycenter: mean " + std::to_string(i) +
               " has a different length than mean 0");
    }
  }
  validate_weights(weights, static_cast<int>(means.size()),
                   "mean_barycenter");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(means.front().size());
  for (size_t i = 0; i < means.size(); ++i) out += weights(i) * means[i];
  return out;
}

BarycenterResult solve_fixed_point(const BarycenterProblem& problem,
                                   const SolverConfig& config) {
  validate_config(config);
  LowerBlockFactor iterate = initial_factor(problem, config);
  const double delta = default_tolerance(config, iterate.norm());

  BarycenterResult result;
  for (int k = 0; k < config.max_iterations; ++k) {
    auto [next, objective] = fixed_point_step(problem, iterate);
    result.objective_trace.push_back(objective);
    const double displacement = (next - iterate.matrix()).norm();
    iterate = LowerBlockFactor::from_matrix(problem.dim(), std::move(next));
    result.iterations = k + 1;
    if (displacement < delta) {
      result.converged = true;
      break;
    }
  }
  result.factor = canonicalize(iterate);
  result.mean = mean_barycenter(problem.means, problem.weights);
  result.residual = fixed_point_residual(result.factor, problem);
  return result;
}

BarycenterResult solve_by_columns(const BarycenterProblem& problem,
                                  const SolverConfig& config) {
  validate_config(config);
  const LowerBlockFactor init = initial_factor(problem, config);
  const int steps = problem.steps();

  std::vector<ColumnSolve> columns(steps);
  parallel_for(steps, [&](int t) {
    columns[t] = solve_column(problem, config, init, t);
  });

  LowerBlockFactor assembled(problem.dim(), steps);
  BarycenterResult result;
  result.converged = true;
  size_t trace_len = 0;
  for (int t = 0; t < steps; ++t) {
    assembled.set_truncated_column(t, columns[t].column);
    result.iterations = std::max(result.iterations, columns[t].iterations);
    result.converged = result.converged && columns[t].converged;
    trace_len = std::max(trace_len, columns[t].objective_trace.size());
  }
  // Column traces freeze at their final value once the column has stopped,
  // so the summed trace stays non-increasing.
  result.objective_trace.assign(trace_len, 0.0);
  for (size_t k = 0; k < trace_len; ++k) {
    for (int t = 0; t < steps; ++t) {
      const auto& trace = columns[t].objective_trace;
      result.objective_trace[k] +=
          trace[std::min(k, trace.size() - 1)];
    }
  }
  result.factor = canonicalize(assembled);
  result.mean = mean_barycenter(problem.means, problem.weights);
  result.residual = fixed_point_residual(result.factor, problem);
  return result;
}

BarycenterResult sign_oracle_1d(const BarycenterProblem& problem) {
  if (problem.dim() != 1) {
    fail(ErrorCode::DimensionNotScalar,
         "sign_oracle_1d: requires d = 1, got d = " +
             std::to_string(problem.dim()));
  }
  const int n = problem.count();
  if (n > 15) {
    fail(ErrorCode::TooManyProcesses,
         "sign_oracle_1d: exhaustive enumeration capped at 15 processes, "
         "got " +
             std::to_string(n));
  }
  const int steps = problem.steps();
  LowerBlockFactor assembled(1, steps);
  const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
  for (int t = 0; t < steps; ++t) {
    std::vector<Eigen::VectorXd> cols(n);
    for (int i = 0; i < n; ++i) {
      cols[i] = problem.factors[i].truncated_column(t);
    }
    // Sign vectors enumerated lexicographically (-1 before +1) with the
    // first sign pinned to +1; strict improvement keeps the smallest
    // maximizer on ties.
    Eigen::VectorXd best;
    double best_norm2 = -1.0;
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
      Eigen::VectorXd sum = problem.weights(0) * cols[0];
      for (int j = 1; j < n; ++j) {
        const bool positive = (mask >> (n - 1 - j)) & 1u;
        const double sign = positive ? 1.0 : -1.0;
        sum += problem.weights(j) * sign * cols[j];
      }
      const double norm2 = sum.squaredNorm();
      if (norm2 > best_norm2) {
        best_norm2 = norm2;
        best = std::move(sum);
      }
    }
    assembled.set_truncated_column(t, best);
  }

  BarycenterResult result;
  result.factor = canonicalize(assembled);
  result.mean = mean_barycenter(problem.means, problem.weights);
  double objective = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dist = adapted_distance(result.factor, problem.factors[i]);
    objective += problem.weights(i) * dist * dist;
  }
  result.objective_trace = {objective};
  result.iterations = 1;
  result.residual = fixed_point_residual(result.factor, problem);
  result.converged = true;
  return result;
}

double fixed_point_residual(const LowerBlockFactor& candidate,
                            const BarycenterProblem& problem) {
  if (!candidate.same_shape(problem.factors.front())) {
    fail(ErrorCode::DimensionMismatch,
         "fixed_point_residual: candidate does not match the problem shape");
  }
  Eigen::MatrixXd acc =
      Eigen::MatrixXd::Zero(candidate.size(), candidate.size());
  for (int i = 0; i < problem.count(); ++i) {
    acc += problem.weights(i) *
           apply_rotation(problem.factors[i],
                          optimal_rotation(candidate, problem.factors[i]))
               .matrix();
  }
  return (candidate.matrix() - acc).norm();
}

ClassicalBarycenterResult classical_bw_barycenter(
    const std::vector<Eigen::MatrixXd>& covariances,
    const Eigen::VectorXd& weights, const SolverConfig& config) {
  validate_config(config);
  if (covariances.empty()) {
    fail(ErrorCode::InvalidArgument,
         "classical_bw_barycenter: no covariances given");
  }
  const Eigen::Index m = covariances.front().rows();
  for (size_t i = 0; i < covariances.size(); ++i) {
    if (covariances[i].rows() != m || covariances[i].cols() != m) {
      fail(ErrorCode::DimensionMismatch,
           "classical_bw_barycenter: covariance " + std::to_string(i) +
               " has inconsistent shape");
    }
    require_symmetric(covariances[i], "classical_bw_barycenter");
  }
  validate_weights(weights, static_cast<int>(covariances.size()),
                   "classical_bw_barycenter");

  double mean_trace = 0.0;
  for (const auto& c : covariances) mean_trace += c.trace();
  mean_trace /= static_cast<double>(covariances.size());
  const double jitter = 1e-10 * mean_trace;

  std::vector<Eigen::MatrixXd> inputs = covariances;
  for (size_t i = 0; i < inputs.size(); ++i) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        inputs[i], Eigen::EigenvaluesOnly);
    const double floor = 1e-10 * inputs[i].norm();
    if (es.eigenvalues().minCoeff() <= floor) {
      inputs[i] += jitter * Eigen::MatrixXd::Identity(m, m);
      if (es.eigenvalues().minCoeff() + jitter <= floor) {
        fail(ErrorCode::SingularInput,
             "classical_bw_barycenter: covariance " + std::to_string(i) +
                 " is numerically singular beyond jitter repair");
      }
    }
  }

  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m, m);
  for (size_t i = 0; i < inputs.size(); ++i) s += weights(i) * inputs[i];

  const double delta =
      config.tolerance > 0.0 ? config.tolerance : 1e-11 * (1.0 + s.norm());

  ClassicalBarycenterResult result;
  for (int k = 0; k < config.max_iterations; ++k) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    const Eigen::VectorXd w = es.eigenvalues();
    if (!(w.minCoeff() > 0.0)) {
      fail(ErrorCode::SingularInput,
           "classical_bw_barycenter: iterate left the positive definite "
           "cone");
    }
    const Eigen::MatrixXd root = es.eigenvectors() *
                                 w.cwiseSqrt().asDiagonal() *
                                 es.eigenvectors().transpose();
    const Eigen::MatrixXd root_inv = es.eigenvectors() *
                                     w.cwiseSqrt().cwiseInverse().asDiagonal() *
                                     es.eigenvectors().transpose();
    Eigen::MatrixXd mean_sqrt = Eigen::MatrixXd::Zero(m, m);
    for (size_t i = 0; i < inputs.size(); ++i) {
      Eigen::MatrixXd inner = root * inputs[i] * root;
      inner = (inner + inner.transpose()) / 2;
      mean_sqrt += weights(i) * psd_sqrt(inner);
    }
    result.residual = (s - mean_sqrt).norm();
    if (result.residual <= delta * (1.0 + s.norm())) {
      result.converged = true;
      break;
    }
    s = root_inv * mean_sqrt * mean_sqrt * root_inv;
    s = (s + s.transpose()) / 2;
    result.iterations = k + 1;
  }
  result.covariance = std::move(s);
  return result;
}

bool is_ar1(const LowerBlockFactor& factor, double tol) {
  if (factor.dim() != 1) {
    fail(ErrorCode::DimensionNotScalar,
         "is_ar1: requires d = 1, got d = " + std::to_string(factor.dim()));
  }
  const Eigen::MatrixXd& m = factor.matrix();
  for (int t = 1; t < factor.steps(); ++t) {
    bool have_ref = false;
    double ref = 0.0;
    for (int s = 0; s < t; ++s) {
      if (std::abs(m(t - 1, s)) <= tol) continue;
      const double ratio = m(t, s) / m(t - 1, s);
      if (!have_ref) {
        ref = ratio;
        have_ref = true;
      } else if (std::abs(ratio - ref) > tol * std::max(1.0, std::abs(ref))) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace abw
