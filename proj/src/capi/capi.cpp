#include "abw/abw.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "core/barycenter.hpp"
#include "core/json_io.hpp"
#include "core/metrics.hpp"
#include "core/process.hpp"
#include "core/simulate.hpp"

struct abw_process {
  abw::GaussianProcess value;
};

struct abw_barycenter_result {
  abw::BarycenterResult value;
};

namespace {

thread_local std::string g_last_error = "no error";

abw_status status_from(abw::ErrorCode code) {
  using abw::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return ABW_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return ABW_ERR_DIMENSION_MISMATCH;
    case ErrorCode::NonSymmetric: return ABW_ERR_NON_SYMMETRIC;
    case ErrorCode::IndefiniteInput: return ABW_ERR_INDEFINITE_INPUT;
    case ErrorCode::RankExceeded: return ABW_ERR_RANK_EXCEEDED;
    case ErrorCode::IndexOutOfRange: return ABW_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::NotPsd: return ABW_ERR_NOT_PSD;
    case ErrorCode::DimensionNotMultiple: return ABW_ERR_DIMENSION_NOT_MULTIPLE;
    case ErrorCode::NonPositiveSigma: return ABW_ERR_NON_POSITIVE_SIGMA;
    case ErrorCode::DimensionNotScalar: return ABW_ERR_DIMENSION_NOT_SCALAR;
    case ErrorCode::TooManyProcesses: return ABW_ERR_TOO_MANY_PROCESSES;
    case ErrorCode::SingularInput: return ABW_ERR_SINGULAR_INPUT;
    case ErrorCode::Parse: return ABW_ERR_PARSE;
  }
  return ABW_ERR_UNKNOWN;
}

template <typename Fn>
abw_status guarded(Fn&& fn) {
  try {
    fn();
    return ABW_OK;
  } catch (const abw::Error& e) {
    g_last_error = e.what();
    return status_from(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ABW_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown failure";
    return ABW_ERR_UNKNOWN;
  }
}

abw_status null_pointer(const char* what) {
  g_last_error = std::string(what) + " must not be NULL";
  return ABW_ERR_NULL_POINTER;
}

Eigen::MatrixXd factor_from_buffer(int32_t d, int32_t t_steps,
                                   const double* factor) {
  const Eigen::Index n = static_cast<Eigen::Index>(d) * t_steps;
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = factor[i * n + j];
  }
  return m;
}

Eigen::VectorXd weights_or_uniform(const double* weights, int32_t count) {
  if (weights == nullptr) {
    return Eigen::VectorXd::Constant(count, 1.0 / count);
  }
  return Eigen::Map<const Eigen::VectorXd>(weights, count);
}

abw::BarycenterProblem problem_from(const abw_process* const* processes,
                                    int32_t count, const double* weights) {
  if (count < 1) {
    abw::fail(abw::ErrorCode::InvalidArgument,
              "at least one process is required");
  }
  std::vector<abw::LowerBlockFactor> factors;
  std::vector<Eigen::VectorXd> means;
  factors.reserve(count);
  means.reserve(count);
  for (int32_t i = 0; i < count; ++i) {
    if (processes[i] == nullptr) {
      abw::fail(abw::ErrorCode::InvalidArgument,
                "process " + std::to_string(i) + " is NULL");
    }
    factors.push_back(processes[i]->value.factor);
    means.push_back(processes[i]->value.mean);
  }
  return abw::BarycenterProblem(std::move(factors), std::move(means),
                                weights_or_uniform(weights, count));
}

void copy_matrix(const Eigen::MatrixXd& m, double* out) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out[i * m.cols() + j] = m(i, j);
    }
  }
}

}  // namespace

extern "C" {

const char* abw_version(void) { return "0.1.0"; }

const char* abw_last_error(void) { return g_last_error.c_str(); }

void abw_string_free(char* text) { delete[] text; }

abw_status abw_process_create(int32_t d, int32_t t_steps, const double* mean,
                              const double* factor, abw_process** out) {
  if (out == nullptr) return null_pointer("out");
  if (factor == nullptr) return null_pointer("factor");
  *out = nullptr;
  return guarded([&] {
    if (d < 1 || t_steps < 1) {
      abw::fail(abw::ErrorCode::InvalidArgument,
                "d and T must be positive");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(d) * t_steps;
    auto lbf =
        abw::LowerBlockFactor::from_matrix(d, factor_from_buffer(d, t_steps,
                                                                 factor));
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(n);
    if (mean != nullptr) mu = Eigen::Map<const Eigen::VectorXd>(mean, n);
    *out = new abw_process{abw::GaussianProcess(std::move(mu),
                                                std::move(lbf))};
  });
}

abw_status abw_process_from_json(const char* json_text, abw_process** out) {
  if (out == nullptr) return null_pointer("out");
  if (json_text == nullptr) return null_pointer("json_text");
  *out = nullptr;
  return guarded([&] {
    *out = new abw_process{abw::process_from_json(json_text)};
  });
}

abw_status abw_process_ar1(int32_t t_steps, const double* alphas,
                           const double* sigmas, abw_process** out) {
  if (out == nullptr) return null_pointer("out");
  if (alphas == nullptr) return null_pointer("alphas");
  if (sigmas == nullptr) return null_pointer("sigmas");
  *out = nullptr;
  return guarded([&] {
    if (t_steps < 1) {
      abw::fail(abw::ErrorCode::InvalidArgument, "T must be positive");
    }
    abw::Ar1Spec spec;
    spec.alphas = Eigen::Map<const Eigen::VectorXd>(alphas, t_steps);
    spec.sigmas = Eigen::Map<const Eigen::VectorXd>(sigmas, t_steps);
    *out = new abw_process{
        abw::GaussianProcess::centered(abw::ar1_factor(spec))};
  });
}

abw_status abw_process_from_covariance(int32_t d, int32_t t_steps,
                                       const double* covariance,
                                       const double* mean,
                                       abw_process** out) {
  if (out == nullptr) return null_pointer("out");
  if (covariance == nullptr) return null_pointer("covariance");
  *out = nullptr;
  return guarded([&] {
    if (d < 1 || t_steps < 1) {
      abw::fail(abw::ErrorCode::InvalidArgument,
                "d and T must be positive");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(d) * t_steps;
    auto lbf = abw::from_covariance(factor_from_buffer(d, t_steps,
                                                       covariance),
                                    d);
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(n);
    if (mean != nullptr) mu = Eigen::Map<const Eigen::VectorXd>(mean, n);
    *out = new abw_process{abw::GaussianProcess(std::move(mu),
                                                std::move(lbf))};
  });
}

abw_status abw_process_to_json(const abw_process* process, char** out_json) {
  if (out_json == nullptr) return null_pointer("out_json");
  if (process == nullptr) return null_pointer("process");
  *out_json = nullptr;
  return guarded([&] {
    const std::string text = abw::process_to_json(process->value);
    char* buffer = new char[text.size() + 1];
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    *out_json = buffer;
  });
}

void abw_process_free(abw_process* process) { delete process; }

int32_t abw_process_dim(const abw_process* process) {
  return process == nullptr ? 0 : process->value.factor.dim();
}

int32_t abw_process_steps(const abw_process* process) {
  return process == nullptr ? 0 : process->value.factor.steps();
}

abw_status abw_process_mean(const abw_process* process, double* out) {
  if (process == nullptr) return null_pointer("process");
  if (out == nullptr) return null_pointer("out");
  return guarded([&] {
    const Eigen::VectorXd& mean = process->value.mean;
    for (Eigen::Index i = 0; i < mean.size(); ++i) out[i] = mean(i);
  });
}

abw_status abw_process_factor(const abw_process* process, double* out) {
  if (process == nullptr) return null_pointer("process");
  if (out == nullptr) return null_pointer("out");
  return guarded([&] { copy_matrix(process->value.factor.matrix(), out); });
}

abw_status abw_process_covariance(const abw_process* process, double* out) {
  if (process == nullptr) return null_pointer("process");
  if (out == nullptr) return null_pointer("out");
  return guarded([&] { copy_matrix(abw::covariance(process->value.factor),
                                   out); });
}

abw_status abw_process_canonicalize(const abw_process* process,
                                    abw_process** out) {
  if (out == nullptr) return null_pointer("out");
  if (process == nullptr) return null_pointer("process");
  *out = nullptr;
  return guarded([&] {
    *out = new abw_process{abw::GaussianProcess(
        process->value.mean, abw::canonicalize(process->value.factor))};
  });
}

abw_status abw_process_is_regular(const abw_process* process, double tol,
                                  int32_t* out) {
  if (process == nullptr) return null_pointer("process");
  if (out == nullptr) return null_pointer("out");
  return guarded([&] {
    *out = abw::is_regular(process->value.factor, tol) ? 1 : 0;
  });
}

abw_status abw_process_is_ar1(const abw_process* process, double tol,
                              int32_t* out) {
  if (process == nullptr) return null_pointer("process");
  if (out == nullptr) return null_pointer("out");
  return guarded([&] {
    *out = abw::is_ar1(process->value.factor, tol < 0 ? 1e-9 : tol) ? 1 : 0;
  });
}

abw_status abw_class_equal(const abw_process* lhs, const abw_process* rhs,
                           double tol, int32_t* out) {
  if (lhs == nullptr || rhs == nullptr) return null_pointer("process");
  if (out == nullptr) return null_pointer("out");
  return guarded([&] {
    *out = abw::classes_equal(lhs->value.factor, rhs->value.factor, tol)
               ? 1
               : 0;
  });
}

abw_status abw_distance(const abw_process* lhs, const abw_process* rhs,
                        double* out) {
  if (lhs == nullptr || rhs == nullptr) return null_pointer("process");
  if (out == nullptr) return null_pointer("out");
  return guarded([&] {
    *out = abw::adapted_distance(lhs->value.factor, rhs->value.factor);
  });
}

abw_status abw_distance_via_columns(const abw_process* lhs,
                                    const abw_process* rhs, double* out) {
  if (lhs == nullptr || rhs == nullptr) return null_pointer("process");
  if (out == nullptr) return null_pointer("out");
  return guarded([&] {
    *out = abw::adapted_distance_via_columns(lhs->value.factor,
                                             rhs->value.factor);
  });
}

abw_status abw_aw2_distance(const abw_process* lhs, const abw_process* rhs,
                            double* out) {
  if (lhs == nullptr || rhs == nullptr) return null_pointer("process");
  if (out == nullptr) return null_pointer("out");
  return guarded([&] {
    *out = abw::aw2_distance(lhs->value, rhs->value);
  });
}

abw_status abw_barycenter(const abw_process* const* processes, int32_t count,
                          const double* weights,
                          const abw_solver_options* options,
                          abw_barycenter_result** out) {
  if (out == nullptr) return null_pointer("out");
  if (processes == nullptr) return null_pointer("processes");
  *out = nullptr;
  return guarded([&] {
    const abw::BarycenterProblem problem =
        problem_from(processes, count, weights);
    abw::SolverConfig config;
    abw_method method = ABW_METHOD_FIXED_POINT;
    if (options != nullptr) {
      if (options->tolerance > 0.0) config.tolerance = options->tolerance;
      if (options->max_iterations > 0) {
        config.max_iterations = options->max_iterations;
      }
      if (options->init_index >= 0) config.init_index = options->init_index;
      method = options->method;
    }
    abw::BarycenterResult result;
    switch (method) {
      case ABW_METHOD_FIXED_POINT:
        result = abw::solve_fixed_point(problem, config);
        break;
      case ABW_METHOD_COLUMNS:
        result = abw::solve_by_columns(problem, config);
        break;
      case ABW_METHOD_ORACLE_1D:
        result = abw::sign_oracle_1d(problem);
        break;
      default:
        abw::fail(abw::ErrorCode::InvalidArgument,
                  "unknown barycenter method " + std::to_string(method));
    }
    *out = new abw_barycenter_result{std::move(result)};
  });
}

void abw_barycenter_result_free(abw_barycenter_result* result) {
  delete result;
}

abw_status abw_barycenter_result_process(const abw_barycenter_result* result,
                                         abw_process** out) {
  if (out == nullptr) return null_pointer("out");
  if (result == nullptr) return null_pointer("result");
  *out = nullptr;
  return guarded([&] {
    *out = new abw_process{
        abw::GaussianProcess(result->value.mean, result->value.factor)};
  });
}

int32_t abw_barycenter_result_converged(const abw_barycenter_result* result) {
  return result != nullptr && result->value.converged ? 1 : 0;
}

int32_t abw_barycenter_result_iterations(
    const abw_barycenter_result* result) {
  return result == nullptr ? 0 : result->value.iterations;
}

double abw_barycenter_result_residual(const abw_barycenter_result* result) {
  return result == nullptr ? 0.0 : result->value.residual;
}

int32_t abw_barycenter_result_trace_size(
    const abw_barycenter_result* result) {
  return result == nullptr
             ? 0
             : static_cast<int32_t>(result->value.objective_trace.size());
}

abw_status abw_barycenter_result_trace(const abw_barycenter_result* result,
                                       double* out, int32_t capacity) {
  if (result == nullptr) return null_pointer("result");
  if (out == nullptr) return null_pointer("out");
  return guarded([&] {
    const auto& trace = result->value.objective_trace;
    if (capacity < static_cast<int32_t>(trace.size())) {
      abw::fail(abw::ErrorCode::InvalidArgument,
                "trace buffer holds " + std::to_string(capacity) +
                    " entries, need " + std::to_string(trace.size()));
    }
    for (size_t i = 0; i < trace.size(); ++i) out[i] = trace[i];
  });
}

abw_status abw_classical_barycenter(const double* covariances, int32_t count,
                                    int32_t m, const double* weights,
                                    double tolerance, int32_t max_iterations,
                                    double* out_covariance,
                                    int32_t* out_iterations,
                                    int32_t* out_converged,
                                    double* out_residual) {
  if (covariances == nullptr) return null_pointer("covariances");
  if (out_covariance == nullptr) return null_pointer("out_covariance");
  return guarded([&] {
    if (count < 1 || m < 1) {
      abw::fail(abw::ErrorCode::InvalidArgument,
                "count and m must be positive");
    }
    std::vector<Eigen::MatrixXd> covs;
    covs.reserve(count);
    for (int32_t k = 0; k < count; ++k) {
      Eigen::MatrixXd c(m, m);
      const double* base = covariances + static_cast<size_t>(k) * m * m;
      for (int32_t i = 0; i < m; ++i) {
        for (int32_t j = 0; j < m; ++j) c(i, j) = base[i * m + j];
      }
      covs.push_back(std::move(c));
    }
    abw::SolverConfig config;
    if (tolerance > 0.0) config.tolerance = tolerance;
    if (max_iterations > 0) config.max_iterations = max_iterations;
    const abw::ClassicalBarycenterResult result =
        abw::classical_bw_barycenter(covs,
                                     weights_or_uniform(weights, count),
                                     config);
    copy_matrix(result.covariance, out_covariance);
    if (out_iterations != nullptr) *out_iterations = result.iterations;
    if (out_converged != nullptr) *out_converged = result.converged ? 1 : 0;
    if (out_residual != nullptr) *out_residual = result.residual;
  });
}

abw_status abw_fixed_point_residual(const abw_process* candidate,
                                    const abw_process* const* processes,
                                    int32_t count, const double* weights,
                                    double* out) {
  if (candidate == nullptr) return null_pointer("candidate");
  if (processes == nullptr) return null_pointer("processes");
  if (out == nullptr) return null_pointer("out");
  return guarded([&] {
    *out = abw::fixed_point_residual(candidate->value.factor,
                                     problem_from(processes, count, weights));
  });
}

abw_status abw_draw_noise(uint64_t seed, int64_t n_paths, int32_t dims,
                          double* out) {
  if (out == nullptr) return null_pointer("out");
  return guarded([&] {
    copy_matrix(abw::draw_noise(seed, n_paths, dims), out);
  });
}

abw_status abw_sample_paths(const abw_process* process, int64_t n_paths,
                            uint64_t seed, double* out) {
  if (process == nullptr) return null_pointer("process");
  if (out == nullptr) return null_pointer("out");
  return guarded([&] {
    copy_matrix(abw::sample_paths(process->value, n_paths, seed), out);
  });
}

abw_status abw_transform_noise(const abw_process* process,
                               const double* noise, int64_t n_paths,
                               double* out) {
  if (process == nullptr) return null_pointer("process");
  if (noise == nullptr) return null_pointer("noise");
  if (out == nullptr) return null_pointer("out");
  return guarded([&] {
    if (n_paths < 1) {
      abw::fail(abw::ErrorCode::InvalidArgument, "n_paths must be positive");
    }
    const Eigen::Index n = process->value.factor.size();
    Eigen::MatrixXd g(n_paths, n);
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      for (Eigen::Index j = 0; j < n; ++j) g(i, j) = noise[i * n + j];
    }
    copy_matrix(abw::transform_noise(process->value, g), out);
  });
}

abw_status abw_marginal_variances(const abw_process* process, double* out) {
  if (process == nullptr) return null_pointer("process");
  if (out == nullptr) return null_pointer("out");
  return guarded([&] {
    const Eigen::VectorXd v = abw::marginal_variances(process->value.factor);
    for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v(i);
  });
}

abw_status abw_lag_covariances(const abw_process* process, double* out) {
  if (process == nullptr) return null_pointer("process");
  if (out == nullptr) return null_pointer("out");
  return guarded([&] {
    const Eigen::VectorXd v = abw::lag_covariances(process->value.factor);
    for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v(i);
  });
}

}  // extern "C"
