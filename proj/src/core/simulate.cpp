#include "core/simulate.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace abw {

Eigen::MatrixXd draw_noise(std::uint64_t seed, std::int64_t n_paths,
                           int dims) {
  if (n_paths < 1 || dims < 1) {
    fail(ErrorCode::InvalidArgument,
         "draw_noise: n_paths and dims must be positive, got n_paths=" +
             std::to_string(n_paths) + ", dims=" + std::to_string(dims));
  }
  std::mt19937_64 rng(seed);
  const auto uniform53 = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  };

  Eigen::MatrixXd out(n_paths, dims);
  double spare = 0.0;
  bool has_spare = false;
  for (std::int64_t i = 0; i < n_paths; ++i) {
    for (int j = 0; j < dims; ++j) {
      if (has_spare) {
        out(i, j) = spare;
        has_spare = false;
        continue;
      }
      const double u1 = 1.0 - uniform53();  // (0, 1], keeps log finite
      const double u2 = uniform53();
      const double radius = std::sqrt(-2.0 * std::log(u1));
      const double angle = 2.0 * std::numbers::pi * u2;
      out(i, j) = radius * std::cos(angle);
      spare = radius * std::sin(angle);
      has_spare = true;
    }
  }
  return out;
}

Eigen::MatrixXd transform_noise(const GaussianProcess& process,
                                const Eigen::MatrixXd& noise) {
  if (noise.cols() != process.factor.size()) {
    fail(ErrorCode::DimensionMismatch,
         "transform_noise: noise has " + std::to_string(noise.cols()) +
             " columns, process expects " +
             std::to_string(process.factor.size()));
  }
  Eigen::MatrixXd paths = noise * process.factor.matrix().transpose();
  paths.rowwise() += process.mean.transpose();
  return paths;
}

Eigen::MatrixXd sample_paths(const GaussianProcess& process,
                             std::int64_t n_paths, std::uint64_t seed) {
  return transform_noise(process,
                         draw_noise(seed, n_paths, process.factor.size()));
}

Eigen::VectorXd marginal_variances(const LowerBlockFactor& factor) {
  const Eigen::MatrixXd cov = covariance(factor);
  const int d = factor.dim();
  Eigen::VectorXd out(factor.steps());
  for (int t = 0; t < factor.steps(); ++t) {
    out(t) = d == 1 ? cov(t, t) : cov.block(t * d, t * d, d, d).trace();
  }
  return out;
}

Eigen::VectorXd lag_covariances(const LowerBlockFactor& factor) {
  if (factor.dim() != 1) {
    fail(ErrorCode::DimensionNotScalar,
         "lag_covariances: requires d = 1, got d = " +
             std::to_string(factor.dim()));
  }
  return covariance(factor).col(0);
}

}  // namespace abw
