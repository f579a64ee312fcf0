#pragma once

#include <cstdint>

#include "core/process.hpp"

namespace abw {

// Standard normal noise matrix (n_paths x dims), fully determined by the
// seed: an mt19937_64 stream converted through the Box-Muller transform on
// 53-bit uniforms, consumed in row-major order. The same matrix can be fed
// to several processes so that their paths share one noise realisation.
Eigen::MatrixXd draw_noise(std::uint64_t seed, std::int64_t n_paths,
                           int dims);

// Rows of mean + factor * g for each noise row g.
Eigen::MatrixXd transform_noise(const GaussianProcess& process,
                                const Eigen::MatrixXd& noise);

// draw_noise followed by transform_noise.
Eigen::MatrixXd sample_paths(const GaussianProcess& process,
                             std::int64_t n_paths, std::uint64_t seed);

// Per-step variances: diagonal of the covariance for d = 1, per-step traces
// of the diagonal blocks otherwise. Length T.
Eigen::VectorXd marginal_variances(const LowerBlockFactor& factor);

// Cov(X_1, X_t) for scalar processes: the first column of the covariance.
Eigen::VectorXd lag_covariances(const LowerBlockFactor& factor);

}  // namespace abw
