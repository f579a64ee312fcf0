#pragma once

#include "core/process.hpp"

namespace abw {

// Adapted Bures-Wasserstein distance between factors,
//   d^2 = ||L||_F^2 + ||M||_F^2 - 2 sum_t ||(M^T L)_{t,t}||_*.
// Exactly symmetric in its arguments; zero iff the factors share a class.
double adapted_distance(const LowerBlockFactor& lhs,
                        const LowerBlockFactor& rhs);

// Same distance through the column decomposition: the root of the sum over t
// of squared Bures-Wasserstein distances between column covariances. Kept as
// an independent computation route for cross-checking.
double adapted_distance_via_columns(const LowerBlockFactor& lhs,
                                    const LowerBlockFactor& rhs);

// Block rotation O minimizing ||lhs - rhs * O||_F; the attained value equals
// adapted_distance(lhs, rhs).
BlockOrthogonal optimal_rotation(const LowerBlockFactor& lhs,
                                 const LowerBlockFactor& rhs);

// Adapted 2-Wasserstein distance between Gaussian processes:
// sqrt(||mean gap||^2 + adapted_distance^2).
double aw2_distance(const GaussianProcess& x, const GaussianProcess& y);

}  // namespace abw
