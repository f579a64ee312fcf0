#include "core/metrics.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "core/matcore.hpp"

namespace abw {

namespace {

void require_same_shape(const LowerBlockFactor& lhs,
                        const LowerBlockFactor& rhs, const char* context) {
  if (!lhs.same_shape(rhs)) {
    fail(ErrorCode::DimensionMismatch,
         std::string(context) + ": factors are (d=" +
             std::to_string(lhs.dim()) + ", T=" +
             std::to_string(lhs.steps()) + ") and (d=" +
             std::to_string(rhs.dim()) + ", T=" +
             std::to_string(rhs.steps()) + ")");
  }
}

bool lex_less(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double* pa = a.data();
  const double* pb = b.data();
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (pa[k] != pb[k]) return pa[k] < pb[k];
  }
  return false;
}

double nuclear_norm(const Eigen::MatrixXd& m) {
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().sum();
}

}  // namespace

double adapted_distance(const LowerBlockFactor& lhs,
                        const LowerBlockFactor& rhs) {
  require_same_shape(lhs, rhs, "adapted_distance");
  // Fixed evaluation order makes the result bit-identical under swapping.
  const bool swap = lex_less(rhs.matrix(), lhs.matrix());
  const LowerBlockFactor& a = swap ? rhs : lhs;
  const LowerBlockFactor& b = swap ? lhs : rhs;

  double cross = 0.0;
  for (int t = 0; t < a.steps(); ++t) {
    const Eigen::MatrixXd gram =
        b.truncated_column(t).transpose() * a.truncated_column(t);
    cross += nuclear_norm(gram);
  }
  const double radicand =
      a.matrix().squaredNorm() + b.matrix().squaredNorm() - 2.0 * cross;
  return std::sqrt(std::max(radicand, 0.0));
}

double adapted_distance_via_columns(const LowerBlockFactor& lhs,
                                    const LowerBlockFactor& rhs) {
  require_same_shape(lhs, rhs, "adapted_distance_via_columns");
  double total = 0.0;
  for (int t = 0; t < lhs.steps(); ++t) {
    const double dt =
        bw_distance(column_covariance(lhs, t), column_covariance(rhs, t));
    total += dt * dt;
  }
  return std::sqrt(total);
}

BlockOrthogonal optimal_rotation(const LowerBlockFactor& lhs,
                                 const LowerBlockFactor& rhs) {
  require_same_shape(lhs, rhs, "optimal_rotation");
  std::vector<Eigen::MatrixXd> blocks;
  blocks.reserve(lhs.steps());
  for (int t = 0; t < lhs.steps(); ++t) {
    const Eigen::MatrixXd gram =
        rhs.truncated_column(t).transpose() * lhs.truncated_column(t);
    blocks.push_back(procrustes_align(gram).rotation);
  }
  return BlockOrthogonal(std::move(blocks));
}

double aw2_distance(const GaussianProcess& x, const GaussianProcess& y) {
  if (x.mean.size() != y.mean.size()) {
    fail(ErrorCode::DimensionMismatch,
         "aw2_distance: means have " + std::to_string(x.mean.size()) +
             " and " + std::to_string(y.mean.size()) + " entries");
  }
  const double gap2 = (x.mean - y.mean).squaredNorm();
  const double abw = adapted_distance(x.factor, y.factor);
  return std::sqrt(gap2 + abw * abw);
}

}  // namespace abw
