#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/errors.hpp"

namespace abw {

// Block-lower-triangular factor of a centered Gaussian process: a dT x dT
// matrix whose d x d blocks above the block diagonal vanish. Two factors
// describe the same process law iff they differ by a right block-orthogonal
// rotation; class membership is tested through the column covariances.
class LowerBlockFactor {
 public:
  LowerBlockFactor() : d_(1), steps_(1), m_(Eigen::MatrixXd::Zero(1, 1)) {}

  // Zero factor of the given shape.
  LowerBlockFactor(int d, int steps);

  static LowerBlockFactor identity(int d, int steps);

  // Wraps a dense matrix, enforcing zero upper blocks exactly.
  static LowerBlockFactor from_matrix(int d, const Eigen::MatrixXd& m);

  int dim() const { return d_; }       // d, per-step dimension
  int steps() const { return steps_; }  // T, number of time steps
  int size() const { return d_ * steps_; }

  const Eigen::MatrixXd& matrix() const { return m_; }
  double norm() const { return m_.norm(); }

  // d x d block (t, s), 0-based block indices, s <= t.
  Eigen::Block<const Eigen::MatrixXd> block(int t, int s) const;
  void set_block(int t, int s, const Eigen::MatrixXd& value);

  // Nonzero part of block column t: the (T-t)d x d stack of blocks t..T-1.
  Eigen::Block<const Eigen::MatrixXd> truncated_column(int t) const;
  void set_truncated_column(int t, const Eigen::MatrixXd& value);

  bool same_shape(const LowerBlockFactor& other) const {
    return d_ == other.d_ && steps_ == other.steps_;
  }

 private:
  LowerBlockFactor(int d, int steps, Eigen::MatrixXd m)
      : d_(d), steps_(steps), m_(std::move(m)) {}

  void check_time_index(int t, const char* context) const;

  int d_;
  int steps_;
  Eigen::MatrixXd m_;
};

// T orthogonal d x d blocks, acting on factors from the right.
class BlockOrthogonal {
 public:
  // Validates each block against ||B^T B - I||_F <= 1e-10.
  explicit BlockOrthogonal(std::vector<Eigen::MatrixXd> blocks);

  static BlockOrthogonal identity(int d, int steps);

  int dim() const { return static_cast<int>(blocks_.front().rows()); }
  int steps() const { return static_cast<int>(blocks_.size()); }
  const Eigen::MatrixXd& block(int t) const { return blocks_.at(t); }

 private:
  std::vector<Eigen::MatrixXd> blocks_;
};

// L * O: rotates each block column of the factor.
LowerBlockFactor apply_rotation(const LowerBlockFactor& factor,
                                const BlockOrthogonal& rotation);

// Centered-or-not Gaussian process: X = mean + factor * G.
struct GaussianProcess {
  GaussianProcess() = default;
  GaussianProcess(Eigen::VectorXd mean_in, LowerBlockFactor factor_in);

  static GaussianProcess centered(LowerBlockFactor factor_in);

  Eigen::VectorXd mean;
  LowerBlockFactor factor;
};

// Per-time autoregressive coefficients and volatilities of a univariate
// AR(1) model X_t = alpha_t X_{t-1} + sigma_t G_t (alphas[0] unused).
struct Ar1Spec {
  Eigen::VectorXd alphas;
  Eigen::VectorXd sigmas;
};

// Column covariance of column t: the PSD rank-<=d matrix C_t C_t^T built
// from the truncated column.
Eigen::MatrixXd column_covariance(const LowerBlockFactor& factor, int t);

// Full process covariance L L^T (exactly symmetric).
Eigen::MatrixXd covariance(const LowerBlockFactor& factor);

// Factors a PSD covariance back into a block-lower-triangular factor.
// Positive definite inputs take the Cholesky route; singular PSD inputs are
// built block-row by block-row from conditional covariances.
LowerBlockFactor from_covariance(const Eigen::MatrixXd& sigma, int d);

// True iff every per-time Gram block (L^T L)_{t,t} has smallest eigenvalue
// above tol (tol < 0 selects the default 1e-10 * ||L||_F^2).
bool is_regular(const LowerBlockFactor& factor, double tol = -1.0);

// True iff all column covariances agree within
// tol * max(1, ||col_cov_t(lhs)||_F).
bool classes_equal(const LowerBlockFactor& lhs, const LowerBlockFactor& rhs,
                   double tol);

// Canonical class representative with PSD symmetric diagonal blocks (unique
// for regular factors; for d = 1 this makes the diagonal nonnegative).
LowerBlockFactor canonicalize(const LowerBlockFactor& factor);

// Factor of the AR(1) model: entry (t, s) is sigma_s * prod_{k=s+1..t}
// alpha_k. Sigmas must be strictly positive; the result is regular.
LowerBlockFactor ar1_factor(const Ar1Spec& spec);

}  // namespace abw
