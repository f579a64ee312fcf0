#include "core/process.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "core/matcore.hpp"

namespace abw {

namespace {

void check_shape_args(int d, int steps) {
  if (d < 1 || steps < 1) {
    fail(ErrorCode::InvalidArgument,
         "factor shape requires d >= 1 and T >= 1, got d=" +
             std::to_string(d) + ", T=" + std::to_string(steps));
  }
}

}  // namespace

LowerBlockFactor::LowerBlockFactor(int d, int steps)
    : d_(d), steps_(steps) {
  check_shape_args(d, steps);
  m_ = Eigen::MatrixXd::Zero(size(), size());
}

LowerBlockFactor LowerBlockFactor::identity(int d, int steps) {
  check_shape_args(d, steps);
  return LowerBlockFactor(d, steps,
                          Eigen::MatrixXd::Identity(d * steps, d * steps));
}

LowerBlockFactor LowerBlockFactor::from_matrix(int d,
                                               const Eigen::MatrixXd& m) {
  if (d < 1) {
    fail(ErrorCode::InvalidArgument,
         "from_matrix: d must be positive, got " + std::to_string(d));
  }
  if (m.rows() != m.cols()) {
    fail(ErrorCode::InvalidArgument,
         "from_matrix: matrix is " + std::to_string(m.rows()) + "x" +
             std::to_string(m.cols()) + ", expected square");
  }
  if (m.rows() % d != 0) {
    fail(ErrorCode::DimensionNotMultiple,
         "from_matrix: matrix size " + std::to_string(m.rows()) +
             " is not a multiple of d=" + std::to_string(d));
  }
  const int steps = static_cast<int>(m.rows()) / d;
  for (int t = 0; t < steps; ++t) {
    for (int s = t + 1; s < steps; ++s) {
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          if (m(t * d + i, s * d + j) != 0.0) {
            fail(ErrorCode::InvalidArgument,
                 "from_matrix: upper-block entry (" +
                     std::to_string(t * d + i) + "," +
                     std::to_string(s * d + j) + ") must be 0");
          }
        }
      }
    }
  }
  return LowerBlockFactor(d, steps, m);
}

void LowerBlockFactor::check_time_index(int t, const char* context) const {
  if (t < 0 || t >= steps_) {
    fail(ErrorCode::IndexOutOfRange,
         std::string(context) + ": time index " + std::to_string(t) +
             " outside [0, " + std::to_string(steps_ - 1) + "]");
  }
}

Eigen::Block<const Eigen::MatrixXd> LowerBlockFactor::block(int t,
                                                            int s) const {
  check_time_index(t, "block");
  check_time_index(s, "block");
  return m_.block(t * d_, s * d_, d_, d_);
}

void LowerBlockFactor::set_block(int t, int s, const Eigen::MatrixXd& value) {
  check_time_index(t, "set_block");
  check_time_index(s, "set_block");
  if (s > t) {
    fail(ErrorCode::InvalidArgument,
         "set_block: block (" + std::to_string(t) + "," + std::to_string(s) +
             ") lies above the block diagonal");
  }
  if (value.rows() != d_ || value.cols() != d_) {
    fail(ErrorCode::DimensionMismatch,
         "set_block: block must be " + std::to_string(d_) + "x" +
             std::to_string(d_));
  }
  m_.block(t * d_, s * d_, d_, d_) = value;
}

Eigen::Block<const Eigen::MatrixXd> LowerBlockFactor::truncated_column(
    int t) const {
  check_time_index(t, "truncated_column");
  return m_.block(t * d_, t * d_, (steps_ - t) * d_, d_);
}

void LowerBlockFactor::set_truncated_column(int t,
                                            const Eigen::MatrixXd& value) {
  check_time_index(t, "set_truncated_column");
  const int rows = (steps_ - t) * d_;
  if (value.rows() != rows || value.cols() != d_) {
    fail(ErrorCode::DimensionMismatch,
         "set_truncated_column: expected " + std::to_string(rows) + "x" +
             std::to_string(d_) + ", got " + std::to_string(value.rows()) +
             "x" + std::to_string(value.cols()));
  }
  m_.block(t * d_, t * d_, rows, d_) = value;
}

BlockOrthogonal::BlockOrthogonal(std::vector<Eigen::MatrixXd> blocks)
    : blocks_(std::move(blocks)) {
  if (blocks_.empty()) {
    fail(ErrorCode::InvalidArgument, "BlockOrthogonal: no blocks given");
  }
  const Eigen::Index d = blocks_.front().rows();
  for (size_t t = 0; t < blocks_.size(); ++t) {
    const Eigen::MatrixXd& b = blocks_[t];
    if (b.rows() != d || b.cols() != d) {
      fail(ErrorCode::DimensionMismatch,
           "BlockOrthogonal: block " + std::to_string(t) +
               " has inconsistent shape");
    }
    const double defect =
        (b.transpose() * b - Eigen::MatrixXd::Identity(d, d)).norm();
    if (defect > 1e-10) {
      fail(ErrorCode::InvalidArgument,
           "BlockOrthogonal: block " + std::to_string(t) +
               " fails orthogonality by " + std::to_string(defect));
    }
  }
}

BlockOrthogonal BlockOrthogonal::identity(int d, int steps) {
  check_shape_args(d, steps);
  return BlockOrthogonal(
      std::vector<Eigen::MatrixXd>(steps, Eigen::MatrixXd::Identity(d, d)));
}

LowerBlockFactor apply_rotation(const LowerBlockFactor& factor,
                                const BlockOrthogonal& rotation) {
  if (rotation.dim() != factor.dim() ||
      rotation.steps() != factor.steps()) {
    fail(ErrorCode::DimensionMismatch,
         "apply_rotation: rotation shape does not match factor");
  }
  LowerBlockFactor out = factor;
  for (int t = 0; t < factor.steps(); ++t) {
    out.set_truncated_column(t,
                             factor.truncated_column(t) * rotation.block(t));
  }
  return out;
}

GaussianProcess::GaussianProcess(Eigen::VectorXd mean_in,
                                 LowerBlockFactor factor_in)
    : mean(std::move(mean_in)), factor(std::move(factor_in)) {
  if (mean.size() != factor.size()) {
    fail(ErrorCode::DimensionMismatch,
         "GaussianProcess: mean has " + std::to_string(mean.size()) +
             " entries, factor expects " + std::to_string(factor.size()));
  }
}

GaussianProcess GaussianProcess::centered(LowerBlockFactor factor_in) {
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(factor_in.size());
  return GaussianProcess(std::move(zero), std::move(factor_in));
}

Eigen::MatrixXd column_covariance(const LowerBlockFactor& factor, int t) {
  const Eigen::MatrixXd col = factor.truncated_column(t);
  Eigen::MatrixXd cov = col * col.transpose();
  return (cov + cov.transpose()) / 2;
}

Eigen::MatrixXd covariance(const LowerBlockFactor& factor) {
  Eigen::MatrixXd cov = factor.matrix() * factor.matrix().transpose();
  return (cov + cov.transpose()) / 2;
}

LowerBlockFactor from_covariance(const Eigen::MatrixXd& sigma, int d) {
  if (d < 1) {
    fail(ErrorCode::InvalidArgument,
         "from_covariance: d must be positive, got " + std::to_string(d));
  }
  if (sigma.rows() != sigma.cols()) {
    fail(ErrorCode::NotPsd, "from_covariance: covariance must be square");
  }
  if (sigma.rows() % d != 0) {
    fail(ErrorCode::DimensionNotMultiple,
         "from_covariance: size " + std::to_string(sigma.rows()) +
             " is not a multiple of d=" + std::to_string(d));
  }
  try {
    require_symmetric(sigma, "from_covariance");
  } catch (const Error& e) {
    fail(ErrorCode::NotPsd, e.what());
  }
  const int steps = static_cast<int>(sigma.rows()) / d;
  const double scale = std::max(1.0, sigma.norm());
  const double recon_tol = 1e-8 * scale;

  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma,
                                                      Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8 * scale) {
      fail(ErrorCode::NotPsd,
           "from_covariance: eigenvalue " +
               std::to_string(es.eigenvalues().minCoeff()) +
               " below PSD tolerance");
    }
  }

  // Positive definite inputs: plain Cholesky.
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() == Eigen::Success) {
    Eigen::MatrixXd l = llt.matrixL();
    if ((l * l.transpose() - sigma).norm() <= recon_tol) {
      return LowerBlockFactor::from_matrix(d, l);
    }
  }

  // Singular PSD inputs: build block-row t by solving the cross covariance
  // against the rows already constructed, then factor the conditional (Schur
  // complement) residual clipped to PSD.
  LowerBlockFactor out(d, steps);
  for (int t = 0; t < steps; ++t) {
    Eigen::MatrixXd row = Eigen::MatrixXd::Zero(d, t * d);
    if (t > 0) {
      const Eigen::MatrixXd prev =
          out.matrix().topLeftCorner(t * d, t * d);
      const Eigen::MatrixXd cross_t = sigma.block(0, t * d, t * d, d);
      // Least-squares row solve: minimize ||prev * X - cross_t||_F.
      row = prev.completeOrthogonalDecomposition().solve(cross_t).transpose();
      for (int s = 0; s < t; ++s) {
        out.set_block(t, s, row.middleCols(s * d, d));
      }
    }
    Eigen::MatrixXd cond =
        sigma.block(t * d, t * d, d, d) - row * row.transpose();
    cond = (cond + cond.transpose()) / 2;
    out.set_block(t, t, psd_factor(cond, d));
  }

  const double defect = (out.matrix() * out.matrix().transpose() - sigma).norm();
  if (defect > recon_tol) {
    fail(ErrorCode::NotPsd,
         "from_covariance: input is not PSD within tolerance "
         "(reconstruction defect " +
             std::to_string(defect) + ")");
  }
  return out;
}

bool is_regular(const LowerBlockFactor& factor, double tol) {
  if (tol < 0.0) {
    const double n = factor.norm();
    tol = 1e-10 * n * n;
  }
  for (int t = 0; t < factor.steps(); ++t) {
    const Eigen::MatrixXd col = factor.truncated_column(t);
    Eigen::MatrixXd gram = col.transpose() * col;
    gram = (gram + gram.transpose()) / 2;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram,
                                                      Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > tol)) return false;
  }
  return true;
}

bool classes_equal(const LowerBlockFactor& lhs, const LowerBlockFactor& rhs,
                   double tol) {
  if (!lhs.same_shape(rhs)) {
    fail(ErrorCode::DimensionMismatch,
         "classes_equal: factors have different shapes");
  }
  for (int t = 0; t < lhs.steps(); ++t) {
    const Eigen::MatrixXd cl = column_covariance(lhs, t);
    const Eigen::MatrixXd cr = column_covariance(rhs, t);
    if ((cl - cr).norm() > tol * std::max(1.0, cl.norm())) return false;
  }
  return true;
}

LowerBlockFactor canonicalize(const LowerBlockFactor& factor) {
  std::vector<Eigen::MatrixXd> blocks;
  blocks.reserve(factor.steps());
  for (int t = 0; t < factor.steps(); ++t) {
    const Eigen::MatrixXd diag = factor.block(t, t);
    blocks.push_back(procrustes_align(diag.transpose()).rotation);
  }
  return apply_rotation(factor, BlockOrthogonal(std::move(blocks)));
}

LowerBlockFactor ar1_factor(const Ar1Spec& spec) {
  const int steps = static_cast<int>(spec.sigmas.size());
  if (steps < 1) {
    fail(ErrorCode::InvalidArgument, "ar1_factor: sigmas must be nonempty");
  }
  if (spec.alphas.size() != steps) {
    fail(ErrorCode::DimensionMismatch,
         "ar1_factor: alphas has " + std::to_string(spec.alphas.size()) +
             " entries, sigmas has " + std::to_string(steps));
  }
  for (int t = 0; t < steps; ++t) {
    if (!(spec.sigmas(t) > 0.0)) {
      fail(ErrorCode::NonPositiveSigma,
           "ar1_factor: sigmas[" + std::to_string(t) +
               "] must be strictly positive, got " +
               std::to_string(spec.sigmas(t)));
    }
  }
  LowerBlockFactor out(1, steps);
  Eigen::MatrixXd cell(1, 1);
  for (int s = 0; s < steps; ++s) {
    double value = spec.sigmas(s);
    cell(0, 0) = value;
    out.set_block(s, s, cell);
    for (int t = s + 1; t < steps; ++t) {
      value *= spec.alphas(t);
      cell(0, 0) = value;
      out.set_block(t, s, cell);
    }
  }
  return out;
}

}  // namespace abw
