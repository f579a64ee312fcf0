#include "core/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace abw {

namespace {

// Deterministic total order on equally-sized matrices (entry-wise in storage
// order). Used to fix the evaluation order of symmetric formulas.
bool lex_less(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double* pa = a.data();
  const double* pb = b.data();
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (pa[k] != pb[k]) return pa[k] < pb[k];
  }
  return false;
}

}  // namespace

void require_symmetric(const Eigen::MatrixXd& a, const char* context) {
  if (a.rows() != a.cols()) {
    fail(ErrorCode::NonSymmetric, std::string(context) + ": matrix is " +
                                      std::to_string(a.rows()) + "x" +
                                      std::to_string(a.cols()) +
                                      ", expected square");
  }
  const double tol = 1e-12 * std::max(1.0, a.norm());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - a(j, i)) > tol) {
        fail(ErrorCode::NonSymmetric,
             std::string(context) + ": entry (" + std::to_string(i) + "," +
                 std::to_string(j) + ") differs from its transpose by " +
                 std::to_string(std::abs(a(i, j) - a(j, i))));
      }
    }
  }
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& a) {
  require_symmetric(a, "psd_sqrt");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  Eigen::VectorXd w = es.eigenvalues();
  const double floor = -1e-8 * a.norm();
  if (w.size() > 0 && w.minCoeff() < floor) {
    fail(ErrorCode::IndefiniteInput,
         "psd_sqrt: eigenvalue " + std::to_string(w.minCoeff()) +
             " below PSD tolerance " + std::to_string(floor));
  }
  w = w.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();
}

double bw_distance(const Eigen::MatrixXd& a_in, const Eigen::MatrixXd& b_in) {
  if (a_in.rows() != b_in.rows() || a_in.cols() != b_in.cols()) {
    fail(ErrorCode::DimensionMismatch,
         "bw_distance: operands are " + std::to_string(a_in.rows()) + "x" +
             std::to_string(a_in.cols()) + " and " +
             std::to_string(b_in.rows()) + "x" + std::to_string(b_in.cols()));
  }
  require_symmetric(a_in, "bw_distance");
  require_symmetric(b_in, "bw_distance");

  const bool swap = lex_less(b_in, a_in);
  const Eigen::MatrixXd& a = swap ? b_in : a_in;
  const Eigen::MatrixXd& b = swap ? a_in : b_in;

  const Eigen::MatrixXd rb = psd_sqrt(b);
  Eigen::MatrixXd c = rb * a * rb;
  c = (c + c.transpose()) / 2;  // kill round-off asymmetry before eig
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c,
                                                    Eigen::EigenvaluesOnly);
  const double cross = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  const double radicand = a.trace() + b.trace() - 2.0 * cross;
  return std::sqrt(std::max(radicand, 0.0));
}

ProcrustesResult procrustes_align(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    fail(ErrorCode::InvalidArgument,
         "procrustes_align: matrix is " + std::to_string(m.rows()) + "x" +
             std::to_string(m.cols()) + ", expected square");
  }
  if (m.rows() == 1) {
    const double x = m(0, 0);
    Eigen::MatrixXd o(1, 1);
    o(0, 0) = (x < 0.0) ? -1.0 : 1.0;
    return {o, std::abs(x)};
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.matrixU() * svd.matrixV().transpose(),
          svd.singularValues().sum()};
}

Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& sigma, int rank_cap) {
  if (rank_cap < 1) {
    fail(ErrorCode::InvalidArgument,
         "psd_factor: rank_cap must be positive, got " +
             std::to_string(rank_cap));
  }
  require_symmetric(sigma, "psd_factor");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
  const Eigen::VectorXd& w = es.eigenvalues();  // ascending
  const Eigen::Index n = sigma.rows();

  const double threshold = 1e-8 * sigma.norm();
  Eigen::Index significant = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (w(i) > threshold) ++significant;
  }
  if (significant > rank_cap) {
    fail(ErrorCode::RankExceeded,
         "psd_factor: " + std::to_string(significant) +
             " significant eigenvalues exceed rank cap " +
             std::to_string(rank_cap));
  }

  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, rank_cap);
  for (int j = 0; j < rank_cap && j < n; ++j) {
    const Eigen::Index idx = n - 1 - j;  // descending eigenvalue order
    const double lambda = std::max(w(idx), 0.0);
    f.col(j) = std::sqrt(lambda) * es.eigenvectors().col(idx);
  }
  return f;
}

}  // namespace abw
