#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "core/process.hpp"

// Shared generators and independent oracles for the test suites. The
// oracles deliberately avoid the library's own numerical paths: the 2x2
// eigendecomposition is closed-form and the adapted-distance oracle is a
// per-column sign enumeration.
namespace testutil {

inline Eigen::MatrixXd random_orthogonal(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  if (d == 1) {
    Eigen::MatrixXd o(1, 1);
    o(0, 0) = (rng() & 1u) ? 1.0 : -1.0;
    return o;
  }
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  return q;
}

inline abw::BlockOrthogonal random_block_orthogonal(int d, int steps,
                                                    std::mt19937_64& rng) {
  std::vector<Eigen::MatrixXd> blocks;
  blocks.reserve(steps);
  for (int t = 0; t < steps; ++t) blocks.push_back(random_orthogonal(d, rng));
  return abw::BlockOrthogonal(std::move(blocks));
}

// Regular by construction: diagonal blocks get an identity boost.
inline abw::LowerBlockFactor random_factor(int d, int steps,
                                           std::mt19937_64& rng,
                                           double diag_boost = 2.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  abw::LowerBlockFactor out(d, steps);
  for (int t = 0; t < steps; ++t) {
    for (int s = 0; s <= t; ++s) {
      Eigen::MatrixXd block(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) block(i, j) = gauss(rng);
      if (s == t) block += diag_boost * Eigen::MatrixXd::Identity(d, d);
      out.set_block(t, s, block);
    }
  }
  return out;
}

inline Eigen::MatrixXd random_psd(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
  Eigen::MatrixXd out = g.transpose() * g;
  return (out + out.transpose()) / 2;
}

struct Eig2 {
  double l1 = 0.0, l2 = 0.0;  // descending
  Eigen::Vector2d v1, v2;
};

// Closed-form symmetric 2x2 eigendecomposition.
inline Eig2 eig2_sym(const Eigen::Matrix2d& m) {
  const double a = m(0, 0), b = m(0, 1), c = m(1, 1);
  Eig2 out;
  const double half_tr = (a + c) / 2;
  const double disc = std::sqrt(std::max((a - c) * (a - c) / 4 + b * b, 0.0));
  out.l1 = half_tr + disc;
  out.l2 = half_tr - disc;
  if (std::abs(b) < 1e-300) {
    if (a >= c) {
      out.v1 = Eigen::Vector2d(1, 0);
      out.v2 = Eigen::Vector2d(0, 1);
    } else {
      out.v1 = Eigen::Vector2d(0, 1);
      out.v2 = Eigen::Vector2d(1, 0);
    }
  } else {
    out.v1 = Eigen::Vector2d(b, out.l1 - a).normalized();
    out.v2 = Eigen::Vector2d(b, out.l2 - a).normalized();
  }
  return out;
}

inline Eigen::Matrix2d sqrt2_sym_oracle(const Eigen::Matrix2d& m) {
  const Eig2 e = eig2_sym(m);
  return std::sqrt(std::max(e.l1, 0.0)) * e.v1 * e.v1.transpose() +
         std::sqrt(std::max(e.l2, 0.0)) * e.v2 * e.v2.transpose();
}

inline double bw_oracle_2x2(const Eigen::Matrix2d& a,
                            const Eigen::Matrix2d& b) {
  const Eigen::Matrix2d rb = sqrt2_sym_oracle(b);
  Eigen::Matrix2d c = rb * a * rb;
  c = (c + c.transpose()) / 2;
  const Eig2 e = eig2_sym(c);
  const double cross = std::sqrt(std::max(e.l1, 0.0)) +
                       std::sqrt(std::max(e.l2, 0.0));
  return std::sqrt(std::max(a.trace() + b.trace() - 2 * cross, 0.0));
}

// Exact d = 1 adapted distance: per column, the better of the two signs.
inline double abw_oracle_1d(const abw::LowerBlockFactor& lhs,
                            const abw::LowerBlockFactor& rhs) {
  double total = 0.0;
  for (int t = 0; t < lhs.steps(); ++t) {
    const Eigen::VectorXd cl = lhs.truncated_column(t);
    const Eigen::VectorXd cr = rhs.truncated_column(t);
    total += std::min((cl - cr).squaredNorm(), (cl + cr).squaredNorm());
  }
  return std::sqrt(total);
}

inline abw::LowerBlockFactor sec5_factor(double alpha2) {
  abw::Ar1Spec spec;
  spec.alphas = Eigen::Vector2d(0.0, alpha2);
  spec.sigmas = Eigen::Vector2d(1.0, 1.0);
  return abw::ar1_factor(spec);
}

}  // namespace testutil
