#pragma once

#include <Eigen/Dense>

#include "core/errors.hpp"

namespace abw {

// Dense symmetric/PSD primitives shared by the distance and barycenter code.
// All tolerances are relative to the Frobenius norm with an absolute floor,
// matching the conventions used throughout the library.

// Throws NonSymmetric unless |A(i,j) - A(j,i)| <= 1e-12 * max(1, ||A||_F).
void require_symmetric(const Eigen::MatrixXd& a, const char* context);

// Unique PSD square root via symmetric eigendecomposition. Eigenvalues in
// [-1e-8*||A||_F, 0) are treated as round-off and clipped to zero; anything
// below that bound raises IndefiniteInput.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& a);

// Bures-Wasserstein distance between PSD matrices,
//   d^2 = tr A + tr B - 2 tr((B^{1/2} A B^{1/2})^{1/2}).
// The inner product is symmetrized before the eigendecomposition and the
// arguments are evaluated in a canonical order, so swapping A and B returns
// bit-identical results. Tiny negative radicands are clamped to zero.
double bw_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct ProcrustesResult {
  Eigen::MatrixXd rotation;  // orthogonal maximizer of tr(M O^T)
  double nuclear;            // attained maximum = sum of singular values of M
};

// Orthogonal Procrustes alignment of a square matrix: with M = U S V^T the
// maximizer of tr(M O^T) over O(d) is the unitary polar factor O = U V^T and
// the maximum equals tr(S). For singular M any valid SVD is accepted, which
// fixes the free block to the identity.
ProcrustesResult procrustes_align(const Eigen::MatrixXd& m);

// Low-rank PSD factorization from the top eigenpairs: returns an
// n x rank_cap matrix F with F F^T = sigma, columns ordered by descending
// eigenvalue (zero-padded when rank < rank_cap). Raises RankExceeded if more
// than rank_cap eigenvalues exceed 1e-8 * ||sigma||_F.
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& sigma, int rank_cap);

}  // namespace abw
