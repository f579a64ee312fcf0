#include <random>

#include "core/simulate.hpp"
#include "doctest.h"
#include "helpers.hpp"

using abw::GaussianProcess;
using abw::LowerBlockFactor;

namespace {

Eigen::MatrixXd empirical_covariance(const Eigen::MatrixXd& paths) {
  const Eigen::RowVectorXd mean = paths.colwise().mean();
  const Eigen::MatrixXd centered = paths.rowwise() - mean;
  return centered.transpose() * centered / double(paths.rows() - 1);
}

}  // namespace

TEST_CASE("noise is deterministic in the seed") {
  const Eigen::MatrixXd a = abw::draw_noise(42, 100, 6);
  const Eigen::MatrixXd b = abw::draw_noise(42, 100, 6);
  CHECK((a - b).norm() == 0.0);
  CHECK(a.rows() == 100);
  CHECK(a.cols() == 6);
  const Eigen::MatrixXd c = abw::draw_noise(43, 100, 6);
  CHECK((a - c).norm() > 0.0);
}

TEST_CASE("noise moments look standard normal") {
  const Eigen::MatrixXd g = abw::draw_noise(7, 100000, 2);
  CHECK(std::abs(g.col(0).mean()) < 0.02);
  CHECK(std::abs(g.col(1).mean()) < 0.02);
  CHECK(g.col(0).squaredNorm() / g.rows() == doctest::Approx(1.0).epsilon(0.03));
  CHECK(g.col(1).squaredNorm() / g.rows() == doctest::Approx(1.0).epsilon(0.03));
  CHECK((g.col(0).dot(g.col(1)) / g.rows()) == doctest::Approx(0.0).epsilon(1.0));
}

TEST_CASE("zero factor reproduces the mean on every path") {
  Eigen::VectorXd mean(2);
  mean << 5.0, 5.0;
  const GaussianProcess constant(mean, LowerBlockFactor(1, 2));
  const Eigen::MatrixXd paths = abw::sample_paths(constant, 25, 1);
  for (int i = 0; i < paths.rows(); ++i) {
    CHECK(paths(i, 0) == 5.0);
    CHECK(paths(i, 1) == 5.0);
  }
}

TEST_CASE("sampled paths reproduce the covariance") {
  const GaussianProcess p =
      GaussianProcess::centered(testutil::sec5_factor(0.5));
  const Eigen::MatrixXd paths = abw::sample_paths(p, 100000, 2024);
  const Eigen::MatrixXd emp = empirical_covariance(paths);
  Eigen::MatrixXd target(2, 2);
  target << 1, 0.5, 0.5, 1.25;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CHECK(std::abs(emp(i, j) - target(i, j)) <=
            0.05 * std::abs(target(i, j)));
    }
  }

  // Same seed, same matrix.
  const Eigen::MatrixXd again = abw::sample_paths(p, 1000, 2024);
  CHECK((again - paths.topRows(1000)).norm() == 0.0);
}

TEST_CASE("CLT-scale agreement on random factors") {
  std::mt19937_64 rng(163);
  const std::int64_t n = 100000;
  for (int trial = 0; trial < 3; ++trial) {
    const int d = 1 + (trial % 2);
    const int steps = 2 + trial;
    const GaussianProcess p =
        GaussianProcess::centered(testutil::random_factor(d, steps, rng));
    const Eigen::MatrixXd target = abw::covariance(p.factor);
    const Eigen::MatrixXd emp = empirical_covariance(
        abw::sample_paths(p, n, 1000 + trial));
    const double bound = 6.0 * target.diagonal().maxCoeff() *
                         5.0 / std::sqrt(double(n));
    CHECK((emp - target).cwiseAbs().maxCoeff() <= bound);
  }
}

TEST_CASE("marginal variances agree with the covariance diagonal") {
  const LowerBlockFactor id = LowerBlockFactor::identity(1, 2);
  const Eigen::VectorXd flat = abw::marginal_variances(id);
  CHECK(flat(0) == 1.0);
  CHECK(flat(1) == 1.0);

  const Eigen::VectorXd v =
      abw::marginal_variances(testutil::sec5_factor(0.5));
  CHECK(v(0) == doctest::Approx(1.0));
  CHECK(v(1) == doctest::Approx(1.25));

  abw::Ar1Spec diag_spec;
  diag_spec.alphas = Eigen::Vector3d(0.0, 0.0, 0.0);
  diag_spec.sigmas = Eigen::Vector3d(2.0, 3.0, 0.5);
  const Eigen::VectorXd sig = abw::marginal_variances(
      abw::ar1_factor(diag_spec));
  CHECK(sig(0) == 4.0);
  CHECK(sig(1) == 9.0);
  CHECK(sig(2) == 0.25);

  std::mt19937_64 rng(167);
  const LowerBlockFactor f = testutil::random_factor(1, 5, rng);
  const Eigen::VectorXd direct = abw::marginal_variances(f);
  const Eigen::VectorXd diag = abw::covariance(f).diagonal();
  CHECK((direct - diag).norm() == 0.0);  // exact, same computation path

  const LowerBlockFactor wide = testutil::random_factor(2, 3, rng);
  const Eigen::VectorXd traces = abw::marginal_variances(wide);
  const Eigen::MatrixXd cov = abw::covariance(wide);
  for (int t = 0; t < 3; ++t) {
    CHECK(traces(t) ==
          doctest::Approx(cov.block(2 * t, 2 * t, 2, 2).trace()));
  }
}

TEST_CASE("lag covariances track the first column") {
  const Eigen::VectorXd id_lags =
      abw::lag_covariances(LowerBlockFactor::identity(1, 4));
  CHECK(id_lags(0) == 1.0);
  for (int t = 1; t < 4; ++t) CHECK(id_lags(t) == 0.0);

  const Eigen::VectorXd l1 = abw::lag_covariances(testutil::sec5_factor(0.5));
  CHECK(l1(0) == doctest::Approx(1.0));
  CHECK(l1(1) == doctest::Approx(0.5));

  abw::Ar1Spec spec;
  spec.alphas = Eigen::VectorXd::Constant(5, 0.6);
  spec.alphas(0) = 0.0;
  spec.sigmas = Eigen::VectorXd::Constant(5, 1.0);
  const Eigen::VectorXd decay = abw::lag_covariances(abw::ar1_factor(spec));
  for (int t = 0; t < 5; ++t) {
    CHECK(decay(t) == doctest::Approx(std::pow(0.6, t)).epsilon(1e-12));
  }

  std::mt19937_64 rng(173);
  CHECK_THROWS_AS((void)abw::lag_covariances(testutil::random_factor(2, 2, rng)),
                  abw::Error);
}
