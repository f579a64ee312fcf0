#include <cmath>
#include <numbers>
#include <random>

#include "core/matcore.hpp"
#include "doctest.h"
#include "helpers.hpp"

using abw::Error;
using abw::ErrorCode;

TEST_CASE("psd_sqrt on identity and diagonal inputs") {
  const Eigen::MatrixXd id3 = Eigen::MatrixXd::Identity(3, 3);
  CHECK((abw::psd_sqrt(id3) - id3).norm() < 1e-14);

  Eigen::MatrixXd d(2, 2);
  d << 4, 0, 0, 9;
  Eigen::MatrixXd expected(2, 2);
  expected << 2, 0, 0, 3;
  CHECK((abw::psd_sqrt(d) - expected).norm() < 1e-14);
}

TEST_CASE("psd_sqrt squares back to its input") {
  Eigen::MatrixXd a(2, 2);
  a << 1, 0.5, 0.5, 1.25;
  const Eigen::MatrixXd b = abw::psd_sqrt(a);
  CHECK((b * b - a).norm() < 1e-10 * std::max(1.0, a.norm()));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const Eigen::MatrixXd psd = testutil::random_psd(n, rng);
    const Eigen::MatrixXd root = abw::psd_sqrt(psd);
    CHECK((root * root - psd).norm() <= 1e-10 * std::max(1.0, psd.norm()));
    CHECK((root - root.transpose()).norm() < 1e-12 * std::max(1.0, psd.norm()));
  }
}

TEST_CASE("psd_sqrt rejects bad inputs") {
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.2, -0.2, 1;
  CHECK_THROWS_WITH_AS(abw::psd_sqrt(asym), doctest::Contains("psd_sqrt"),
                       Error);

  Eigen::MatrixXd indef(2, 2);
  indef << 1, 0, 0, -1;
  try {
    abw::psd_sqrt(indef);
    FAIL("expected IndefiniteInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IndefiniteInput);
  }
}

TEST_CASE("bw_distance basics") {
  Eigen::MatrixXd a(2, 2);
  a << 1, 0.5, 0.5, 1.25;
  CHECK(abw::bw_distance(a, a) == doctest::Approx(0.0).epsilon(1e-12));

  Eigen::MatrixXd four(1, 1), nine(1, 1);
  four << 4;
  nine << 9;
  CHECK(abw::bw_distance(four, nine) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bw_distance matches the closed-form 2x2 oracle") {
  Eigen::Matrix2d a, b;
  a << 1, 0.5, 0.5, 1.25;
  b << 1, -0.5, -0.5, 1.25;
  const double expected = testutil::bw_oracle_2x2(a, b);
  CHECK(abw::bw_distance(a, b) == doctest::Approx(expected).epsilon(1e-10));

  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Matrix2d ra = testutil::random_psd(2, rng);
    Eigen::Matrix2d rb = testutil::random_psd(2, rng);
    CHECK(abw::bw_distance(ra, rb) ==
          doctest::Approx(testutil::bw_oracle_2x2(ra, rb)).epsilon(1e-8));
  }
}

TEST_CASE("bw_distance is exactly symmetric and satisfies the triangle "
          "inequality") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const Eigen::MatrixXd a = testutil::random_psd(n, rng);
    const Eigen::MatrixXd b = testutil::random_psd(n, rng);
    const Eigen::MatrixXd c = testutil::random_psd(n, rng);
    const double ab = abw::bw_distance(a, b);
    const double ba = abw::bw_distance(b, a);
    CHECK(ab == ba);  // bit-identical by the fixed evaluation order
    CHECK(ab >= 0.0);
    CHECK(abw::bw_distance(a, c) <= ab + abw::bw_distance(b, c) + 1e-8);
  }
}

TEST_CASE("bw_distance rejects shape mismatches") {
  try {
    abw::bw_distance(Eigen::MatrixXd::Identity(2, 2),
                     Eigen::MatrixXd::Identity(3, 3));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("procrustes_align closed-form cases") {
  const auto id = abw::procrustes_align(Eigen::MatrixXd::Identity(2, 2));
  CHECK((id.rotation - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);
  CHECK(id.nuclear == doctest::Approx(2.0));

  Eigen::MatrixXd neg(1, 1);
  neg << -3;
  const auto scalar = abw::procrustes_align(neg);
  CHECK(scalar.rotation(0, 0) == -1.0);
  CHECK(scalar.nuclear == doctest::Approx(3.0));
}

TEST_CASE("procrustes_align beats a dense rotation/reflection grid") {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, 1, 0;
  const auto aligned = abw::procrustes_align(m);
  CHECK(aligned.nuclear == doctest::Approx(2.0));
  CHECK((aligned.rotation - m).norm() < 1e-12);

  // Brute force over O(2): rotations and reflections on an angle grid.
  double best = -1e300;
  for (int k = 0; k < 20000; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / 20000.0;
    const double c = std::cos(theta), s = std::sin(theta);
    Eigen::Matrix2d rot, refl;
    rot << c, -s, s, c;
    refl << c, s, s, -c;
    best = std::max(best, (m * rot.transpose()).trace());
    best = std::max(best, (m * refl.transpose()).trace());
  }
  CHECK(aligned.nuclear >= best - 1e-6);
  CHECK((m * aligned.rotation.transpose()).trace() ==
        doctest::Approx(aligned.nuclear).epsilon(1e-12));
}

TEST_CASE("procrustes_align dominates random orthogonal competitors") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int d = 1; d <= 4; ++d) {
    std::vector<Eigen::MatrixXd> pool;
    for (int k = 0; k < 1000; ++k)
      pool.push_back(testutil::random_orthogonal(d, rng));
    for (int trial = 0; trial < 250; ++trial) {
      Eigen::MatrixXd m(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = gauss(rng);
      const auto aligned = abw::procrustes_align(m);
      const double attained = (m * aligned.rotation.transpose()).trace();
      CHECK(attained == doctest::Approx(aligned.nuclear).epsilon(1e-10));
      for (const auto& p : pool) {
        CHECK(attained >= (m * p.transpose()).trace() - 1e-10);
      }
    }
  }
}

TEST_CASE("psd_factor reconstructs from top eigenpairs") {
  const Eigen::MatrixXd f =
      abw::psd_factor(Eigen::MatrixXd::Identity(2, 2), 2);
  CHECK(f.cols() == 2);
  CHECK((f * f.transpose() - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-10);

  Eigen::Vector2d v(1.0, 0.5);
  const Eigen::MatrixXd rank1 = v * v.transpose();
  const Eigen::MatrixXd g = abw::psd_factor(rank1, 1);
  CHECK(g.cols() == 1);
  CHECK(std::min((g.col(0) - v).norm(), (g.col(0) + v).norm()) < 1e-12);

  Eigen::MatrixXd diag(2, 2);
  diag << 4, 0, 0, 0;
  const Eigen::MatrixXd h = abw::psd_factor(diag, 1);
  CHECK(std::abs(std::abs(h(0, 0)) - 2.0) < 1e-12);
  CHECK(std::abs(h(1, 0)) < 1e-12);
}

TEST_CASE("psd_factor pads and errors as specified") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const Eigen::MatrixXd sigma = testutil::random_psd(n, rng);
    const Eigen::MatrixXd f = abw::psd_factor(sigma, n + 2);
    CHECK(f.cols() == n + 2);  // exactly rank_cap columns, zero padded
    CHECK((f * f.transpose() - sigma).norm() <=
          1e-8 * std::max(1.0, sigma.norm()));
  }

  try {
    abw::psd_factor(Eigen::MatrixXd::Identity(3, 3), 2);
    FAIL("expected RankExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RankExceeded);
  }
}
