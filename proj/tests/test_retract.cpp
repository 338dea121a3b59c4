#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "iwasawa/acs.hpp"
#include "iwasawa/echelon.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/metric.hpp"
#include "iwasawa/retract.hpp"
#include "iwasawa/sampling.hpp"
#include "iwasawa/spectra.hpp"

using namespace iwasawa;

namespace {

// Oracle: quaternion product in the (scalar, i, j, k) coordinates used
// throughout, written from the defining relations.
Eigen::Vector4d qmul(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  return {a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3),
          a(0) * b(1) + a(1) * b(0) + a(2) * b(3) - a(3) * b(2),
          a(0) * b(2) - a(1) * b(3) + a(2) * b(0) + a(3) * b(1),
          a(0) * b(3) + a(1) * b(2) - a(2) * b(1) + a(3) * b(0)};
}

// Oracle: symmetric exponential through an eigendecomposition.
Mat4d sym_exp_oracle(const Mat4d& s) {
  Eigen::SelfAdjointEigenSolver<Mat4d> es(s);
  return es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() *
         es.eigenvectors().transpose();
}

Mat4d sphere_point(std::mt19937_64& rng) {
  Eigen::Vector3d v;
  do {
    v = {uniform_pm(rng, 1.0), uniform_pm(rng, 1.0), uniform_pm(rng, 1.0)};
  } while (v.norm() < 1e-3);
  v.normalize();
  return z_sphere_restriction({v(0), v(1), v(2)});
}

}  // namespace

TEST_CASE("symmetric exponential and logarithm match the eigendecomposition") {
  std::mt19937_64 rng(101);
  for (int s = 0; s < 100; ++s) {
    Mat4d a;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = uniform_pm(rng, 0.7);
    Mat4d sym = 0.5 * (a + a.transpose());
    Mat4d e = sym_exp(sym);
    CHECK((e - sym_exp_oracle(sym)).cwiseAbs().maxCoeff() <= 1e-11);
    CHECK((sym_log_spd(e) - sym).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("retraction fixes the negative sphere pointwise") {
  std::mt19937_64 rng(103);
  for (int s = 0; s < 100; ++s) {
    Mat4d p = sphere_point(rng);
    PolarSplit ps = polar_retract(p);
    CHECK((ps.P - p).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((ps.S - Mat4d::Identity()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(ps.sigma.cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("retraction inverts the constructed stretch") {
  std::mt19937_64 rng(107);
  for (int s = 0; s < 100; ++s) {
    Mat4d p = sphere_point(rng);
    Mat4d sigma = random_admissible_sigma(rng, p, 0.8);
    CHECK((sigma - p * sigma * p).cwiseAbs().maxCoeff() <= 1e-12);
    Mat4d q = sym_exp(sigma) * p;
    PolarSplit ps = polar_retract(q);
    CHECK((ps.P - p).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((ps.sigma - sigma).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((ps.P * ps.P + Mat4d::Identity()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((ps.sigma - ps.P * ps.sigma * ps.P).cwiseAbs().maxCoeff() <= 1e-9);
    Mat4d rhs = ps.P.inverse() * ps.S.inverse() * ps.P;
    CHECK((ps.S - rhs).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, ps.S.norm()));
  }
}

TEST_CASE("retraction applies to chart restrictions with reversing orientation") {
  std::mt19937_64 rng(109);
  int used = 0;
  for (int s = 0; s < 120; ++s) {
    ACS j = j_from_echelon_minus(random_echelon_minus(rng, 0.8));
    Mat4d q = restrict_to_D(j);
    if (orientation_D(q) != -1) continue;
    // The polar factor loses roughly the square of the stretch in precision,
    // so stay away from the chart wall.
    if (q.cwiseAbs().maxCoeff() > 8.0) continue;
    ++used;
    PolarSplit ps = polar_retract(q);
    CHECK((ps.S * ps.P - q).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, q.norm()));
    CHECK((ps.P * ps.P + Mat4d::Identity()).cwiseAbs().maxCoeff() <= 1e-9);
  }
  CHECK(used > 20);
  CHECK_THROWS_AS(polar_retract(restrict_to_D(j0())), ValidationError);
}

TEST_CASE("homotopy interpolates between the point and its retraction") {
  std::mt19937_64 rng(113);
  Mat4d p = sphere_point(rng);
  Mat4d q = sym_exp(random_admissible_sigma(rng, p, 0.8)) * p;
  for (int k = 0; k <= 100; ++k) {
    Mat4d h = homotopy_path(q, k / 100.0);
    CHECK((h * h + Mat4d::Identity()).cwiseAbs().maxCoeff() <= 1e-9);
  }
  CHECK((homotopy_path(q, 0.0) - polar_retract(q).P).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK((homotopy_path(q, 1.0) - q).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("rotation factors represent right quaternion multiplication") {
  std::mt19937_64 rng(127);
  // The matrix acting on coordinates must send x to x q; columns are the
  // products of the basis quaternions with q.
  const Eigen::Vector4d units[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  for (int s = 0; s < 50; ++s) {
    Eigen::Vector4d q = random_unit_quaternion(rng);
    Mat4d r = su2_minus_matrix(q);
    for (int c = 0; c < 4; ++c)
      CHECK((Eigen::Vector4d(r.col(c)) - qmul(units[c], q)).cwiseAbs().maxCoeff() <= 1e-14);
    Eigen::Vector4d q2 = random_unit_quaternion(rng);
    CHECK((su2_minus_matrix(q) * su2_minus_matrix(q2) - su2_minus_matrix(qmul(q2, q)))
              .cwiseAbs().maxCoeff() <= 1e-13);
  }
  CHECK((su2_minus_matrix({0, 1, 0, 0}) - restrict_to_D(j1())).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(su2_minus_matrix({1, 1, 0, 0}), ValidationError);
}

TEST_CASE("rotation factors fix self-dual forms and preserve brackets") {
  std::mt19937_64 rng(131);
  static const int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  auto mat_of = [&](const Form2D& w) {
    Mat4d m = Mat4d::Zero();
    for (int k = 0; k < 6; ++k) {
      m(kPairs[k][0], kPairs[k][1]) = w(k);
      m(kPairs[k][1], kPairs[k][0]) = -w(k);
    }
    return m;
  };
  for (int s = 0; s < 25; ++s) {
    Eigen::Vector4d q = random_unit_quaternion(rng);
    Mat4d r = su2_minus_matrix(q);
    for (int i = 0; i < 3; ++i) {
      Mat4d w = mat_of(form2d_of(sd_basis_plus(i)));
      CHECK((r.transpose() * w * r - w).cwiseAbs().maxCoeff() <= 1e-12);
    }
    Mat6d m6 = Mat6d::Identity();
    m6.topLeftCorner<4, 4>() = r;
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j) {
        Vec6c lhs = m6.cast<Complex>() * lie_bracket(basis_vector(i), basis_vector(j));
        Vec6c rhs = lie_bracket(Vec6c(m6.cast<Complex>() * basis_vector(i)),
                                Vec6c(m6.cast<Complex>() * basis_vector(j)));
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
      }
  }
}

TEST_CASE("the action preserves integrability and moves sphere points predictably") {
  std::mt19937_64 rng(137);
  const Eigen::Vector4d qi(0, 1, 0, 0);
  for (int s = 0; s < 25; ++s) {
    Eigen::Vector4d q = random_unit_quaternion(rng);
    ACS j = j_from_echelon_minus(random_echelon_minus(rng, 0.8));
    CHECK(is_integrable(su2_minus_action(q, j)));
    // Conjugating the anchor restriction rotates its quaternion label.
    Mat4d lhs = su2_minus_matrix(q) * restrict_to_D(j1()) * su2_minus_matrix(q).transpose();
    Eigen::Vector4d p = qmul(qmul({q(0), -q(1), -q(2), -q(3)}, qi), q);
    CHECK((lhs - su2_minus_matrix(p)).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("anchor fiber membership and its converse") {
  CHECK(fiber_b_equals_c_check(j1()));
  std::mt19937_64 rng(139);
  for (int s = 0; s < 40; ++s) {
    EchelonMinus c = random_fiber_minus(rng, 0.4);
    ACS j = j_from_echelon_minus(c);
    CHECK(fiber_b_equals_c_check(j));
    CHECK(std::abs(c.b - c.c) <= 1e-12);
  }
  EchelonMinus off{0.1, Complex(0.3, 0.1), Complex(-0.2, 0.2), 0.05, -0.1, 0.2};
  CHECK_THROWS_AS(fiber_b_equals_c_check(j_from_echelon_minus(off)), ValidationError);
}

TEST_CASE("fiber contraction starts at the sample and ends at the anchor") {
  std::mt19937_64 rng(149);
  for (int s = 0; s < 10; ++s) {
    EchelonMinus c = random_fiber_minus(rng, 0.4);
    CHECK((fiber_contract(c, 1.0).J - j_from_echelon_minus(c).J).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((fiber_contract(c, 0.0).J - j1().J).cwiseAbs().maxCoeff() <= 1e-12);
    for (int k = 0; k <= 10; ++k)
      CHECK(classify(fiber_contract(c, k / 10.0)) == Component::Cminus);
  }
  CHECK_THROWS_AS(fiber_contract(EchelonMinus{0, 0, 0, 0, 0, 0}, 1.5), ValidationError);
}

TEST_CASE("coefficient reader on the base restriction") {
  std::mt19937_64 rng(151);
  for (int s = 0; s < 25; ++s) {
    EchelonMinus c = random_echelon_minus(rng, 0.7);
    ACS j = j_from_echelon_minus(c);
    DCoeffs dc = d_chart_coeffs(restrict_to_D(j));
    CHECK(std::abs(dc.a - c.a) <= 1e-9);
    CHECK(std::abs(dc.b - c.b) <= 1e-9);
    CHECK(std::abs(dc.c - c.c) <= 1e-9);
    CHECK(std::abs(dc.d - c.d()) <= 1e-9);
  }
}
