#include <doctest.h>

#include <random>

#include "iwasawa/acs.hpp"
#include "iwasawa/echelon.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/forms.hpp"
#include "iwasawa/sampling.hpp"

using namespace iwasawa;

namespace {

// Defining property used as the oracle below: a (1,0) covector r obeys
// r(Jx) = i r(x) for all x, i.e. J^T r = i r.
double p10_defect(const ACS& acs, const Eigen::Matrix<Complex, 1, 6>& row) {
  Vec6c r = row.transpose();
  return (acs.J.transpose().cast<Complex>() * r - Complex(0.0, 1.0) * r).cwiseAbs().maxCoeff();
}

ACS swap_structure() {
  Mat36c rows = Mat36c::Zero();
  rows(0, 0) = 1.0, rows(0, 4) = Complex(0, 1);
  rows(1, 1) = 1.0, rows(1, 2) = Complex(0, 1);
  rows(2, 3) = 1.0, rows(2, 5) = Complex(0, 1);
  return acs_from_covectors(rows);
}

}  // namespace

TEST_CASE("standard structures have the expected block form") {
  Mat6d expected = Mat6d::Zero();
  for (int b = 0; b < 3; ++b) {
    expected(2 * b, 2 * b + 1) = -1.0;
    expected(2 * b + 1, 2 * b) = 1.0;
  }
  CHECK((j0().J - expected).cwiseAbs().maxCoeff() == 0.0);

  Mat6d expected1 = expected;
  expected1.block<4, 4>(2, 2) *= -1.0;
  CHECK((j1().J - expected1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("p10 rows satisfy the eigen-covector property and rebuild J") {
  std::mt19937_64 rng(23);
  for (int s = 0; s < 100; ++s) {
    ACS acs = random_acs(rng);
    const double scale = std::max(1.0, acs.J.cwiseAbs().maxCoeff());
    PBasis pb = p10_basis(acs);
    for (int i = 0; i < 3; ++i) CHECK(p10_defect(acs, pb.rows.row(i)) <= 1e-10 * scale);
    CHECK((acs_from_covectors(pb.rows).J - acs.J).cwiseAbs().maxCoeff() <= 1e-10 * scale);
  }
}

TEST_CASE("structure validation rejects matrices that do not square to minus one") {
  Mat6d m = j0().J;
  m(0, 1) += 0.05;
  CHECK_THROWS_AS(ACS{m}, ValidationError);
  CHECK((ACS::unchecked(m).J - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("integrability of the anchors and of a pair-swapping control") {
  CHECK(is_integrable(j0()));
  CHECK(is_integrable(j1()));
  CHECK(dbar_obstruction(j0()) <= 1e-12);
  CHECK(dbar_obstruction(j1()) <= 1e-12);

  ACS bad = swap_structure();
  CHECK(!is_integrable(bad));
  CHECK(dbar_obstruction(bad) > 1e-3);
  bool nonzero = false;
  for (int i = 1; i <= 6 && !nonzero; ++i)
    for (int j = i + 1; j <= 6 && !nonzero; ++j)
      nonzero = nijenhuis(bad, basis_vector(i), basis_vector(j)).cwiseAbs().maxCoeff() > 1e-3;
  CHECK(nonzero);
}

TEST_CASE("nijenhuis vanishes identically for integrable structures") {
  for (const ACS& acs : {j0(), j1()}) {
    for (int i = 1; i <= 6; ++i)
      for (int j = i + 1; j <= 6; ++j)
        CHECK(nijenhuis(acs, basis_vector(i), basis_vector(j)).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("kernel invariance and the base restriction") {
  CHECK(d_invariant(j0()));
  CHECK(d_invariant(j1()));
  CHECK(!d_invariant(swap_structure()));

  Mat4d r0 = restrict_to_D(j0());
  CHECK((r0 - j0().J.topLeftCorner<4, 4>()).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(restrict_to_D(swap_structure()), ValidationError);
}

TEST_CASE("orientation signs at the anchors and under negation") {
  CHECK(orientation_total(j0()) == 1);
  CHECK(orientation_total(j1()) == 1);
  CHECK(orientation_D(restrict_to_D(j0())) == 1);
  CHECK(orientation_D(restrict_to_D(j1())) == -1);

  // Negating J conjugates the (1,0) space.  Three covector pairs swap with an
  // odd sign, so the six dimensional orientation flips; two pairs swap on the
  // invariant subspace, so that orientation is unchanged.
  CHECK(orientation_total(ACS(Mat6d(-j0().J))) == -1);
  CHECK(orientation_D(Mat4d(-restrict_to_D(j0()))) == 1);

  Mat4d refl = Mat4d::Identity();
  refl(0, 0) = -1.0;
  CHECK(orientation_D(Mat4d(refl * restrict_to_D(j0()) * refl)) == -1);
}

TEST_CASE("four dimensional covector helpers mirror the six dimensional ones") {
  std::mt19937_64 rng(29);
  for (int s = 0; s < 50; ++s) {
    ACS acs = j_from_echelon_plus(random_echelon_plus(rng, 1.2));
    Mat4d jd = restrict_to_D(acs);
    Mat24c rows = p10_basis4(jd);
    for (int i = 0; i < 2; ++i) {
      Eigen::Vector4cd r = rows.row(i).transpose();
      CHECK((jd.transpose().cast<Complex>() * r - Complex(0, 1) * r).cwiseAbs().maxCoeff() <=
            1e-10);
    }
    const double scale = std::max(1.0, std::pow(jd.cwiseAbs().maxCoeff(), 2.0));
    CHECK((acs4_from_covectors(rows) - jd).cwiseAbs().maxCoeff() <= 1e-10 * scale);
  }
}
