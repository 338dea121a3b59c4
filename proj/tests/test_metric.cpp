#include <doctest.h>

#include <random>

#include "iwasawa/acs.hpp"
#include "iwasawa/echelon.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/forms.hpp"
#include "iwasawa/metric.hpp"
#include "iwasawa/sampling.hpp"
#include "iwasawa/spectra.hpp"

using namespace iwasawa;

namespace {

// Oracle: project onto the two bases by coefficient inner products; the
// basis vectors have squared length 2 in coefficient coordinates.
SDSplit split_oracle(const Form2D& w) {
  SDSplit out;
  for (int i = 0; i < 3; ++i) {
    out.plus(i) = w.dot(form2d_of(sd_basis_plus(i))) / 2.0;
    out.minus(i) = w.dot(form2d_of(sd_basis_minus(i))) / 2.0;
  }
  return out;
}

}  // namespace

TEST_CASE("splitting agrees with the projection oracle and reassembles") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int s = 0; s < 200; ++s) {
    Form2D w;
    for (int k = 0; k < 6; ++k) w(k) = d(rng);
    SDSplit sp = sd_split(w);
    SDSplit oracle = split_oracle(w);
    CHECK((sp.plus - oracle.plus).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((sp.minus - oracle.minus).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((sd_assemble(sp) - w).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("frozen split of a coordinate form") {
  Form2D e12 = Form2D::Zero();
  e12(0) = 1.0;
  SDSplit sp = sd_split(e12);
  CHECK((sp.plus - Eigen::Vector3d(0.5, 0, 0)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((sp.minus - Eigen::Vector3d(0.5, 0, 0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("basis pairings under the wedge") {
  const MultiIndex top({1, 2, 3, 4});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(wedge(sd_basis_plus(i), sd_basis_plus(j)).coeff(top).real() ==
            (i == j ? 2.0 : 0.0));
      CHECK(wedge(sd_basis_minus(i), sd_basis_minus(j)).coeff(top).real() ==
            (i == j ? -2.0 : 0.0));
      CHECK(wedge(sd_basis_plus(i), sd_basis_minus(j)).coeff(top) == Complex(0.0, 0.0));
    }
}

TEST_CASE("differentials of the fiber covectors are self-dual") {
  CHECK(sd_split(form2d_of(ce_differential(e_form(5)))).minus.norm() == 0.0);
  CHECK(sd_split(form2d_of(ce_differential(e_form(6)))).minus.norm() == 0.0);
}

TEST_CASE("fundamental forms of the anchors") {
  KForm g0(2);
  g0.set_coeff(MultiIndex({1, 2}), 1.0);
  g0.set_coeff(MultiIndex({3, 4}), 1.0);
  g0.set_coeff(MultiIndex({5, 6}), 1.0);
  CHECK((fundamental_form(j0()) - g0).is_zero(0.0));

  KForm g1(2);
  g1.set_coeff(MultiIndex({1, 2}), 1.0);
  g1.set_coeff(MultiIndex({3, 4}), -1.0);
  g1.set_coeff(MultiIndex({5, 6}), -1.0);
  CHECK((fundamental_form(j1()) - g1).is_zero(0.0));

  // The base restriction of the second anchor is purely anti-self-dual.
  SDSplit sp = sd_split(fundamental_form_d(restrict_to_D(j1())));
  CHECK(sp.plus.norm() == 0.0);
  CHECK((sp.minus - Eigen::Vector3d(1, 0, 0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("orthogonality detection") {
  CHECK(is_orthogonal(j0()));
  CHECK(is_orthogonal(j1()));
  std::mt19937_64 rng(71);
  ACS generic = j_from_echelon_plus(random_echelon_plus(rng, 1.0));
  CHECK(!is_orthogonal(generic));
  CHECK_THROWS_AS(fundamental_form(generic), ValidationError);
}

TEST_CASE("plus chart restriction is orthogonal exactly on the symmetric slice") {
  std::mt19937_64 rng(73);
  for (int s = 0; s < 30; ++s) {
    Complex b = random_complex(rng, 0.9);
    Complex x = random_complex(rng, 1.5), y = random_complex(rng, 1.5);
    CHECK(is_orthogonal_d(restrict_to_D(j_from_echelon_plus({0.0, b, -b, 0.0, x, y}))));
  }
  CHECK(!is_orthogonal_d(restrict_to_D(j_from_echelon_plus({0.0, 0.5, 0.5, 0.0, 0, 0}))));
  CHECK(!is_orthogonal_d(restrict_to_D(j_from_echelon_plus({0.2, 0.5, -0.5, 0.0, 0, 0}))));
}

TEST_CASE("hemisphere chart anchors, side rule and round trip") {
  SphereCoord p0 = hemisphere_coords(0.0);
  CHECK(p0.A == doctest::Approx(1.0));
  SphereCoord pi = hemisphere_coords(Complex(0, 1));
  CHECK(pi.B == doctest::Approx(1.0));
  CHECK(std::abs(pi.A) + std::abs(pi.C) <= 1e-15);
  SphereCoord p1 = hemisphere_coords(1.0);
  CHECK(p1.C == doctest::Approx(-1.0));

  std::mt19937_64 rng(79);
  for (int s = 0; s < 300; ++s) {
    Complex b = random_complex(rng, 3.0);
    SphereCoord sc = hemisphere_coords(b);
    CHECK(std::abs(sc.A * sc.A + sc.B * sc.B + sc.C * sc.C - 1.0) <= 1e-12);
    CHECK((sc.A > 0.0) == (std::abs(b) < 1.0));
    CHECK(std::abs(hemisphere_b(sc) - b) <= 1e-12);
  }
  CHECK_THROWS_AS(hemisphere_b({-1.0, 0.0, 0.0}), DegeneracyError);
}

TEST_CASE("hemisphere chart matches the fundamental form of the lift") {
  std::mt19937_64 rng(83);
  for (int s = 0; s < 30; ++s) {
    Complex b = random_complex(rng, 0.9);
    SphereCoord sc = hemisphere_coords(b);
    Mat4d jd = restrict_to_D(j_from_echelon_plus({0.0, b, -b, 0.0, 0.1, -0.2}));
    SDSplit sp = sd_split(fundamental_form_d(jd));
    CHECK(sp.minus.norm() <= 1e-10);
    CHECK((sp.plus - Eigen::Vector3d(sc.A, sc.B, sc.C)).norm() <= 1e-10);
  }
}

TEST_CASE("sphere elements and their coordinates") {
  CHECK((z_sphere_element({1.0, 0.0, 0.0}).J - j1().J).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((z_sphere_restriction({1.0, 0.0, 0.0}) - restrict_to_D(j1())).cwiseAbs().maxCoeff() <=
        1e-12);
  CHECK_THROWS_AS(z_sphere_element({2.0, 0.0, 0.0}), ValidationError);

  std::mt19937_64 rng(89);
  for (int s = 0; s < 50; ++s) {
    Eigen::Vector3d v(uniform_pm(rng, 1.0), uniform_pm(rng, 1.0), uniform_pm(rng, 1.0));
    if (v.norm() < 1e-3) continue;
    v.normalize();
    ACS z = z_sphere_element({v(0), v(1), v(2)});
    CHECK(is_orthogonal(z));
    CHECK(is_integrable(z));
    CHECK(orientation_total(z) == 1);
    CHECK(orientation_D(restrict_to_D(z)) == -1);
    CHECK(classify(z) == Component::Cminus);
    SphereCoord rec = z_coords_of(z);
    CHECK((Eigen::Vector3d(rec.A, rec.B, rec.C) - v).norm() <= 1e-10);
  }
}

TEST_CASE("sphere elements are abelian") {
  ACS z = z_sphere_element({0.0, 1.0, 0.0});
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) {
      Vec6c lhs = lie_bracket(Vec6c(z.J.cast<Complex>() * basis_vector(i)),
                              Vec6c(z.J.cast<Complex>() * basis_vector(j)));
      Vec6c rhs = lie_bracket(basis_vector(i), basis_vector(j));
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("equator lifts obstruct, interior lifts do not") {
  CHECK(equator_obstruction_check());
  std::mt19937_64 rng(97);
  for (int s = 0; s < 30; ++s) {
    Complex x = random_complex(rng, 2.0), y = random_complex(rng, 2.0);
    CHECK(orthogonal_lift_wedge(Complex(0, 1), x, y).max_abs_coeff() <= 1e-12);
    CHECK(orthogonal_lift_wedge(Complex(0.5, 0), x, y).max_abs_coeff() > 1e-3);
  }
}
