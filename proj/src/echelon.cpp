#include "iwasawa/echelon.hpp"

#include <cmath>

namespace iwasawa {

namespace {

// P10 rows of acs expressed in (omega, conj-omega) coordinates.
Eigen::Matrix<Complex, 3, 6> zw_rows_of(const ACS& acs) {
  PBasis basis = p10_basis(acs);
  Eigen::Matrix<Complex, 3, 6> zw;
  for (int i = 0; i < 3; ++i)
    zw.row(i) = omega_coords(basis.rows.row(i).transpose()).transpose();
  return zw;
}

void require_integrable(const ACS& acs) {
  if (!is_integrable(acs))
    throw IntegrabilityError("echelon charts cover integrable structures only");
}

}  // namespace

std::array<KForm, 3> echelon_plus_forms(const EchelonPlus& q) {
  KForm a1 = omega_form(1) + q.a * omega_bar_form(1) + q.b * omega_bar_form(2);
  KForm a2 = omega_form(2) + q.c * omega_bar_form(1) + q.d * omega_bar_form(2);
  KForm a3 = omega_form(3) + q.x * omega_bar_form(1) + q.y * omega_bar_form(2) +
             q.u() * omega_bar_form(3);
  return {a1, a2, a3};
}

std::array<KForm, 3> echelon_minus_forms(const EchelonMinus& q) {
  KForm b1 = omega_form(1) + q.a * omega_bar_form(1) + q.b * omega_form(2);
  KForm b2 = omega_bar_form(2) + q.c * omega_bar_form(1) + q.d() * omega_form(2);
  KForm b3 = omega_bar_form(3) + q.x * omega_bar_form(1) + q.y * omega_form(2) +
             q.v * omega_form(3);
  return {b1, b2, b3};
}

ACS j_from_echelon_plus(const EchelonPlus& q) {
  auto forms = echelon_plus_forms(q);
  Mat36c rows;
  for (int i = 0; i < 3; ++i) rows.row(i) = form_to_covector(forms[i]).transpose();
  return acs_from_covectors(rows);
}

ACS j_from_echelon_minus(const EchelonMinus& q) {
  auto forms = echelon_minus_forms(q);
  Mat36c rows;
  for (int i = 0; i < 3; ++i) rows.row(i) = form_to_covector(forms[i]).transpose();
  return acs_from_covectors(rows);
}

EchelonPlus echelon_plus_from_j(const ACS& acs) {
  require_integrable(acs);
  Eigen::Matrix<Complex, 3, 6> zw = zw_rows_of(acs);
  Eigen::Matrix<Complex, 3, 3> pivot = zw.leftCols<3>();
  if (std::abs(pivot.determinant()) <= kPivotThreshold)
    throw InfinityClassError("structure lies outside the plus chart");
  Eigen::Matrix<Complex, 3, 6> n = pivot.inverse() * zw;
  // Rows 1,2 acquire the pattern (1,0,0 | a,b,0) and (0,1,0 | c,d,0); the
  // final zeros are forced by invariance of span{e^1..e^4}.
  double scale = std::max(1.0, n.cwiseAbs().maxCoeff());
  if (std::max(std::abs(n(0, 5)), std::abs(n(1, 5))) > 1e-5 * scale)
    throw DegeneracyError("echelon pattern violated; structure is not in the chart");
  EchelonPlus q;
  q.a = n(0, 3);
  q.b = n(0, 4);
  q.c = n(1, 3);
  q.d = n(1, 4);
  q.x = n(2, 3);
  q.y = n(2, 4);
  // n(2,5) carries u; the stored coordinates regenerate it as -ad+bc.
  if (std::abs(n(2, 5) - q.u()) > 1e-6 * scale)
    throw DegeneracyError("third-row coefficient disagrees with the derived value");
  return q;
}

EchelonMinus echelon_minus_from_j(const ACS& acs) {
  require_integrable(acs);
  Eigen::Matrix<Complex, 3, 6> zw = zw_rows_of(acs);
  Eigen::Matrix<Complex, 3, 3> pivot;
  pivot.col(0) = zw.col(0);  // omega^1
  pivot.col(1) = zw.col(4);  // conj-omega^2
  pivot.col(2) = zw.col(5);  // conj-omega^3
  if (std::abs(pivot.determinant()) <= kPivotThreshold)
    throw InfinityClassError("structure lies outside the minus chart");
  Eigen::Matrix<Complex, 3, 6> n = pivot.inverse() * zw;
  double scale = std::max(1.0, n.cwiseAbs().maxCoeff());
  // Pattern: row1 = (1, b, 0 | a, 0, 0), row2 = (0, d, 0 | c, 1, 0),
  // row3 = (0, y, v | x, 0, 1); omega^3 entries of rows 1,2 are forced zeros.
  if (std::max(std::abs(n(0, 2)), std::abs(n(1, 2))) > 1e-5 * scale)
    throw DegeneracyError("echelon pattern violated; structure is not in the chart");
  EchelonMinus q;
  q.a = n(0, 3);
  q.b = n(0, 1);
  q.c = n(1, 3);
  q.x = n(2, 3);
  q.y = n(2, 1);
  q.v = n(2, 2);
  if (std::abs(n(1, 1) - q.d()) > 1e-6 * scale)
    throw DegeneracyError("second-row coefficient disagrees with the derived value");
  return q;
}

double c0_pivot(const ACS& acs) {
  PBasis basis = p10_basis(acs);
  KForm w = wedge(wedge(basis.form(1), basis.form(2)), basis.form(3));
  KForm obar = wedge(wedge(omega_bar_form(1), omega_bar_form(2)), omega_bar_form(3));
  return std::abs(wedge(w, obar).coeff(MultiIndex{1, 2, 3, 4, 5, 6}));
}

double c1_pivot(const ACS& acs) {
  PBasis basis = p10_basis(acs);
  KForm w = wedge(wedge(basis.form(1), basis.form(2)), basis.form(3));
  // eta = omega^1 ^ conj-omega^2 ^ conj-omega^3 is the (3,0)-form of j1.
  KForm eta = wedge(wedge(omega_form(1), omega_bar_form(2)), omega_bar_form(3));
  return std::abs(wedge(w, eta.conjugate()).coeff(MultiIndex{1, 2, 3, 4, 5, 6}));
}

bool in_c0_finite(const ACS& acs) { return c0_pivot(acs) > kPivotThreshold; }

bool in_c1_finite(const ACS& acs) { return c1_pivot(acs) > kPivotThreshold; }

}  // namespace iwasawa
