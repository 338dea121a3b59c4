#include "iwasawa/acs.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace iwasawa {

namespace {

Mat6d block_diag_r(int s1, int s2, int s3) {
  // blockdiag(s1*R, s2*R, s3*R) with R = [[0,-1],[1,0]].
  Mat6d m = Mat6d::Zero();
  const int s[3] = {s1, s2, s3};
  for (int b = 0; b < 3; ++b) {
    m(2 * b, 2 * b + 1) = -s[b];
    m(2 * b + 1, 2 * b) = s[b];
  }
  return m;
}

}  // namespace

ACS::ACS(const Mat6d& m) : J(m) {
  Mat6d sq = m * m + Mat6d::Identity();
  // The residual of an almost complex structure scales with |J|^2, so the
  // gate is relative to that scale (and never looser than 1e-10 at scale 1).
  const double scale = std::max(1.0, std::pow(m.cwiseAbs().maxCoeff(), 2.0));
  if (sq.cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw ValidationError("J*J differs from -I beyond tolerance");
}

ACS ACS::unchecked(const Mat6d& m) {
  ACS a;
  a.J = m;
  return a;
}

const ACS& j0() {
  static const ACS a{block_diag_r(1, 1, 1)};
  return a;
}

const ACS& j1() {
  static const ACS a{block_diag_r(1, -1, -1)};
  return a;
}

KForm PBasis::form(int i) const {
  if (i < 1 || i > 3) throw ValidationError("PBasis index out of range");
  return covector_to_form(rows.row(i - 1).transpose());
}

PBasis p10_basis(const ACS& acs) {
  // (I - i J^T)/2 projects covectors onto the +i eigenspace of J^T; its
  // range has complex dimension 3 exactly when J*J = -I.
  Eigen::Matrix<Complex, 6, 6> proj =
      0.5 * (Eigen::Matrix<Complex, 6, 6>::Identity() -
             Complex(0, 1) * acs.J.transpose().cast<Complex>());
  Eigen::JacobiSVD<Eigen::Matrix<Complex, 6, 6>> svd(proj, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  // The nonzero singular values of a genuine oblique projector sit at or
  // above one, while the residual admitted on J*J + I lifts the zero group
  // by at most about 1e-10 * |J|^2.
  const double jscale = std::max(1.0, acs.J.cwiseAbs().maxCoeff());
  if (!(sv(2) > 0.5) || sv(3) > 1e-8 * jscale * jscale)
    throw ValidationError("+i eigenspace of the transpose action is not 3-dimensional");
  PBasis basis;
  for (int i = 0; i < 3; ++i) {
    Vec6c a = svd.matrixU().col(i);
    if ((acs.J.transpose().cast<Complex>() * a - Complex(0, 1) * a).norm() > 1e-6 * jscale)
      throw ValidationError("projector range is not an eigenspace; input is not an ACS");
    basis.rows.row(i) = a.transpose();
  }
  return basis;
}

ACS acs_from_covectors(const Mat36c& rows) {
  Eigen::Matrix<Complex, 6, 6> b;
  for (int i = 0; i < 3; ++i) {
    b.col(i) = rows.row(i).transpose();
    b.col(3 + i) = rows.row(i).transpose().conjugate();
  }
  Eigen::JacobiSVD<Eigen::Matrix<Complex, 6, 6>> svd(b);
  const auto& sv = svd.singularValues();
  if (sv(5) <= 1e-10 * sv(0))
    throw DegeneracyError("forms and their conjugates do not span the covector space");
  Eigen::Vector<Complex, 6> d;
  d << Complex(0, 1), Complex(0, 1), Complex(0, 1), Complex(0, -1), Complex(0, -1),
      Complex(0, -1);
  Eigen::Matrix<Complex, 6, 6> jt = b * d.asDiagonal() * b.inverse();
  if (jt.imag().cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, jt.real().cwiseAbs().maxCoeff()))
    throw DegeneracyError("reconstructed structure is not real");
  return ACS(Mat6d(jt.real().transpose()));
}

Vec6c nijenhuis(const ACS& acs, const Vec6c& x, const Vec6c& y) {
  Eigen::Matrix<Complex, 6, 6> jc = acs.J.cast<Complex>();
  Vec6c jx = jc * x, jy = jc * y;
  return lie_bracket(jx, jy) - lie_bracket(x, y) - jc * lie_bracket(jx, y) -
         jc * lie_bracket(x, jy);
}

bool is_integrable(const ACS& acs, double tol) {
  // The tensor is quadratic in J, so the cutoff follows |J|^2; structures
  // deep in a chart would otherwise fail on round-off alone.
  const double scale = std::max(1.0, std::pow(acs.J.cwiseAbs().maxCoeff(), 2.0));
  for (int i = 1; i <= kDim; ++i)
    for (int j = i + 1; j <= kDim; ++j) {
      Vec6c n = nijenhuis(acs, basis_vector(i), basis_vector(j));
      if (n.cwiseAbs().maxCoeff() > tol * scale) return false;
    }
  return true;
}

double dbar_obstruction(const ACS& acs) {
  PBasis basis = p10_basis(acs);
  KForm a123 = wedge(wedge(basis.form(1), basis.form(2)), basis.form(3));
  double worst = 0.0;
  for (int i = 1; i <= 3; ++i) {
    KForm da = ce_differential(basis.form(i));
    worst = std::max(worst, wedge(da, a123).max_abs_coeff());
  }
  // Rows are unit and a123 has unit coefficient norm, so no rescaling needed.
  return worst;
}

int orientation_total(const ACS& acs) {
  PBasis basis = p10_basis(acs);
  KForm top = wedge(basis.form(1), basis.form(2));
  top = wedge(top, basis.form(3));
  KForm conj_top = top.conjugate();
  Complex k = wedge(top, conj_top).coeff(MultiIndex{1, 2, 3, 4, 5, 6});
  if (std::abs(k) < 1e-10)
    throw DegeneracyError("(1,0)-forms and conjugates do not span; orientation undefined");
  if (std::abs(k.real()) > 1e-8 * std::abs(k))
    throw DegeneracyError("top coefficient is not purely imaginary");
  return k.imag() < 0 ? +1 : -1;
}

bool d_invariant(const ACS& acs, double tol) {
  // Transpose action preserves span{e^1..e^4} iff J's upper-right 4x2 block
  // vanishes (the centre is J-invariant).
  return acs.J.topRightCorner<4, 2>().cwiseAbs().maxCoeff() <= tol;
}

Mat4d restrict_to_D(const ACS& acs, double tol) {
  if (!d_invariant(acs, tol))
    throw ValidationError("span{e^1..e^4} is not invariant; no restriction exists");
  Mat4d jhat = acs.J.topLeftCorner<4, 4>();
  Mat4d sq = jhat * jhat + Mat4d::Identity();
  const double scale = std::max(1.0, std::pow(jhat.cwiseAbs().maxCoeff(), 2.0));
  if (sq.cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw ValidationError("restriction does not square to -I");
  return jhat;
}

Mat24c p10_basis4(const Mat4d& jhat) {
  Eigen::Matrix<Complex, 4, 4> proj =
      0.5 * (Eigen::Matrix<Complex, 4, 4>::Identity() -
             Complex(0, 1) * jhat.transpose().cast<Complex>());
  Eigen::JacobiSVD<Eigen::Matrix<Complex, 4, 4>> svd(proj, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  if (!(sv(1) > 1e-6 * sv(0)) || sv(2) > 1e-6 * sv(0))
    throw ValidationError("+i eigenspace on D is not 2-dimensional");
  Mat24c rows;
  for (int i = 0; i < 2; ++i) rows.row(i) = svd.matrixU().col(i).transpose();
  return rows;
}

Mat4d acs4_from_covectors(const Mat24c& rows) {
  Eigen::Matrix<Complex, 4, 4> b;
  for (int i = 0; i < 2; ++i) {
    b.col(i) = rows.row(i).transpose();
    b.col(2 + i) = rows.row(i).transpose().conjugate();
  }
  Eigen::JacobiSVD<Eigen::Matrix<Complex, 4, 4>> svd(b);
  if (svd.singularValues()(3) <= 1e-10 * svd.singularValues()(0))
    throw DegeneracyError("forms and conjugates do not span the dual of D");
  Eigen::Vector<Complex, 4> d;
  d << Complex(0, 1), Complex(0, 1), Complex(0, -1), Complex(0, -1);
  Eigen::Matrix<Complex, 4, 4> jt = b * d.asDiagonal() * b.inverse();
  return jt.real().transpose();
}

int orientation_D(const Mat4d& jhat) {
  Mat24c rows = p10_basis4(jhat);
  // Embed the two D-covectors as forms on indices 1..4.
  Vec6c a1 = Vec6c::Zero(), a2 = Vec6c::Zero();
  a1.head<4>() = rows.row(0).transpose();
  a2.head<4>() = rows.row(1).transpose();
  KForm f1 = covector_to_form(a1), f2 = covector_to_form(a2);
  KForm w = wedge(wedge(f1, f2), wedge(f1.conjugate(), f2.conjugate()));
  Complex c = w.coeff(MultiIndex{1, 2, 3, 4});
  if (std::abs(c) < 1e-12)
    throw DegeneracyError("restricted orientation coefficient vanishes");
  if (std::abs(c.imag()) > 1e-8 * std::abs(c))
    throw DegeneracyError("restricted orientation coefficient is not real");
  return c.real() > 0 ? +1 : -1;
}

}  // namespace iwasawa
