#include "iwasawa/retract.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "iwasawa/errors.hpp"
#include "iwasawa/forms.hpp"

namespace iwasawa {

Mat4d sym_exp(const Mat4d& sym) {
  Eigen::SelfAdjointEigenSolver<Mat4d> es(sym);
  return es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() *
         es.eigenvectors().transpose();
}

Mat4d sym_log_spd(const Mat4d& spd) {
  Eigen::SelfAdjointEigenSolver<Mat4d> es(spd);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw DegeneracyError("matrix logarithm needs positive eigenvalues");
  return es.eigenvectors() * es.eigenvalues().array().log().matrix().asDiagonal() *
         es.eigenvectors().transpose();
}

PolarSplit polar_retract(const Mat4d& q) {
  const double scale = std::max(1.0, std::pow(q.cwiseAbs().maxCoeff(), 2.0));
  if ((q * q + Mat4d::Identity()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw ValidationError("input does not square to -identity");
  if (orientation_D(q) >= 0)
    throw ValidationError("retraction applies to orientation-reversing structures");
  PolarSplit out;
  out.sigma = 0.5 * sym_log_spd(q * q.transpose());
  out.S = sym_exp(out.sigma);
  out.P = sym_exp(-out.sigma) * q;
  if ((out.P * out.P + Mat4d::Identity()).cwiseAbs().maxCoeff() > 1e-8)
    throw DegeneracyError("orthogonal factor does not square to -identity");
  return out;
}

Mat4d homotopy_path(const Mat4d& q, double t) {
  PolarSplit split = polar_retract(q);
  return sym_exp(t * split.sigma) * split.P;
}

ACS fiber_contract(const EchelonMinus& coords, double t) {
  if (t < 0.0 || t > 1.0) throw ValidationError("contraction parameter outside [0,1]");
  EchelonMinus scaled{t * coords.a, t * coords.b, t * coords.c,
                      t * coords.x, t * coords.y, t * coords.v};
  return j_from_echelon_minus(scaled);
}

DCoeffs d_chart_coeffs(const Mat4d& jhat) {
  Mat24c rows = p10_basis4(jhat);
  // Columns reordered to (omega^1, omega^2, conj-omega^1, conj-omega^2).
  Eigen::Matrix<Complex, 2, 4> zw;
  for (int r = 0; r < 2; ++r) {
    Vec6c lifted = Vec6c::Zero();
    lifted.head<4>() = rows.row(r).transpose();
    Eigen::Vector<Complex, 6> oc = omega_coords(lifted);
    zw(r, 0) = oc(0);
    zw(r, 1) = oc(1);
    zw(r, 2) = oc(3);
    zw(r, 3) = oc(4);
  }
  Eigen::Matrix2cd pivot;
  pivot.col(0) = zw.col(0);
  pivot.col(1) = zw.col(3);
  if (std::abs(pivot.determinant()) <= 1e-10)
    throw InfinityClassError("structure sits at infinity for the minus anchor on D");
  Eigen::Matrix<Complex, 2, 4> n = pivot.inverse() * zw;
  return DCoeffs{n(0, 2), n(0, 1), n(1, 2), n(1, 1)};
}

bool fiber_b_equals_c_check(const ACS& acs) {
  Mat4d jhat = restrict_to_D(acs);
  PolarSplit split = polar_retract(jhat);
  const Mat4d anchor = restrict_to_D(j1());
  if ((split.P - anchor).cwiseAbs().maxCoeff() > 1e-8)
    throw ValidationError("restriction does not retract onto the minus anchor");
  DCoeffs c = d_chart_coeffs(jhat);
  if (std::abs(c.b - c.c) > 1e-9) return false;
  Eigen::Matrix2cd y;
  y << c.a, c.b, c.b, c.d;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(y * y.conjugate());
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  return lo >= -1e-10 && hi < 1.0;
}

Mat4d su2_minus_matrix(const Eigen::Vector4d& q) {
  if (std::abs(q.norm() - 1.0) > 1e-10) throw ValidationError("quaternion is not unit");
  Mat4d m;
  m << q(0), -q(1), -q(2), -q(3),
       q(1),  q(0),  q(3), -q(2),
       q(2), -q(3),  q(0),  q(1),
       q(3),  q(2), -q(1),  q(0);
  return m;
}

ACS su2_minus_action(const Eigen::Vector4d& q, const ACS& acs) {
  Mat6d m = Mat6d::Identity();
  m.topLeftCorner<4, 4>() = su2_minus_matrix(q);
  return ACS(m * acs.J * m.transpose());
}

}  // namespace iwasawa
