#pragma once

// Almost complex structures on the fixed 6-dimensional algebra. A covector
// alpha is of type (1,0) for J when alpha(JX) = i alpha(X); the (1,0) space
// is the +i eigenspace of the transpose action on complexified covectors.

#include <array>

#include <Eigen/Dense>

#include "iwasawa/forms.hpp"

namespace iwasawa {

using Mat6d = Eigen::Matrix<double, 6, 6>;
using Mat4d = Eigen::Matrix<double, 4, 4>;
using Mat36c = Eigen::Matrix<Complex, 3, 6>;
using Mat24c = Eigen::Matrix<Complex, 2, 4>;

// A validated almost complex structure: J*J = -I entrywise to 1e-10.
struct ACS {
  Mat6d J;

  explicit ACS(const Mat6d& m);
  // Bypasses validation; for deliberately broken inputs in negative controls.
  static ACS unchecked(const Mat6d& m);

 private:
  ACS() = default;
};

// Base point: (1,0)-forms omega^1, omega^2, omega^3.
const ACS& j0();
// The anchor of the second echelon chart: (1,0)-forms omega^1, conj omega^2,
// conj omega^3; equals blockdiag(R, -R, -R) with R = [[0,-1],[1,0]].
const ACS& j1();

// Rows span the (1,0) covector space; rows are orthonormal in the Hermitian
// sense. Throws ValidationError when the +i eigenspace is not 3-dimensional.
struct PBasis {
  Mat36c rows;
  KForm form(int i) const;  // i in 1..3
};

PBasis p10_basis(const ACS& acs);

// Reconstructs the unique J whose (1,0) space is the row span. Throws
// DegeneracyError when the rows together with their conjugates do not span.
ACS acs_from_covectors(const Mat36c& rows);

// N(X,Y) = [JX,JY] - [X,Y] - J[JX,Y] - J[X,JY], complex-bilinear in X,Y.
Vec6c nijenhuis(const ACS& acs, const Vec6c& x, const Vec6c& y);

// True iff N vanishes on all 15 basis pairs within tol * max(1, |J|^2);
// the tensor is quadratic in J, so the cutoff tracks that scale.
bool is_integrable(const ACS& acs, double tol = 1e-9);

// Independent route: max coefficient of d(alpha^i) ^ alpha^123 over i,
// normalized by the input scale. Zero exactly when no d(alpha) has a (0,2)
// part, which is equivalent to integrability.
double dbar_obstruction(const ACS& acs);

// +1 / -1 by the sign rule Im(k) < 0 for alpha^123 ^ conj(alpha^123) =
// k e^123456 (k is purely imaginary). Throws DegeneracyError when |k| is
// below threshold (the structure does not orient the algebra transversally).
int orientation_total(const ACS& acs);

// True iff span{e^1..e^4} is invariant under the transpose action,
// equivalently the centre span{E_5,E_6} is J-invariant.
bool d_invariant(const ACS& acs, double tol = 1e-9);

// Upper-left 4x4 block; requires d_invariant.
Mat4d restrict_to_D(const ACS& acs, double tol = 1e-9);

// Sign of the real number c in phi^12 ^ conj(phi^12) = c e^1234 for a basis
// {phi^1, phi^2} of (1,0)-forms of the 4x4 structure.
int orientation_D(const Mat4d& jhat);

// 4x4 analogues used by the metric and retraction modules.
Mat24c p10_basis4(const Mat4d& jhat);
Mat4d acs4_from_covectors(const Mat24c& rows);

}  // namespace iwasawa
