#pragma once

// Polar-decomposition retraction from the orientation-reversing almost
// complex structures on D onto their orthogonal 2-sphere, the contraction of
// the fiber over the minus-chart anchor, and the SU(2) factor that fixes
// self-dual 2-forms while rotating the sphere.

#include <Eigen/Dense>

#include "iwasawa/acs.hpp"
#include "iwasawa/echelon.hpp"

namespace iwasawa {

struct PolarSplit {
  Mat4d S;      // symmetric positive-definite factor
  Mat4d P;      // orthogonal factor; squares to -identity
  Mat4d sigma;  // symmetric logarithm of S; satisfies sigma = -P^{-1} sigma P
};

// Q must square to -identity and induce the negative orientation on D.
PolarSplit polar_retract(const Mat4d& q);

// e^{t sigma} P: t=0 gives P, t=1 restores Q, and the result squares to
// -identity for every t in between.
Mat4d homotopy_path(const Mat4d& q, double t);

// Symmetric-eigendecomposition matrix exponential and logarithm.
Mat4d sym_exp(const Mat4d& sym);
Mat4d sym_log_spd(const Mat4d& spd);

// The family with coefficients (ta, tb, tc, tx, ty, tv). The derived
// d-coefficient scales as t^2, so every member stays inside the minus chart;
// t=1 reproduces the input and t=0 the chart anchor.
ACS fiber_contract(const EchelonMinus& coords, double t);

// Coefficients of an almost complex structure on D against the minus anchor:
// (1,0)-forms omega^1 + a conj-omega^1 + b omega^2 and
// conj-omega^2 + c conj-omega^1 + d omega^2.
struct DCoeffs {
  Complex a, b, c, d;
};
DCoeffs d_chart_coeffs(const Mat4d& jhat);

// For J whose restriction to D polar-retracts onto the minus anchor (within
// 1e-8; ValidationError otherwise): extracts the chart coefficients and
// returns true iff b = c to 1e-9 and the eigenvalues of Y conj(Y) with
// Y = [[a,b],[b,d]] (Hermitian, hence real non-negative) lie in [0, 1).
bool fiber_b_equals_c_check(const ACS& acs);

// Right quaternion multiplication on D identified with H through
// (E1,E2,E3,E4) = (1,i,j,k). This factor of SO(4) fixes self-dual 2-forms
// pointwise and rotates the anti-self-dual sphere. q must be unit to 1e-10.
Mat4d su2_minus_matrix(const Eigen::Vector4d& q);

// Conjugation by su2_minus_matrix(q) extended by the identity on E5, E6.
// The extension is a Lie algebra automorphism (the differentials of e^5, e^6
// are self-dual), so integrable inputs stay integrable.
ACS su2_minus_action(const Eigen::Vector4d& q, const ACS& acs);

}  // namespace iwasawa
