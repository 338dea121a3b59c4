#pragma once

// Standard metric g = sum e^i (x) e^i, fundamental 2-forms, and the
// self-dual / anti-self-dual splitting of 2-forms on D = span{E1..E4}.
//
// The two orthogonal spheres of almost complex structures on D are
// parametrized by unit vectors in the plus and minus bases
//   plus:  e^12+e^34, e^13-e^24, e^14+e^23
//   minus: e^12-e^34, e^13+e^24, e^14-e^23.
// The orientation-reversing sphere extends to the 2-sphere of integrable
// orthogonal structures on the full algebra; the orientation-preserving one
// meets the restrictions of plus-component structures in the open
// hemisphere A > 0 only.

#include <array>

#include <Eigen/Dense>

#include "iwasawa/acs.hpp"
#include "iwasawa/echelon.hpp"
#include "iwasawa/forms.hpp"

namespace iwasawa {

// Coefficients of a real 2-form on D over e^12, e^13, e^14, e^23, e^24, e^34.
using Form2D = Eigen::Vector<double, 6>;

// Degree-2 input with components only among e^1..e^4 and real coefficients.
Form2D form2d_of(const KForm& w);
KForm kform_of(const Form2D& w);

struct SDSplit {
  Eigen::Vector3d plus;   // coordinates in e^12+e^34, e^13-e^24, e^14+e^23
  Eigen::Vector3d minus;  // coordinates in e^12-e^34, e^13+e^24, e^14-e^23
};

SDSplit sd_split(const Form2D& w);
Form2D sd_assemble(const SDSplit& parts);  // exact inverse of sd_split

// Basis 2-forms themselves, i in {0,1,2}.
KForm sd_basis_plus(int i);
KForm sd_basis_minus(int i);

bool is_orthogonal(const ACS& acs, double tol = 1e-10);
bool is_orthogonal_d(const Mat4d& jhat, double tol = 1e-10);

// gamma(E_i, E_j) = g(J E_i, E_j); requires an orthogonal J (throws
// ValidationError otherwise, the matrix would not be antisymmetric).
KForm fundamental_form(const ACS& acs);
Form2D fundamental_form_d(const Mat4d& jhat);

struct SphereCoord {
  double A = 1.0, B = 0.0, C = 0.0;
};

// Chart for the orthogonal restrictions of plus-chart structures with
// a = d = 0, c = -b; lands on the unit sphere with A > 0 iff |b| < 1.
SphereCoord hemisphere_coords(Complex b);
// Stereographic inverse; throws DegeneracyError at the antipode A = -1.
Complex hemisphere_b(const SphereCoord& n);

// The integrable orthogonal structure whose restriction to D has
// fundamental form A w1- + B w2- + C w3-; the action on e^5, e^6 carries
// the sign forced by positive total orientation. Throws ValidationError
// when n is not unit to 1e-12.
ACS z_sphere_element(const SphereCoord& n);
Mat4d z_sphere_restriction(const SphereCoord& n);
// Recover n from the fundamental form of an orthogonal J whose restriction
// is orientation-reversing on D; throws ValidationError when the self-dual
// part is not negligible or the anti-self-dual part is not unit.
SphereCoord z_coords_of(const ACS& acs);

// The wedge beta^12 ^ conj(beta^12) ^ beta^3 ^ conj(beta^3) for the
// orthogonal plus-chart structure with parameter b and third form
// omega^3 + x conj-omega^1 + y conj-omega^2 - b^2 conj-omega^3.
KForm orthogonal_lift_wedge(Complex b, Complex x, Complex y);

// Constructs the equator structure (b = i, fundamental form along B) and the
// candidate third forms omega^3 + x omega^1 + y omega^2 + u conj-omega^3.
// Returns true iff the integrability constraint pins u = 1 and the resulting
// six-form vanishes identically in (x, y), so no plus-component structure
// restricts to the equator.
bool equator_obstruction_check();

}  // namespace iwasawa
