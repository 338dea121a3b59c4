#pragma once

// Spectral data of the 2x2 coefficient block X = [[a,b],[c,d]] of the plus
// chart. The roots lambda, mu of x^2 - gamma x + delta with
//   gamma = tr(X conj(X)) = |a|^2 + |d|^2 + 2 Re(b conj(c)),
//   delta = det(X conj(X)) = |ad - bc|^2
// are either both real of one sign or a conjugate pair, and they control
// orientation, chart membership and the deformation space dimension.

#include <Eigen/Dense>

#include "iwasawa/acs.hpp"
#include "iwasawa/echelon.hpp"

namespace iwasawa {

using XMat = Eigen::Matrix2cd;

enum class Region {
  ConjugatePair,    // Im(lambda) != 0, |lambda| < 1
  RealTriangle,     // real, 0 <= lambda*mu < 1, (1-lambda)(1-mu) > 0
  NegativeDiagonal, // lambda = mu <= 0
  Shaded,           // lambda*mu > 1, (1-lambda)(1-mu) < 0
  Boundary          // everything else (degenerate walls included)
};

struct SpectrumClass {
  double gamma = 0.0;
  double delta = 0.0;
  Complex lambda{}, mu{};
  Region region = Region::Boundary;
  int orient_D = 0;      // sign of (1-lambda)(1-mu); 0 within tolerance of a wall
  int orient_total = 0;  // sign of (1-lambda)(1-mu)(1-lambda*mu)
};

XMat xmat_of(const EchelonPlus& coords);

SpectrumClass spectrum(const XMat& x);
inline SpectrumClass spectrum(const EchelonPlus& coords) { return spectrum(xmat_of(coords)); }

// True unless lambda, mu are real, non-positive and distinct beyond
// tolerance. Distinct real non-positive roots cannot occur.
bool lemma_coin_check(const XMat& x);

enum class Component { Cplus, Cminus, MinusCplus, MinusCminus };

// Orientation pair -> component; subscripts follow the orientation on D:
// (+,+) C+, (+,-) C-, (-,+) -C+, (-,-) -C-. Requires integrability.
Component classify(const ACS& acs);

// Membership in U = { X : (1-lambda)(1-mu) > 0 and 0 <= lambda*mu < 1 }.
bool in_U(const XMat& x);

// U is star-shaped: t X stays in U for t in [0,1] (eigenvalues scale by t^2).
bool star_shaped_check(const XMat& x, int steps = 100);

// Real rank r of (p,q) -> (u conj(p) - a p - c q, u conj(q) - b p - d q)
// halved; equals 0 iff X = 0, 1 iff u = 0 and X != 0, 2 otherwise on the
// nondegenerate locus.
int orbit_dimension(const EchelonPlus& coords);

// g^{-1} X conj(g); preserves the similarity class of X conj(X).
XMat consimilar(const XMat& x, const Eigen::Matrix2cd& g);

struct CanonicalForm {
  XMat diag;              // diag(sqrt(lambda), sqrt(mu))
  Eigen::Matrix2cd g;     // X = g^{-1} diag conj(g)
};

// Requires lambda, mu real positive and X conj(X) diagonalizable; verifies
// the residual to 1e-8. Throws NotApplicableError otherwise.
CanonicalForm consimilarity_canonical_form(const XMat& x);

}  // namespace iwasawa
