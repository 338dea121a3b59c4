#pragma once

// Two affine charts for integrable structures, anchored at j0 and j1.
//
// Plus chart (anchor j0), (1,0)-forms
//   alpha^1 = omega^1 + a conj-omega^1 + b conj-omega^2
//   alpha^2 = omega^2 + c conj-omega^1 + d conj-omega^2
//   alpha^3 = omega^3 + x conj-omega^1 + y conj-omega^2 + u conj-omega^3
// with u = -ad + bc forced by integrability (u is derived, never stored).
//
// Minus chart (anchor j1), (1,0)-forms
//   beta^1 = omega^1 + a conj-omega^1 + b omega^2
//   beta^2 = conj-omega^2 + c conj-omega^1 + d omega^2
//   beta^3 = conj-omega^3 + x conj-omega^1 + y omega^2 + v omega^3
// with d = -a v forced by integrability (d is derived, never stored).

#include "iwasawa/acs.hpp"
#include "iwasawa/forms.hpp"

namespace iwasawa {

struct EchelonPlus {
  Complex a{}, b{}, c{}, d{}, x{}, y{};
  Complex u() const { return -a * d + b * c; }
};

struct EchelonMinus {
  Complex a{}, b{}, c{}, x{}, y{}, v{};
  Complex d() const { return -a * v; }
};

// Constructors; throw DegeneracyError when the six forms fail to span.
ACS j_from_echelon_plus(const EchelonPlus& coords);
ACS j_from_echelon_minus(const EchelonMinus& coords);

// Chart reads; throw InfinityClassError when the pivot falls below 1e-10 and
// IntegrabilityError when the input is not integrable.
EchelonPlus echelon_plus_from_j(const ACS& acs);
EchelonMinus echelon_minus_from_j(const ACS& acs);

// Raw pivot magnitudes (callers may apply their own thresholds):
// c0 uses alpha^123 ^ conj-omega^123, c1 uses beta^123 ^ conj(omega^1 ^
// conj-omega^2 ^ conj-omega^3), both with a unit-normalized (1,0) basis.
double c0_pivot(const ACS& acs);
double c1_pivot(const ACS& acs);

inline constexpr double kPivotThreshold = 1e-10;
// Pivots within two decades of the threshold are classified but deserve a
// warning; the CLI report carries a near_threshold flag for them.
inline constexpr double kPivotWarnFactor = 100.0;

bool in_c0_finite(const ACS& acs);
bool in_c1_finite(const ACS& acs);

// The three (1,0)-forms of each chart, exposed for wedge identities in tests.
std::array<KForm, 3> echelon_plus_forms(const EchelonPlus& coords);
std::array<KForm, 3> echelon_minus_forms(const EchelonMinus& coords);

}  // namespace iwasawa
