#pragma once

// Left-invariant (0,q)-forms with values in the (1,0) tangent space and the
// antiholomorphic differential between them. The spaces have dimensions
// 3, 9, 9, 3 for q = 0..3; the interesting invariants are the rank of the
// first map and the kernel of the second, whose difference counts
// first-order deformations.

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "iwasawa/acs.hpp"

namespace iwasawa {

struct DbarMatrices {
  Eigen::Matrix<Complex, 9, 3> m0;  // sections -> (0,1)
  Eigen::Matrix<Complex, 9, 9> m1;  // (0,1) -> (0,2)
  Eigen::Matrix<Complex, 3, 9> m2;  // (0,2) -> (0,3)
};

// Bases: sections are the frame vectors Z_1..Z_3 dual to the rows of
// p10_basis; the element conj(a)^K (x) Z_i sits at flat index
// 3*pos(K) + (i-1), multi-indices K in lexicographic order. On a section,
// the value of the differential on conj(Z_k) is the (1,0) part of the
// bracket [conj(Z_k), Z]; scalar forms differentiate through the exterior
// engine and the two combine by the graded Leibniz rule. Pass
// check_integrable = false only for negative controls; the composite
// matrices fail to square to zero on non-integrable input.
DbarMatrices dbar_matrices(const ACS& acs, bool check_integrable = true);

// Same complex against the replacement rows mix * p10_basis(acs).rows. The
// span is unchanged, so every rank must agree with the unmixed computation;
// exposed for that invariance test. mix must be invertible.
DbarMatrices dbar_matrices_mixed(const ACS& acs, const Eigen::Matrix3cd& mix);

// Same complex against caller-supplied (1,0) rows, e.g. chart-anchored ones
// whose entries stay small rationals at special points. The rows must span a
// valid (1,0) space together with their conjugates.
DbarMatrices dbar_matrices_from_rows(const Mat36c& rows, bool check_integrable = true);

struct DolbeaultReport {
  std::array<int, 4> dims{3, 9, 9, 3};
  int rank0 = 0;              // rank of m0
  int rank1 = 0;              // rank of m1
  int ker1 = 0;               // 9 - rank1
  int h1 = 0;                 // ker1 - rank0
  std::vector<double> sv0;    // singular values of m0, audit trail
  std::vector<double> sv1;    // singular values of m1
};

// Ranks by singular-value thresholding at 1e-8 relative to the largest.
DolbeaultReport dolbeault_report(const ACS& acs);

}  // namespace iwasawa
