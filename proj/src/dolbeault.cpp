#include "iwasawa/dolbeault.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "iwasawa/errors.hpp"
#include "iwasawa/forms.hpp"

namespace iwasawa {

namespace {

constexpr int kPair[3][2] = {{0, 1}, {0, 2}, {1, 2}};

int pair_index(int l, int m) { return l + m - 1; }

DbarMatrices matrices_from_rows(const Mat36c& rows) {
  Eigen::Matrix<Complex, 6, 6> a;
  a.topRows<3>() = rows;
  a.bottomRows<3>() = rows.conjugate();
  Eigen::FullPivLU<Eigen::Matrix<Complex, 6, 6>> lu(a);
  if (!lu.isInvertible())
    throw DegeneracyError("covector rows do not span with their conjugates");
  Eigen::Matrix<Complex, 6, 6> frame = lu.inverse();

  std::array<Vec6c, 3> z, zbar;
  for (int j = 0; j < 3; ++j) {
    z[j] = frame.col(j);
    zbar[j] = frame.col(3 + j);
  }

  // c[k][j] holds the (1,0) coefficients of [conj(Z_k), Z_j].
  Complex c[3][3][3];
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) {
      Vec6c proj = a * lie_bracket(zbar[k], z[j]);
      for (int i = 0; i < 3; ++i) c[k][j][i] = proj(i);
    }

  std::array<KForm, 3> abar = {KForm(1), KForm(1), KForm(1)};
  for (int k = 0; k < 3; ++k)
    abar[k] = covector_to_form(rows.row(k).transpose()).conjugate();

  DbarMatrices out;
  out.m0.setZero();
  out.m1.setZero();
  out.m2.setZero();

  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i) out.m0(3 * k + i, j) = c[k][j][i];

  // Scalar differentials: (0,2) coefficients of d conj(a^k) and the (0,3)
  // coefficient of d(conj(a^l) ^ conj(a^m)), read off by evaluation on the
  // conjugate frame.
  Complex scalar1[3][3];  // [pair][k]
  for (int k = 0; k < 3; ++k) {
    KForm d1 = ce_differential(abar[k]);
    for (int p = 0; p < 3; ++p) {
      const Vec6c args[2] = {zbar[kPair[p][0]], zbar[kPair[p][1]]};
      scalar1[p][k] = d1.evaluate(args);
    }
  }
  Complex scalar2[3];  // [pair]
  const Vec6c all3[3] = {zbar[0], zbar[1], zbar[2]};
  for (int p = 0; p < 3; ++p) {
    KForm d2 = ce_differential(wedge(abar[kPair[p][0]], abar[kPair[p][1]]));
    scalar2[p] = d2.evaluate(all3);
  }

  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) {
      const int col = 3 * k + j;
      for (int p = 0; p < 3; ++p) out.m1(3 * p + j, col) += scalar1[p][k];
      // minus sign from the Leibniz rule in odd scalar degree
      for (int l = 0; l < 3; ++l) {
        if (l == k) continue;
        const int p = k < l ? pair_index(k, l) : pair_index(l, k);
        const double sign = k < l ? 1.0 : -1.0;
        for (int i = 0; i < 3; ++i) out.m1(3 * p + i, col) -= sign * c[l][j][i];
      }
    }

  for (int p = 0; p < 3; ++p)
    for (int j = 0; j < 3; ++j) {
      const int col = 3 * p + j;
      out.m2(j, col) += scalar2[p];
      const int r = 3 - kPair[p][0] - kPair[p][1];  // index missing from the pair
      // sign of inserting conj(a^r) after the pair to reach 0 < 1 < 2
      const double sign = (p == 1) ? -1.0 : 1.0;
      for (int i = 0; i < 3; ++i) out.m2(i, col) += sign * c[r][j][i];
    }

  return out;
}

template <typename M>
int sv_rank(const M& m, std::vector<double>* sv) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  if (sv) sv->assign(s.data(), s.data() + s.size());
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > 1e-8 * s(0)) ++rank;
  return rank;
}

}  // namespace

DbarMatrices dbar_matrices(const ACS& acs, bool check_integrable) {
  if (check_integrable && !is_integrable(acs))
    throw IntegrabilityError("the differential squares to zero only for integrable J");
  return matrices_from_rows(p10_basis(acs).rows);
}

DbarMatrices dbar_matrices_mixed(const ACS& acs, const Eigen::Matrix3cd& mix) {
  if (std::abs(mix.determinant()) < 1e-8)
    throw ValidationError("row mixer must be invertible");
  if (!is_integrable(acs))
    throw IntegrabilityError("the differential squares to zero only for integrable J");
  return matrices_from_rows(mix * p10_basis(acs).rows);
}

DbarMatrices dbar_matrices_from_rows(const Mat36c& rows, bool check_integrable) {
  ACS acs = acs_from_covectors(rows);
  if (check_integrable && !is_integrable(acs))
    throw IntegrabilityError("the differential squares to zero only for integrable J");
  return matrices_from_rows(rows);
}

DolbeaultReport dolbeault_report(const ACS& acs) {
  DbarMatrices m = dbar_matrices(acs);
  DolbeaultReport r;
  r.rank0 = sv_rank(m.m0, &r.sv0);
  r.rank1 = sv_rank(m.m1, &r.sv1);
  r.ker1 = 9 - r.rank1;
  r.h1 = r.ker1 - r.rank0;
  return r;
}

}  // namespace iwasawa
