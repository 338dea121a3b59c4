#pragma once

// Exterior algebra over the dual of a fixed real 6-dimensional nilpotent Lie
// algebra, with complex coefficients. Basis covectors e^1..e^6 satisfy
//   de^i = 0 (i <= 4),   de^5 = e^13 + e^42,   de^6 = e^14 + e^23,
// and the bracket is derived from d through d(alpha)(X,Y) = -alpha([X,Y])
// with (alpha ^ beta)(X,Y) = alpha(X)beta(Y) - alpha(Y)beta(X).

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "iwasawa/errors.hpp"

namespace iwasawa {

using Complex = std::complex<double>;
using Vec6c = Eigen::Vector<Complex, 6>;
using Vec6d = Eigen::Matrix<double, 6, 1>;

constexpr int kDim = 6;

// A strictly increasing list of indices in 1..6, stored as a bitmask.
class MultiIndex {
 public:
  constexpr MultiIndex() : mask_(0) {}
  constexpr explicit MultiIndex(std::uint8_t mask) : mask_(mask) {}
  MultiIndex(std::initializer_list<int> indices);

  int degree() const;
  std::uint8_t mask() const { return mask_; }
  bool contains(int index) const { return mask_ & (1u << (index - 1)); }
  std::vector<int> indices() const;

  friend bool operator==(MultiIndex a, MultiIndex b) { return a.mask_ == b.mask_; }
  // Lexicographic order on the increasing index lists (used for serialization).
  friend bool operator<(MultiIndex a, MultiIndex b);

 private:
  std::uint8_t mask_;
};

// Sign of merging two disjoint increasing index lists into one increasing list.
int merge_sign(std::uint8_t a, std::uint8_t b);

// Homogeneous complex form of fixed degree 0..6. Coefficients are stored
// densely, indexed by subset bitmask; only masks of the right popcount are
// touched. Zero coefficients may be present; equality is coefficient-wise.
class KForm {
 public:
  explicit KForm(int degree);
  static KForm basis(MultiIndex idx, Complex coeff = 1.0);

  int degree() const { return degree_; }
  Complex coeff(MultiIndex idx) const;
  void set_coeff(MultiIndex idx, Complex value);

  KForm& operator+=(const KForm& other);
  KForm& operator-=(const KForm& other);
  KForm& operator*=(Complex scalar);
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator*(Complex s, KForm f) { return f *= s; }
  friend KForm operator*(KForm f, Complex s) { return f *= s; }

  KForm conjugate() const;
  double max_abs_coeff() const;
  bool is_zero(double tol = 0.0) const;

  // Value on a tuple of vectors; the tuple length must equal the degree.
  Complex evaluate(std::span<const Vec6c> vectors) const;

  // Nonzero terms in lexicographic multi-index order.
  std::vector<std::pair<MultiIndex, Complex>> terms(double tol = 0.0) const;

  // Raw storage access for tight loops.
  const std::array<Complex, 64>& data() const { return c_; }

 private:
  int degree_;
  std::array<Complex, 64> c_;
};

KForm wedge(const KForm& a, const KForm& b);

// Chevalley-Eilenberg differential extended to arbitrary degree by the
// graded Leibniz rule. Exact on integer coefficient inputs.
KForm ce_differential(const KForm& form);

// Degree-1 helpers.
KForm e_form(int i);                   // e^i
KForm omega_form(int j);               // omega^j = e^{2j-1} + i e^{2j}
KForm omega_bar_form(int j);           // conjugate of omega^j
KForm covector_to_form(const Vec6c& a);
Vec6c form_to_covector(const KForm& f);

// Structure constants c^k_{ij} with [E_i, E_j] = sum_k c^k_{ij} E_k,
// derived from the differentials, never hand-coded. Indices are 1-based.
int structure_constant(int k, int i, int j);

// Complex-bilinear bracket of algebra elements in the E-basis.
Vec6c lie_bracket(const Vec6c& v, const Vec6c& w);

Vec6c basis_vector(int i);  // E_i

// Coordinates of a covector in the (omega^1..3, conj omega^1..3) basis and back.
Eigen::Vector<Complex, 6> omega_coords(const Vec6c& e_coords);
Vec6c e_coords_from_omega(const Eigen::Vector<Complex, 6>& zw);

}  // namespace iwasawa
