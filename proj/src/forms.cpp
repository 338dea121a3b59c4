#include "iwasawa/forms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace iwasawa {

namespace {

int popcount8(std::uint8_t m) { return std::popcount(static_cast<unsigned>(m)); }

// Differentials of the basis covectors as integer (mask, sign) term lists:
// de^5 = e^13 + e^42 = e^13 - e^24, de^6 = e^14 + e^23. This is the only
// hand-coded structural data; brackets are derived from it.
struct DTerm {
  std::uint8_t mask;
  int sign;
};

const std::array<std::vector<DTerm>, 7>& d_tables() {
  static const std::array<std::vector<DTerm>, 7> tables = [] {
    std::array<std::vector<DTerm>, 7> t;
    t[5] = {{0b000101, +1}, {0b001010, -1}};
    t[6] = {{0b001001, +1}, {0b000110, +1}};
    return t;
  }();
  return tables;
}

// c^k_{ij} = -de^k(E_i, E_j); stored 0-based.
const std::array<std::array<std::array<int, 6>, 6>, 6>& bracket_table() {
  static const auto table = [] {
    std::array<std::array<std::array<int, 6>, 6>, 6> c{};
    for (int k = 1; k <= kDim; ++k) {
      for (const DTerm& term : d_tables()[k]) {
        int idx[2], pos = 0;
        for (int b = 0; b < kDim; ++b)
          if (term.mask & (1u << b)) idx[pos++] = b;
        // term is sign * e^{i<j}; de^k(E_i,E_j) = sign, de^k(E_j,E_i) = -sign.
        c[k - 1][idx[0]][idx[1]] -= term.sign;
        c[k - 1][idx[1]][idx[0]] += term.sign;
      }
    }
    return c;
  }();
  return table;
}

}  // namespace

MultiIndex::MultiIndex(std::initializer_list<int> indices) : mask_(0) {
  int prev = 0;
  for (int i : indices) {
    if (i < 1 || i > kDim || i <= prev)
      throw ValidationError("multi-index must be strictly increasing in 1..6");
    mask_ |= static_cast<std::uint8_t>(1u << (i - 1));
    prev = i;
  }
}

int MultiIndex::degree() const { return popcount8(mask_); }

std::vector<int> MultiIndex::indices() const {
  std::vector<int> out;
  for (int i = 1; i <= kDim; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

bool operator<(MultiIndex a, MultiIndex b) {
  return a.indices() < b.indices();
}

int merge_sign(std::uint8_t a, std::uint8_t b) {
  // Inversions of the concatenated list (a ascending, then b ascending):
  // pairs (x in a, y in b) with y < x. For each y in b count bits of a above y.
  int inv = 0;
  for (int bit = 0; bit < kDim; ++bit)
    if (b & (1u << bit))
      inv += popcount8(static_cast<std::uint8_t>(a & ~((2u << bit) - 1)));
  return (inv % 2 == 0) ? 1 : -1;
}

KForm::KForm(int degree) : degree_(degree), c_{} {
  if (degree < 0 || degree > kDim) throw DegreeError("degree out of range 0..6");
}

KForm KForm::basis(MultiIndex idx, Complex coeff) {
  KForm f(idx.degree());
  f.c_[idx.mask()] = coeff;
  return f;
}

Complex KForm::coeff(MultiIndex idx) const { return c_[idx.mask()]; }

void KForm::set_coeff(MultiIndex idx, Complex value) {
  if (idx.degree() != degree_) throw DegreeError("multi-index degree mismatch");
  c_[idx.mask()] = value;
}

KForm& KForm::operator+=(const KForm& other) {
  if (other.degree_ != degree_) throw DegreeError("degree mismatch in sum");
  for (int m = 0; m < 64; ++m) c_[m] += other.c_[m];
  return *this;
}

KForm& KForm::operator-=(const KForm& other) {
  if (other.degree_ != degree_) throw DegreeError("degree mismatch in difference");
  for (int m = 0; m < 64; ++m) c_[m] -= other.c_[m];
  return *this;
}

KForm& KForm::operator*=(Complex scalar) {
  for (auto& v : c_) v *= scalar;
  return *this;
}

KForm KForm::conjugate() const {
  KForm out(degree_);
  for (int m = 0; m < 64; ++m) out.c_[m] = std::conj(c_[m]);
  return out;
}

double KForm::max_abs_coeff() const {
  double mx = 0.0;
  for (const auto& v : c_) mx = std::max(mx, std::abs(v));
  return mx;
}

bool KForm::is_zero(double tol) const { return max_abs_coeff() <= tol; }

Complex KForm::evaluate(std::span<const Vec6c> vectors) const {
  if (static_cast<int>(vectors.size()) != degree_)
    throw DegreeError("evaluation arity must equal the degree");
  if (degree_ == 0) return c_[0];
  Complex total = 0.0;
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> mat(degree_, degree_);
  for (int m = 0; m < 64; ++m) {
    if (c_[m] == 0.0 || popcount8(static_cast<std::uint8_t>(m)) != degree_) continue;
    int rows[6], k = 0;
    for (int b = 0; b < kDim; ++b)
      if (m & (1 << b)) rows[k++] = b;
    for (int r = 0; r < degree_; ++r)
      for (int s = 0; s < degree_; ++s) mat(r, s) = vectors[s](rows[r]);
    total += c_[m] * mat.determinant();
  }
  return total;
}

std::vector<std::pair<MultiIndex, Complex>> KForm::terms(double tol) const {
  std::vector<std::pair<MultiIndex, Complex>> out;
  for (int m = 0; m < 64; ++m) {
    if (popcount8(static_cast<std::uint8_t>(m)) != degree_) continue;
    if (c_[m] != 0.0 && std::abs(c_[m]) > tol)
      out.emplace_back(MultiIndex(static_cast<std::uint8_t>(m)), c_[m]);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

KForm wedge(const KForm& a, const KForm& b) {
  int deg = a.degree() + b.degree();
  // Anything past the top degree vanishes identically; keep the product
  // total so the graded product rule holds in every degree.
  if (deg > kDim) return KForm(kDim);
  KForm out(deg);
  const auto& ca = a.data();
  const auto& cb = b.data();
  for (int ma = 0; ma < 64; ++ma) {
    if (ca[ma] == 0.0 || popcount8(static_cast<std::uint8_t>(ma)) != a.degree()) continue;
    for (int mb = 0; mb < 64; ++mb) {
      if (cb[mb] == 0.0 || popcount8(static_cast<std::uint8_t>(mb)) != b.degree()) continue;
      if (ma & mb) continue;
      int sign = merge_sign(static_cast<std::uint8_t>(ma), static_cast<std::uint8_t>(mb));
      MultiIndex idx(static_cast<std::uint8_t>(ma | mb));
      out.set_coeff(idx, out.coeff(idx) + static_cast<double>(sign) * ca[ma] * cb[mb]);
    }
  }
  return out;
}

KForm ce_differential(const KForm& form) {
  // d vanishes identically on top degree; returned as the zero 6-form.
  if (form.degree() == kDim) return KForm(kDim);
  KForm out(form.degree() + 1);
  for (const auto& [idx, coeff] : form.terms()) {
    std::uint8_t m = idx.mask();
    for (int i = 5; i <= kDim; ++i) {
      if (!(m & (1u << (i - 1)))) continue;
      // e^m = (-1)^pos e^i ^ e^{m\i}, pos = #indices of m below i.
      int pos = popcount8(static_cast<std::uint8_t>(m & ((1u << (i - 1)) - 1)));
      double sgn = (pos % 2 == 0) ? 1.0 : -1.0;
      std::uint8_t rest = static_cast<std::uint8_t>(m & ~(1u << (i - 1)));
      for (const DTerm& term : d_tables()[i]) {
        if (term.mask & rest) continue;
        int s2 = merge_sign(term.mask, rest);
        MultiIndex out_idx(static_cast<std::uint8_t>(term.mask | rest));
        out.set_coeff(out_idx, out.coeff(out_idx) +
                                   coeff * sgn * static_cast<double>(term.sign * s2));
      }
    }
  }
  return out;
}

KForm e_form(int i) {
  if (i < 1 || i > kDim) throw ValidationError("basis covector index out of range");
  return KForm::basis(MultiIndex(static_cast<std::uint8_t>(1u << (i - 1))));
}

KForm omega_form(int j) {
  if (j < 1 || j > 3) throw ValidationError("omega index out of range");
  return e_form(2 * j - 1) + Complex(0, 1) * e_form(2 * j);
}

KForm omega_bar_form(int j) { return omega_form(j).conjugate(); }

KForm covector_to_form(const Vec6c& a) {
  KForm f(1);
  for (int i = 0; i < kDim; ++i)
    f.set_coeff(MultiIndex(static_cast<std::uint8_t>(1u << i)), a(i));
  return f;
}

Vec6c form_to_covector(const KForm& f) {
  if (f.degree() != 1) throw DegreeError("covector extraction needs degree 1");
  Vec6c a;
  for (int i = 0; i < kDim; ++i)
    a(i) = f.coeff(MultiIndex(static_cast<std::uint8_t>(1u << i)));
  return a;
}

int structure_constant(int k, int i, int j) {
  if (k < 1 || k > kDim || i < 1 || i > kDim || j < 1 || j > kDim)
    throw ValidationError("structure constant index out of range");
  return bracket_table()[k - 1][i - 1][j - 1];
}

Vec6c lie_bracket(const Vec6c& v, const Vec6c& w) {
  // Derived brackets live in span{E_5, E_6} and involve only E_1..E_4 inputs.
  Vec6c out = Vec6c::Zero();
  const auto& c = bracket_table();
  for (int k = 4; k < kDim; ++k) {
    Complex acc = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (c[k][i][j] != 0)
          acc += static_cast<double>(c[k][i][j]) * v(i) * w(j);
    out(k) = acc;
  }
  return out;
}

Vec6c basis_vector(int i) {
  Vec6c v = Vec6c::Zero();
  v(i - 1) = 1.0;
  return v;
}

Eigen::Vector<Complex, 6> omega_coords(const Vec6c& a) {
  Eigen::Vector<Complex, 6> zw;
  const Complex half(0.5, 0.0), ihalf(0.0, 0.5);
  for (int j = 0; j < 3; ++j) {
    zw(j) = half * a(2 * j) - ihalf * a(2 * j + 1);      // omega^j coefficient
    zw(3 + j) = half * a(2 * j) + ihalf * a(2 * j + 1);  // conj omega^j coefficient
  }
  return zw;
}

Vec6c e_coords_from_omega(const Eigen::Vector<Complex, 6>& zw) {
  Vec6c a;
  const Complex i1(0.0, 1.0);
  for (int j = 0; j < 3; ++j) {
    a(2 * j) = zw(j) + zw(3 + j);
    a(2 * j + 1) = i1 * (zw(j) - zw(3 + j));
  }
  return a;
}

}  // namespace iwasawa
