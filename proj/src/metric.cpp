#include "iwasawa/metric.hpp"

#include <cmath>

#include "iwasawa/errors.hpp"

namespace iwasawa {

namespace {

// Masks of the Form2D basis order e^12, e^13, e^14, e^23, e^24, e^34.
constexpr uint8_t kMask2D[6] = {0x03, 0x05, 0x09, 0x06, 0x0a, 0x0c};

Eigen::Matrix2d rot90() {
  Eigen::Matrix2d r;
  r << 0, -1, 1, 0;
  return r;
}

// Entry (i,j) is the value of the basis form on (E_{i+1}, E_{j+1}).
Mat4d minus_basis_matrix(int i) {
  Mat4d m = Mat4d::Zero();
  switch (i) {
    case 0:  // e^12 - e^34
      m(0, 1) = 1; m(1, 0) = -1; m(2, 3) = -1; m(3, 2) = 1;
      break;
    case 1:  // e^13 + e^24
      m(0, 2) = 1; m(2, 0) = -1; m(1, 3) = 1; m(3, 1) = -1;
      break;
    default:  // e^14 - e^23
      m(0, 3) = 1; m(3, 0) = -1; m(1, 2) = -1; m(2, 1) = 1;
      break;
  }
  return m;
}

}  // namespace

Form2D form2d_of(const KForm& w) {
  if (w.degree() != 2) throw DegreeError("expected a 2-form");
  Form2D out = Form2D::Zero();
  for (const auto& [idx, coeff] : w.terms(0.0)) {
    if (std::abs(coeff.imag()) > 1e-12 * std::max(1.0, std::abs(coeff)))
      throw ValidationError("2-form on D must have real coefficients");
    bool placed = false;
    for (int k = 0; k < 6; ++k) {
      if (idx.mask() == kMask2D[k]) {
        out(k) = coeff.real();
        placed = true;
        break;
      }
    }
    if (!placed) throw ValidationError("2-form has components outside D");
  }
  return out;
}

KForm kform_of(const Form2D& w) {
  KForm out(2);
  for (int k = 0; k < 6; ++k) out.set_coeff(MultiIndex(kMask2D[k]), w(k));
  return out;
}

SDSplit sd_split(const Form2D& w) {
  SDSplit s;
  s.plus << (w(0) + w(5)) / 2, (w(1) - w(4)) / 2, (w(2) + w(3)) / 2;
  s.minus << (w(0) - w(5)) / 2, (w(1) + w(4)) / 2, (w(2) - w(3)) / 2;
  return s;
}

Form2D sd_assemble(const SDSplit& parts) {
  Form2D w;
  w(0) = parts.plus(0) + parts.minus(0);
  w(5) = parts.plus(0) - parts.minus(0);
  w(1) = parts.plus(1) + parts.minus(1);
  w(4) = -parts.plus(1) + parts.minus(1);
  w(2) = parts.plus(2) + parts.minus(2);
  w(3) = parts.plus(2) - parts.minus(2);
  return w;
}

KForm sd_basis_plus(int i) {
  Form2D w = Form2D::Zero();
  if (i == 0) { w(0) = 1; w(5) = 1; }
  else if (i == 1) { w(1) = 1; w(4) = -1; }
  else { w(2) = 1; w(3) = 1; }
  return kform_of(w);
}

KForm sd_basis_minus(int i) {
  Form2D w = Form2D::Zero();
  if (i == 0) { w(0) = 1; w(5) = -1; }
  else if (i == 1) { w(1) = 1; w(4) = 1; }
  else { w(2) = 1; w(3) = -1; }
  return kform_of(w);
}

bool is_orthogonal(const ACS& acs, double tol) {
  return (acs.J.transpose() * acs.J - Mat6d::Identity()).cwiseAbs().maxCoeff() <= tol;
}

bool is_orthogonal_d(const Mat4d& jhat, double tol) {
  return (jhat.transpose() * jhat - Mat4d::Identity()).cwiseAbs().maxCoeff() <= tol;
}

KForm fundamental_form(const ACS& acs) {
  if (!is_orthogonal(acs)) throw ValidationError("fundamental form needs an orthogonal J");
  KForm out(2);
  for (int i = 1; i <= kDim; ++i)
    for (int j = i + 1; j <= kDim; ++j) {
      uint8_t mask = static_cast<uint8_t>((1u << (i - 1)) | (1u << (j - 1)));
      out.set_coeff(MultiIndex(mask), acs.J(j - 1, i - 1));
    }
  return out;
}

Form2D fundamental_form_d(const Mat4d& jhat) {
  if (!is_orthogonal_d(jhat)) throw ValidationError("fundamental form needs an orthogonal J");
  Form2D w;
  w << jhat(1, 0), jhat(2, 0), jhat(3, 0), jhat(2, 1), jhat(3, 1), jhat(3, 2);
  return w;
}

SphereCoord hemisphere_coords(Complex b) {
  const double s = 1.0 + std::norm(b);
  SphereCoord n;
  n.A = (1.0 - std::norm(b)) / s;
  n.B = 2.0 * b.imag() / s;
  n.C = -2.0 * b.real() / s;
  return n;
}

Complex hemisphere_b(const SphereCoord& n) {
  if (1.0 + n.A <= 1e-12)
    throw DegeneracyError("b-chart is singular at the antipode A = -1");
  return Complex(-n.C, n.B) / (1.0 + n.A);
}

Mat4d z_sphere_restriction(const SphereCoord& n) {
  const double r2 = n.A * n.A + n.B * n.B + n.C * n.C;
  if (std::abs(r2 - 1.0) > 1e-12) throw ValidationError("sphere coordinate is not unit");
  Mat4d phi = n.A * minus_basis_matrix(0) + n.B * minus_basis_matrix(1) +
              n.C * minus_basis_matrix(2);
  return phi.transpose();
}

ACS z_sphere_element(const SphereCoord& n) {
  Mat4d jhat = z_sphere_restriction(n);
  for (double s : {-1.0, 1.0}) {
    Mat6d j = Mat6d::Zero();
    j.topLeftCorner<4, 4>() = jhat;
    j.bottomRightCorner<2, 2>() = s * rot90();
    ACS acs(j);
    if (orientation_total(acs) > 0) return acs;
  }
  throw DegeneracyError("no orientation-positive extension found");
}

SphereCoord z_coords_of(const ACS& acs) {
  if (!is_orthogonal(acs)) throw ValidationError("not an orthogonal structure");
  SDSplit parts = sd_split(fundamental_form_d(restrict_to_D(acs)));
  if (parts.plus.norm() > 1e-8)
    throw ValidationError("restriction has a self-dual component");
  if (std::abs(parts.minus.norm() - 1.0) > 1e-8)
    throw ValidationError("anti-self-dual part is not unit");
  Eigen::Vector3d unit = parts.minus / parts.minus.norm();
  return SphereCoord{unit(0), unit(1), unit(2)};
}

KForm orthogonal_lift_wedge(Complex b, Complex x, Complex y) {
  KForm b1 = omega_form(1);
  KForm t = omega_bar_form(2); t *= b; b1 += t;
  KForm b2 = omega_form(2);
  t = omega_bar_form(1); t *= -b; b2 += t;
  KForm b3 = omega_form(3);
  t = omega_bar_form(1); t *= x; b3 += t;
  t = omega_bar_form(2); t *= y; b3 += t;
  t = omega_bar_form(3); t *= -b * b; b3 += t;
  KForm two = wedge(b1, b2);
  KForm four = wedge(two, two.conjugate());
  return wedge(wedge(four, b3), b3.conjugate());
}

bool equator_obstruction_check() {
  // (1,0)-forms of the equator structure, the b = i point of the chart.
  KForm p1 = omega_form(1);
  KForm t = omega_bar_form(2); t *= Complex(0, 1); p1 += t;
  KForm p2 = omega_form(2);
  t = omega_bar_form(1); t *= Complex(0, -1); p2 += t;

  auto candidate = [&](Complex u, Complex x, Complex y) {
    KForm a3 = omega_form(3);
    KForm s = omega_form(1); s *= x; a3 += s;
    s = omega_form(2); s *= y; a3 += s;
    s = omega_bar_form(3); s *= u; a3 += s;
    return a3;
  };

  const Complex samples[][2] = {
      {Complex(0, 0), Complex(0, 0)},   {Complex(1, 0), Complex(0, 0)},
      {Complex(0, 0), Complex(0, 1)},   {Complex(1.5, -0.7), Complex(-2.3, 0.4)},
      {Complex(-0.25, 1), Complex(3, -0.5)}, {Complex(0, 2), Complex(-1, -1)},
  };

  KForm p12 = wedge(p1, p2);
  for (const auto& xy : samples) {
    // The final coefficient u = 1 is the only one compatible with
    // integrability: d(alpha^3) ^ alpha^123 must vanish.
    for (Complex u : {Complex(1, 0), Complex(0, 0), Complex(-1, 0),
                      Complex(0.5, 0), Complex(0, 2)}) {
      KForm a3 = candidate(u, xy[0], xy[1]);
      KForm cond = wedge(wedge(ce_differential(a3), p12), a3);
      const bool vanishes = cond.max_abs_coeff() <= 1e-12;
      if (u == Complex(1, 0) ? !vanishes : vanishes) return false;
    }
    KForm a3 = candidate(Complex(1, 0), xy[0], xy[1]);
    KForm full = wedge(wedge(wedge(p12, p12.conjugate()), a3), a3.conjugate());
    if (full.max_abs_coeff() > 1e-12) return false;
  }
  return true;
}

}  // namespace iwasawa
