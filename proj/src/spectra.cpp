#include "iwasawa/spectra.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace iwasawa {

namespace {

constexpr double kRealTol = 1e-9;   // |Im lambda| <= tol * max(1, |lambda|)
constexpr double kWallTol = 1e-9;   // |lambda*mu - 1| or |(1-l)(1-m)| below -> Boundary
constexpr double kCoinTol = 1e-12;  // |gamma^2 - 4 delta| below this times its own
                                    // scale counts as a coincident pair

bool is_real_root(Complex lambda) {
  return std::abs(lambda.imag()) <= kRealTol * std::max(1.0, std::abs(lambda));
}

}  // namespace

XMat xmat_of(const EchelonPlus& q) {
  XMat x;
  x << q.a, q.b, q.c, q.d;
  return x;
}

SpectrumClass spectrum(const XMat& x) {
  SpectrumClass s;
  const Complex a = x(0, 0), b = x(0, 1), c = x(1, 0), d = x(1, 1);
  s.gamma = std::norm(a) + std::norm(d) + 2.0 * (b * std::conj(c)).real();
  s.delta = std::norm(a * d - b * c);
  Complex disc = Complex(s.gamma * s.gamma - 4.0 * s.delta, 0.0);
  Complex root = std::sqrt(disc);
  s.lambda = 0.5 * (Complex(s.gamma, 0.0) + root);
  s.mu = 0.5 * (Complex(s.gamma, 0.0) - root);

  // Real combinations control orientations: (1-l)(1-m) = 1 - gamma + delta,
  // 1 - l*m = 1 - delta.
  const double edge = 1.0 - s.gamma + s.delta;
  const double cap = 1.0 - s.delta;
  s.orient_D = std::abs(edge) <= kWallTol ? 0 : (edge > 0 ? +1 : -1);
  const double total = edge * cap;
  s.orient_total =
      (std::abs(edge) <= kWallTol || std::abs(cap) <= kWallTol) ? 0 : (total > 0 ? +1 : -1);

  // A coincident pair is recognised on the discriminant, not on the computed
  // roots: taking the square root turns rounding noise in gamma^2 - 4 delta
  // into a spurious split of relative size sqrt(epsilon).
  const double disc_scale = std::max(1.0, s.gamma * s.gamma + 4.0 * s.delta);
  if (std::abs(disc.real()) <= kCoinTol * disc_scale && s.gamma <= kRealTol) {
    s.region = Region::NegativeDiagonal;
    return s;
  }

  const bool real_roots = is_real_root(s.lambda) && is_real_root(s.mu);
  const double l = s.lambda.real(), m = s.mu.real();
  if (!real_roots) {
    // Conjugate pair; inside the labelled region only while |lambda| < 1.
    double mod2 = s.delta;  // |lambda|^2 = delta for a conjugate pair
    if (std::abs(mod2 - 1.0) <= kWallTol)
      s.region = Region::Boundary;
    else
      s.region = mod2 < 1.0 ? Region::ConjugatePair : Region::Boundary;
    return s;
  }
  if (std::abs(l - m) <= kRealTol * std::max(1.0, std::abs(l)) && l <= kRealTol) {
    s.region = Region::NegativeDiagonal;
    return s;
  }
  if (std::abs(s.delta - 1.0) <= kWallTol || std::abs(edge) <= kWallTol) {
    s.region = Region::Boundary;
    return s;
  }
  if (s.delta < 1.0 && edge > 0.0 && l >= -kRealTol && m >= -kRealTol) {
    s.region = Region::RealTriangle;
    return s;
  }
  if (s.delta > 1.0 && edge < 0.0) {
    s.region = Region::Shaded;
    return s;
  }
  s.region = Region::Boundary;
  return s;
}

bool lemma_coin_check(const XMat& x) {
  SpectrumClass s = spectrum(x);
  if (!is_real_root(s.lambda) || !is_real_root(s.mu)) return true;
  const double l = s.lambda.real(), m = s.mu.real();
  if (l > kRealTol || m > kRealTol) return true;
  // Distinctness of a real pair is asserted against the discriminant noise
  // floor; (l - m)^2 is exactly the discriminant.
  const double disc_scale = std::max(1.0, s.gamma * s.gamma + 4.0 * s.delta);
  return (l - m) * (l - m) <= kCoinTol * disc_scale;
}

Component classify(const ACS& acs) {
  if (!is_integrable(acs))
    throw IntegrabilityError("classification requires an integrable structure");
  const int total = orientation_total(acs);
  const Mat4d jhat = restrict_to_D(acs);
  const int on_d = orientation_D(jhat);
  Component tag;
  if (total > 0)
    tag = on_d > 0 ? Component::Cplus : Component::Cminus;
  else
    tag = on_d > 0 ? Component::MinusCplus : Component::MinusCminus;

  // Consistency with the eigenvalue conditions whenever the plus chart applies
  // and the spectrum sits clear of the walls.
  if ((tag == Component::Cplus || tag == Component::Cminus) && in_c0_finite(acs)) {
    SpectrumClass s = spectrum(echelon_plus_from_j(acs));
    const double edge = 1.0 - s.gamma + s.delta;
    if (std::abs(s.delta - 1.0) > kWallTol && std::abs(edge) > kWallTol) {
      const bool plus_ok = s.delta >= 0.0 && s.delta < 1.0;
      const bool minus_ok = s.delta > 1.0;
      if ((tag == Component::Cplus && !plus_ok) || (tag == Component::Cminus && !minus_ok))
        throw ValidationError("orientation classification contradicts the spectrum");
    }
  }
  return tag;
}

bool in_U(const XMat& x) {
  SpectrumClass s = spectrum(x);
  return (1.0 - s.gamma + s.delta) > 0.0 && s.delta >= 0.0 && s.delta < 1.0;
}

bool star_shaped_check(const XMat& x, int steps) {
  if (!in_U(x)) return false;
  for (int k = 0; k <= steps; ++k) {
    double t = static_cast<double>(k) / steps;
    if (!in_U(t * x)) return false;
  }
  return true;
}

int orbit_dimension(const EchelonPlus& q) {
  const Complex u = q.u();
  // Real 4x4 matrix of (p,q) -> (u conj(p) - a p - c q, u conj(q) - b p - d q)
  // in coordinates (Re p, Im p, Re q, Im q).
  auto put = [](Eigen::Matrix4d& m, int row, Complex lin, Complex conj_lin, int col) {
    // contribution of the variable z (columns col, col+1) through
    // lin * z + conj_lin * conj(z) into the complex output at rows row,row+1.
    m(row, col) += lin.real() + conj_lin.real();
    m(row, col + 1) += -lin.imag() + conj_lin.imag();
    m(row + 1, col) += lin.imag() + conj_lin.imag();
    m(row + 1, col + 1) += lin.real() - conj_lin.real();
  };
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  put(m, 0, -q.a, u, 0);   // first output: -a p + u conj(p)
  put(m, 0, -q.c, 0.0, 2); //               -c q
  put(m, 2, -q.b, 0.0, 0); // second output: -b p
  put(m, 2, -q.d, u, 2);   //               -d q + u conj(q)
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(m);
  const double smax = svd.singularValues()(0);
  if (smax == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < 4; ++i)
    if (svd.singularValues()(i) > 1e-9 * smax) ++rank;
  return rank / 2;
}

XMat consimilar(const XMat& x, const Eigen::Matrix2cd& g) {
  Eigen::FullPivLU<Eigen::Matrix2cd> lu(g);
  if (!lu.isInvertible()) throw DegeneracyError("conjugating matrix is singular");
  return lu.inverse() * x * g.conjugate();
}

CanonicalForm consimilarity_canonical_form(const XMat& x) {
  const XMat xxbar = x * x.conjugate();
  SpectrumClass s = spectrum(x);

  // delta is the product of the root pair and is a squared modulus, so real
  // roots come in same-sign pairs.  Reality is decided on the discriminant
  // and positivity on gamma and delta; the computed roots themselves carry
  // the square root of the rounding noise and cannot carry these gates.
  const double disc = s.gamma * s.gamma - 4.0 * s.delta;
  const double disc_scale = std::max(1.0, s.gamma * s.gamma + 4.0 * s.delta);
  if (disc < -kCoinTol * disc_scale || s.gamma <= 1e-12 || s.delta <= 1e-12)
    throw NotApplicableError("canonical form needs real positive eigenvalues");
  const double split = std::sqrt(std::max(0.0, disc));
  const double l = 0.5 * (s.gamma + split), m = 0.5 * (s.gamma - split);
  if (m <= 1e-12)
    throw NotApplicableError("canonical form needs real positive eigenvalues");

  // Whether the scalar construction applies is decided on X conj(X) itself.
  const double mid = 0.5 * s.gamma;
  const bool scalar =
      (xxbar - mid * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <=
      1e-8 * std::max(1.0, mid);

  Eigen::Matrix2cd h;  // columns h_i with X conj(h_i) = sqrt(eig_i) h_i
  if (!scalar) {
    Eigen::ComplexEigenSolver<XMat> es(xxbar);
    if (es.info() != Eigen::Success)
      throw NotApplicableError("eigen decomposition failed");
    for (int i = 0; i < 2; ++i) {
      Complex eig = es.eigenvalues()(i);
      Eigen::Vector2cd v = es.eigenvectors().col(i);
      // X conj(v) is again an eigenvector for the same (real) eigenvalue, so
      // X conj(v) = c v with |c| = sqrt(eig); a phase rotation of v absorbs c.
      Eigen::Vector2cd w = x * v.conjugate();
      int big = std::abs(v(0)) > std::abs(v(1)) ? 0 : 1;
      Complex c = w(big) / v(big);
      double root = std::sqrt(std::abs(eig.real()));
      if (std::abs(std::abs(c) - root) > 1e-6 * std::max(1.0, root))
        throw NotApplicableError("X conj(X) is not diagonalizable in the required sense");
      Complex phase = std::exp(Complex(0, 0.5 * std::arg(c)));
      h.col(i) = phase * v;
    }
    // Column 0 must carry lambda to match diag(sqrt(lambda), sqrt(mu)).
    if (std::abs(es.eigenvalues()(0).real() - l) > std::abs(es.eigenvalues()(1).real() - l))
      h.col(0).swap(h.col(1));
  } else {
    // Scalar X conj(X): T(v) = X conj(v)/sqrt(l) is an antilinear involution
    // and its fixed set is a real form of C^2.  The fixed and skew parts of
    // the two coordinate vectors give four fixed vectors that always span
    // the form, so the best conditioned pair among them is a basis.
    const double root = std::sqrt(mid);
    auto tmap = [&](const Eigen::Vector2cd& v) -> Eigen::Vector2cd {
      return x * v.conjugate() / root;
    };
    Eigen::Matrix<Complex, 2, 4> cand;
    for (int j = 0; j < 2; ++j) {
      Eigen::Vector2cd e = Eigen::Vector2cd::Unit(j);
      cand.col(j) = e + tmap(e);
      cand.col(2 + j) = Complex(0, 1) * (e - tmap(e));
    }
    int first = 0;
    for (int j = 1; j < 4; ++j)
      if (cand.col(j).norm() > cand.col(first).norm()) first = j;
    Eigen::Vector2cd f1 = cand.col(first).normalized();
    int second = -1;
    double best = -1.0;
    for (int j = 0; j < 4; ++j) {
      if (j == first) continue;
      const double res = (cand.col(j) - f1 * f1.dot(cand.col(j))).norm();
      if (res > best) { best = res; second = j; }
    }
    h.col(0) = cand.col(first);
    h.col(1) = cand.col(second);
  }

  CanonicalForm out;
  out.diag = XMat::Zero();
  // In the scalar case the computed split of the pair is pure noise, so both
  // diagonal entries take the midpoint root.
  out.diag(0, 0) = std::sqrt(scalar ? mid : l);
  out.diag(1, 1) = std::sqrt(scalar ? mid : m);
  Eigen::FullPivLU<Eigen::Matrix2cd> lu(h);
  if (!lu.isInvertible())
    throw NotApplicableError("coneigenvector basis is singular");
  out.g = lu.inverse();
  XMat rebuilt = out.g.inverse() * out.diag * out.g.conjugate();
  if ((rebuilt - x).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, x.cwiseAbs().maxCoeff()))
    throw NotApplicableError("canonical form residual exceeds tolerance");
  return out;
}

}  // namespace iwasawa
