#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "iwasawa/acs.hpp"
#include "iwasawa/echelon.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/sampling.hpp"
#include "iwasawa/spectra.hpp"

using namespace iwasawa;

namespace {

// Oracle: the root pair must match the eigenvalues of X conj(X) computed
// by a general-purpose solver, as an unordered pair.
double root_pair_defect(const XMat& x, const SpectrumClass& sp) {
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(x * x.conjugate(), false);
  const Complex e0 = es.eigenvalues()(0), e1 = es.eigenvalues()(1);
  const double direct = std::max(std::abs(sp.lambda - e0), std::abs(sp.mu - e1));
  const double swapped = std::max(std::abs(sp.lambda - e1), std::abs(sp.mu - e0));
  return std::min(direct, swapped) / std::max({1.0, std::abs(e0), std::abs(e1)});
}

XMat xmat(Complex a, Complex b, Complex c, Complex d) {
  XMat x;
  x << a, b, c, d;
  return x;
}

}  // namespace

TEST_CASE("roots agree with a general eigensolver on random input") {
  std::mt19937_64 rng(43);
  for (int s = 0; s < 500; ++s) {
    XMat x = random_xmat(rng, 2.0);
    SpectrumClass sp = spectrum(x);
    CHECK(root_pair_defect(x, sp) <= 1e-10);
    CHECK(std::abs(sp.lambda + sp.mu - sp.gamma) <= 1e-10 * std::max(1.0, std::abs(sp.gamma)));
    CHECK(std::abs(sp.lambda * sp.mu - sp.delta) <= 1e-10 * std::max(1.0, sp.delta));
  }
}

TEST_CASE("frozen spectra of simple matrices") {
  SpectrumClass d12 = spectrum(xmat(1.0, 0, 0, Complex(0, 2)));
  const double lo = std::min(d12.lambda.real(), d12.mu.real());
  const double hi = std::max(d12.lambda.real(), d12.mu.real());
  CHECK(std::abs(lo - 1.0) <= 1e-14);
  CHECK(std::abs(hi - 4.0) <= 1e-14);
  CHECK(std::abs(d12.lambda.imag()) + std::abs(d12.mu.imag()) <= 1e-14);
  CHECK(d12.gamma == doctest::Approx(5.0));
  CHECK(d12.delta == doctest::Approx(4.0));

  // Antisymmetric off-diagonal block lands on the non-positive diagonal.
  SpectrumClass rot = spectrum(xmat(0, Complex(0.5, 0.5), Complex(-0.5, -0.5), 0));
  CHECK(std::abs(rot.lambda - rot.mu) <= 1e-14);
  CHECK(rot.lambda.real() == doctest::Approx(-0.5));
  CHECK(rot.region == Region::NegativeDiagonal);

  // Symmetric off-diagonal block gives a coincident positive pair.
  SpectrumClass sym = spectrum(xmat(0, 0.5, 0.5, 0));
  CHECK(sym.lambda.real() == doctest::Approx(0.25));
  CHECK(sym.region == Region::RealTriangle);
}

TEST_CASE("region taxonomy on constructed inputs") {
  CHECK(spectrum(xmat(0.5, 0, 0, 0.3)).region == Region::RealTriangle);
  CHECK(spectrum(xmat(2.0, 0, 0, 0.8)).region == Region::Shaded);
  CHECK(spectrum(xmat(1.0, 0, 0, 1.0)).region == Region::Boundary);
  CHECK(spectrum(xmat(0, 1.0, -1.0, 0)).region == Region::NegativeDiagonal);
  SpectrumClass conj = spectrum(xmat(0.4, 0.3, -0.3, 0.4));
  CHECK(conj.region == Region::ConjugatePair);
  CHECK(std::abs(conj.lambda - std::conj(conj.mu)) <= 1e-12);
}

TEST_CASE("orientation signs come from the edge and product terms") {
  SpectrumClass tri = spectrum(xmat(0.5, 0, 0, 0.3));
  CHECK(tri.orient_D == 1);
  CHECK(tri.orient_total == 1);
  SpectrumClass sh = spectrum(xmat(2.0, 0, 0, 0.8));
  CHECK(sh.orient_D == -1);
  CHECK(sh.orient_total == 1);
  SpectrumClass big = spectrum(xmat(1.5, 0, 0, 1.5));
  CHECK(big.orient_D == 1);
  CHECK(big.orient_total == -1);
}

TEST_CASE("no coincident-root counterexamples on random and constructed input") {
  std::mt19937_64 rng(47);
  for (int s = 0; s < 2000; ++s) CHECK(lemma_coin_check(random_xmat(rng, 3.0)));
  CHECK(lemma_coin_check(xmat(0, 1.0, -1.0, 0)));
  CHECK(lemma_coin_check(xmat(0.5, 0, 0, 0.3)));
}

TEST_CASE("component classification of anchors and chart samples") {
  CHECK(classify(j0()) == Component::Cplus);
  CHECK(classify(j1()) == Component::Cminus);
  CHECK(classify(j_from_echelon_plus({2.0, 0, 0, 0.8, 0, 0})) == Component::Cminus);
  CHECK(classify(j_from_echelon_plus({1.5, 0, 0, 1.5, 0, 0})) == Component::MinusCplus);
  CHECK(classify(j_from_echelon_plus({0.5, 0, 0, 0.3, 0, 0})) == Component::Cplus);
}

TEST_CASE("region membership in the chart set") {
  CHECK(in_U(xmat(0.5, 0, 0, 0.5)));
  CHECK(!in_U(xmat(2.0, 0, 0, 0)));
  CHECK(!in_U(xmat(1.5, 0, 0, 1.5)));
}

TEST_CASE("scaling keeps chart members inside") {
  std::mt19937_64 rng(53);
  for (int s = 0; s < 100; ++s) {
    XMat x = random_in_U(rng);
    CHECK(in_U(x));
    CHECK(star_shaped_check(x, 100));
  }
}

TEST_CASE("orbit dimension case analysis") {
  std::mt19937_64 rng(59);
  CHECK(orbit_dimension({0, 0, 0, 0, Complex(0.3, 1), Complex(-2, 0)}) == 0);
  for (int s = 0; s < 50; ++s) {
    Complex a = random_complex(rng, 1.0), b = random_complex(rng, 1.0);
    CHECK(orbit_dimension({a, b, 0, 0, random_complex(rng, 1.0), 0}) == 1);
    EchelonPlus generic = random_echelon_plus(rng, 1.5);
    if (std::abs(generic.u()) > 1e-3) CHECK(orbit_dimension(generic) == 2);
  }
}

TEST_CASE("consimilarity transform matches its definition and keeps invariants") {
  std::mt19937_64 rng(61);
  for (int s = 0; s < 100; ++s) {
    XMat x = random_xmat(rng, 1.5);
    Eigen::Matrix2cd g;
    do {
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = random_complex(rng, 1.0);
    } while (std::abs(g.determinant()) < 0.3);
    XMat y = consimilar(x, g);
    CHECK((y - XMat(g.inverse() * x * g.conjugate())).cwiseAbs().maxCoeff() <= 1e-12);
    SpectrumClass sx = spectrum(x), sy = spectrum(y);
    CHECK(std::abs(sx.gamma - sy.gamma) <= 1e-8 * std::max(1.0, std::abs(sx.gamma)));
    CHECK(std::abs(sx.delta - sy.delta) <= 1e-8 * std::max(1.0, sx.delta));
  }
}

TEST_CASE("canonical form diagonalizes positive spectra") {
  XMat x = xmat(1.0, 0, 0, 2.0);
  CanonicalForm cf = consimilarity_canonical_form(x);
  XMat rebuilt = cf.g.inverse() * cf.diag * cf.g.conjugate();
  CHECK((rebuilt - x).cwiseAbs().maxCoeff() <= 1e-10);
  const double s0 = std::norm(cf.diag(0, 0)), s1 = std::norm(cf.diag(1, 1));
  CHECK(std::min(std::abs(s0 - 1.0) + std::abs(s1 - 4.0),
                 std::abs(s0 - 4.0) + std::abs(s1 - 1.0)) <= 1e-10);

  // Coincident positive pair, built from a conjugation.
  Eigen::Matrix2cd g;
  g << Complex(1, 0.5), Complex(0.2, -0.1), Complex(-0.3, 0.2), Complex(0.9, 0);
  XMat xc = g.inverse() * (1.3 * XMat::Identity()) * g.conjugate();
  CanonicalForm cfc = consimilarity_canonical_form(xc);
  XMat rc = cfc.g.inverse() * cfc.diag * cfc.g.conjugate();
  CHECK((rc - xc).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("canonical form refuses non-positive spectra") {
  CHECK_THROWS_AS(consimilarity_canonical_form(xmat(0, 1.0, -1.0, 0)), NotApplicableError);
}
