#include "iwasawa/sampling.hpp"

#include <cstdlib>
#include <string>

#include <Eigen/QR>

#include "iwasawa/errors.hpp"

namespace iwasawa {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk) {
  std::uint64_t state = seed ^ (0xa0761d6478bd642full * (chunk + 1));
  std::seed_seq seq{splitmix64(state), splitmix64(state), splitmix64(state),
                    splitmix64(state)};
  return std::mt19937_64(seq);
}

int resolve_threads() {
  if (const char* env = std::getenv("IWASAWA_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

double uniform_pm(std::mt19937_64& rng, double radius) {
  return std::uniform_real_distribution<double>(-radius, radius)(rng);
}

Complex random_complex(std::mt19937_64& rng, double radius) {
  const double re = uniform_pm(rng, radius);
  return Complex(re, uniform_pm(rng, radius));
}

Eigen::Vector4d random_unit_quaternion(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::Vector4d q;
  do {
    for (int i = 0; i < 4; ++i) q(i) = normal(rng);
  } while (q.norm() < 1e-6);
  return q / q.norm();
}

Mat6d random_orthogonal6(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Mat6d m;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m(i, j) = normal(rng);
  Eigen::HouseholderQR<Mat6d> qr(m);
  Mat6d q = qr.householderQ();
  Mat6d r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the sign ambiguity of QR so the distribution is uniform.
  for (int i = 0; i < 6; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  return q;
}

ACS random_acs(std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Mat6d m;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) m(i, j) = uniform_pm(rng, 1.0);
    // Conditioning of the conjugator bounds the entries of the result, so
    // reject the badly conditioned draws.
    Eigen::JacobiSVD<Mat6d> svd(m);
    if (svd.singularValues()(5) < 0.02 * svd.singularValues()(0)) continue;
    Mat6d j = m * j0().J * m.inverse();
    // Two commuting polynomial corrections restore J^2 = -I to working
    // precision after the inversion round-off.
    for (int k = 0; k < 2; ++k) j = 0.5 * j * (3.0 * Mat6d::Identity() + j * j);
    return ACS(j);
  }
  throw DegeneracyError("failed to sample a well conditioned conjugator");
}

EchelonPlus random_echelon_plus(std::mt19937_64& rng, double radius) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    EchelonPlus coords{random_complex(rng, radius), random_complex(rng, radius),
                       random_complex(rng, radius), random_complex(rng, radius),
                       random_complex(rng, radius), random_complex(rng, radius)};
    try {
      j_from_echelon_plus(coords);
      return coords;
    } catch (const DegeneracyError&) {
    }
  }
  throw DegeneracyError("echelon sampling kept hitting degenerate tuples");
}

EchelonMinus random_echelon_minus(std::mt19937_64& rng, double radius) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    EchelonMinus coords{random_complex(rng, radius), random_complex(rng, radius),
                        random_complex(rng, radius), random_complex(rng, radius),
                        random_complex(rng, radius), random_complex(rng, radius)};
    try {
      j_from_echelon_minus(coords);
      return coords;
    } catch (const DegeneracyError&) {
    }
  }
  throw DegeneracyError("echelon sampling kept hitting degenerate tuples");
}

EchelonMinus random_fiber_minus(std::mt19937_64& rng, double radius) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    const Complex b = random_complex(rng, radius);
    EchelonMinus coords{random_complex(rng, radius), b, b,
                        random_complex(rng, radius), random_complex(rng, radius),
                        random_complex(rng, radius)};
    try {
      j_from_echelon_minus(coords);
      return coords;
    } catch (const DegeneracyError&) {
    }
  }
  throw DegeneracyError("fiber sampling kept hitting degenerate tuples");
}

XMat random_xmat(std::mt19937_64& rng, double radius) {
  XMat x;
  x << random_complex(rng, radius), random_complex(rng, radius),
       random_complex(rng, radius), random_complex(rng, radius);
  return x;
}

XMat random_in_U(std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    XMat x = random_xmat(rng, 1.1);
    if (in_U(x)) return x;
  }
  throw DegeneracyError("rejection sampling of the chart region failed");
}

Mat4d random_admissible_sigma(std::mt19937_64& rng, const Mat4d& p, double scale) {
  Mat4d s0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) s0(i, j) = s0(j, i) = uniform_pm(rng, scale);
  return 0.5 * (s0 + p * s0 * p);
}

}  // namespace iwasawa
