#pragma once

// Deterministic random generation for property suites and the CLI. Every
// sampler takes an explicit generator; bulk work goes through run_chunked,
// which assigns one generator per fixed-size chunk so results do not depend
// on the worker count.

#include <atomic>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "iwasawa/acs.hpp"
#include "iwasawa/echelon.hpp"
#include "iwasawa/spectra.hpp"

namespace iwasawa {

std::uint64_t splitmix64(std::uint64_t& state);

// Generator for one chunk of a bulk run; mixes the seed with the chunk index.
std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk);

// Worker count: IWASAWA_THREADS when set and positive, otherwise the
// hardware concurrency (at least 1).
int resolve_threads();

inline constexpr std::int64_t kChunkSize = 1024;

// Splits [0, total) into fixed chunks, runs fn(rng, begin, end) per chunk on
// a small thread pool, and folds the per-chunk results in chunk order.
template <typename R, typename ChunkFn, typename Combine>
R run_chunked(std::uint64_t seed, std::int64_t total, R init, ChunkFn fn, Combine combine) {
  if (total <= 0) return init;
  const std::int64_t chunks = (total + kChunkSize - 1) / kChunkSize;
  std::vector<R> results(static_cast<std::size_t>(chunks), init);
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::int64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      std::mt19937_64 rng = chunk_rng(seed, static_cast<std::uint64_t>(c));
      const std::int64_t begin = c * kChunkSize;
      const std::int64_t end = std::min(total, begin + kChunkSize);
      results[static_cast<std::size_t>(c)] = fn(rng, begin, end);
    }
  };
  const int nthreads = std::min<std::int64_t>(resolve_threads(), chunks);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  R acc = init;
  for (const R& r : results) acc = combine(acc, r);
  return acc;
}

double uniform_pm(std::mt19937_64& rng, double radius);          // U[-radius, radius]
Complex random_complex(std::mt19937_64& rng, double radius);     // square box
Eigen::Vector4d random_unit_quaternion(std::mt19937_64& rng);
Mat6d random_orthogonal6(std::mt19937_64& rng);                  // Haar via QR

// Conjugate of the base structure by a random invertible matrix, corrected
// to square to -identity at working precision.
ACS random_acs(std::mt19937_64& rng);

// Chart samples; retried internally when a draw lands on a degenerate tuple.
EchelonPlus random_echelon_plus(std::mt19937_64& rng, double radius);
EchelonMinus random_echelon_minus(std::mt19937_64& rng, double radius);
// Fiber samples over the minus anchor: c = b.
EchelonMinus random_fiber_minus(std::mt19937_64& rng, double radius);

XMat random_xmat(std::mt19937_64& rng, double radius);
// Rejection sample of the star-shaped chart region (bounded retry count).
XMat random_in_U(std::mt19937_64& rng);

// Symmetric sigma with sigma = p sigma p, the tangent directions of the
// retraction fiber at p; scale bounds the entries.
Mat4d random_admissible_sigma(std::mt19937_64& rng, const Mat4d& p, double scale);

}  // namespace iwasawa
