#pragma once

// Named property suites over every library module, runnable as a batch from
// the CLI. Each suite draws its own deterministic samples from the run seed,
// so a fixed seed gives a byte-identical report regardless of thread count.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace iwasawa {

struct RunConfig {
  std::uint64_t seed = 42;
  // Scale knob: suites size their sweeps relative to the default of 1000,
  // so --samples 100 runs a ten-fold faster (and weaker) pass.
  std::int64_t samples = 1000;
  // Comparison tolerance; applied only when overridden, otherwise each
  // check keeps its own pinned value.
  double tolerance = 1e-9;
  bool tol_overridden = false;

  void validate() const;  // throws ValidationError unless samples, tolerance > 0
};

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string detail;   // deterministic: counts and observed margins
  double seconds = 0.0; // wall time, table display only, never serialized
};

struct Suite {
  std::string name;
  std::string summary;
  std::function<SuiteResult(const RunConfig&)> run;
};

// Fixed registration order; completeness is pinned by a test against a
// static name list.
const std::vector<Suite>& verification_suites();

std::vector<SuiteResult> run_all_suites(const RunConfig& config);

}  // namespace iwasawa
