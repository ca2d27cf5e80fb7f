// Copyright 2026 The emre-kit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EMREKIT_COMMON_HPP_
#define EMREKIT_COMMON_HPP_

#include <complex>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace emrekit {

using cplx = std::complex<double>;

enum class ErrorCode : int {
  Unknown = 1,
  InvalidArgument,
  InvalidProbability,
  DimensionMismatch,
  CompletenessViolation,
  NonInvertibleNoise,
  NonPauliNoise,
  UnsupportedNoise,
  InfeasibleCertificate,
  ParseError,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

// Global numeric tolerance for Hermiticity / CP / TP / trace checks.
// A single knob so that all invariant checks agree on "close enough".
double& numeric_tolerance();

// Counter-derived deterministic RNG. Streams are derived from a master seed
// plus a path of indices (shot number, repetition number, ...), so results
// are bit-identical regardless of how work is scheduled across threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  static RngStream derive(std::uint64_t master,
                          std::initializer_list<std::uint64_t> path);

  std::uint64_t next_u64();
  // Uniform in [0, 1).
  double next_double();
  // Standard normal via Box-Muller.
  double next_gaussian();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Thread-count resolution: explicit request > EMREKIT_THREADS env variable >
// hardware concurrency.
int resolve_thread_count(int requested);

// Runs body(begin, end) over [0, n) split into contiguous chunks.
void parallel_for(std::int64_t n, int threads,
                  const std::function<void(std::int64_t, std::int64_t)>& body);

}  // namespace emrekit

#endif  // EMREKIT_COMMON_HPP_
