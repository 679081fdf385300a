/*
Copyright 2026 coalform contributors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace coalform {

/// splitmix64 step; used to derive per-run / per-stream seeds from a master seed.
uint64_t splitmix64_next(uint64_t& state);

/// Stable combination of a base seed with a stream index.
uint64_t mix_seed(uint64_t base, uint64_t stream);

/// Deterministic RNG. mt19937_64 has a standard-pinned output sequence; the
/// distributions are implemented here because the <random> adaptors are not
/// reproducible across standard libraries, and identical seeds must produce
/// identical runs on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  /// Uniform integer in [0, n). n must be positive.
  int uniform_int(int n);

  bool bernoulli(double p) { return next_unit() < p; }

  double exponential(double mean);

  /// Fisher-Yates; the swap order is part of the determinism contract.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(uniform_int(static_cast<int>(i)));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace coalform
