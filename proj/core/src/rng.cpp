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

#include "coalform/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace coalform {

uint64_t splitmix64_next(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

uint64_t mix_seed(uint64_t base, uint64_t stream) {
  uint64_t s = base ^ (0xA0761D6478BD642FULL * (stream + 1));
  uint64_t a = splitmix64_next(s);
  uint64_t b = splitmix64_next(s);
  return a ^ (b >> 1);
}

int Rng::uniform_int(int n) {
  if (n <= 0) throw std::invalid_argument("Rng::uniform_int: n must be positive");
  // Modulo bias is below 2^-32 for the ranges used here (n << 2^32).
  return static_cast<int>(next_u64() % static_cast<uint64_t>(n));
}

double Rng::exponential(double mean) {
  double u;
  do {
    u = next_unit();
  } while (u <= 0.0);
  return -mean * std::log(u);
}

}  // namespace coalform
