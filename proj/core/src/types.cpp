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

#include "coalform/types.hpp"

#include <cmath>

namespace coalform {

double distance(const Node& a, const Node& b) {
  const double dx = a.pos.x - b.pos.x;
  const double dy = a.pos.y - b.pos.y;
  return std::hypot(dx, dy);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double dbi_to_linear(double dbi) { return std::pow(10.0, dbi / 10.0); }

double noise_watts(double n0_dbm_per_mhz, double bandwidth_hz) {
  return dbm_to_watts(n0_dbm_per_mhz) * (bandwidth_hz / 1e6);
}

}  // namespace coalform
