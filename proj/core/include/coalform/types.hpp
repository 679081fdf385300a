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
#include <vector>

namespace coalform {

using NodeId = int;

inline constexpr double kSpeedOfLight = 299792458.0;       // m/s
inline constexpr double kDefaultCarrierHz = 5.9e9;         // vehicular band
inline constexpr double kDefaultWavelengthM = kSpeedOfLight / kDefaultCarrierHz;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// A network entity: an intelligent vehicle or a roadside unit (RSU).
/// Ids are dense in [0, N). RSUs never move and get a larger range.
struct Node {
  NodeId id = 0;
  Vec2 pos;            // meters, inside [0, L]^2
  Vec2 vel;            // m/s; (0, 0) for RSUs
  double range = 0.0;  // communication radius, meters
  bool is_rsu = false;
  friend bool operator==(const Node&, const Node&) = default;
};

double distance(const Node& a, const Node& b);

/// Channel model inputs. All dB quantities are converted to linear watts
/// before entering any formula:
///   dBm -> W            10^((x - 30) / 10)
///   dBi -> linear gain  10^(x / 10)
///   noise floor         10^((n0_dbm_per_mhz - 30) / 10) * bandwidth_hz / 1e6
struct ChannelParams {
  double p_t_dbm = 30.0;          // transmit power
  double g0_dbi = 20.0;           // maximum directive antenna gain
  double bandwidth_hz = 800e6;    // system bandwidth W
  double n0_dbm_per_mhz = -134.0; // background noise density
  double alpha_l = 2.0;           // LOS path-loss exponent
  double wavelength_m = kDefaultWavelengthM;
  bool interference_on = false;   // sum concurrent transmitters into the SINR
  bool fading_on = false;         // seeded exponential(1) channel gains; h = 1 otherwise
  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

double dbm_to_watts(double dbm);
double dbi_to_linear(double dbi);
double noise_watts(double n0_dbm_per_mhz, double bandwidth_hz);

}  // namespace coalform
