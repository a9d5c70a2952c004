/*
 * Copyright 2026 The ohmsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ohmsim {

enum class Platform : std::uint8_t { Origin, Hetero, OhmBase, AutoRw, OhmWom, OhmBw, Oracle };

enum class MemoryMode : std::uint8_t { Planar, TwoLevel };

inline constexpr std::array<Platform, 7> kAllPlatforms{Platform::Origin, Platform::Hetero, Platform::OhmBase,
                                                       Platform::AutoRw, Platform::OhmWom, Platform::OhmBw,
                                                       Platform::Oracle};

/// A lower layer was asked for a function the platform's hardware lacks.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string_view to_string(Platform p) {
  switch (p) {
    case Platform::Origin: return "origin";
    case Platform::Hetero: return "hetero";
    case Platform::OhmBase: return "ohm-base";
    case Platform::AutoRw: return "auto-rw";
    case Platform::OhmWom: return "ohm-wom";
    case Platform::OhmBw: return "ohm-bw";
    case Platform::Oracle: return "oracle";
  }
  return "?";
}

inline std::string_view to_string(MemoryMode m) { return m == MemoryMode::Planar ? "planar" : "two-level"; }

inline Platform parse_platform(std::string_view s) {
  for (auto p : kAllPlatforms) {
    if (to_string(p) == s) return p;
  }
  throw std::invalid_argument("unknown platform: " + std::string(s));
}

inline MemoryMode parse_mode(std::string_view s) {
  if (s == "planar") return MemoryMode::Planar;
  if (s == "two-level" || s == "twolevel" || s == "2lm") return MemoryMode::TwoLevel;
  throw std::invalid_argument("unknown memory mode: " + std::string(s));
}

/// What the hardware of each platform can do.
struct Capabilities {
  bool optical{true};
  bool has_xpoint{true};
  bool auto_rw{false};        // XPoint snarfs MC<->DRAM traffic
  bool swap{false};           // SWAP-CMD + DDR sequence generator
  bool reverse_write{false};  // DDR monitor in the MC
  bool wom_coding{false};     // swap dual route multiplexed by WOM code
  bool hc_transmitters{false};
  bool dedicated_migration_channel{false};
  double laser_multiplier{1.0};
};

/// `oracle_dedicated` selects the dedicated-migration-channel Oracle instead
/// of the DRAM-only one.
inline Capabilities capabilities(Platform p, bool oracle_dedicated = false) {
  Capabilities c;
  switch (p) {
    case Platform::Origin:
      c.optical = false;
      c.has_xpoint = false;
      break;
    case Platform::Hetero: c.optical = false; break;
    case Platform::OhmBase: break;
    case Platform::AutoRw:
      c.auto_rw = true;
      c.laser_multiplier = 2.0;
      break;
    case Platform::OhmWom:
      c.auto_rw = c.swap = c.reverse_write = c.wom_coding = true;
      c.laser_multiplier = 2.0;
      break;
    case Platform::OhmBw:
      c.auto_rw = c.swap = c.reverse_write = c.hc_transmitters = true;
      c.laser_multiplier = 4.0;
      break;
    case Platform::Oracle:
      if (oracle_dedicated) {
        c.dedicated_migration_channel = true;
      } else {
        c.has_xpoint = false;
      }
      break;
  }
  return c;
}

}  // namespace ohmsim
