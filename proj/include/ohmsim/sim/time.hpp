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

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>

namespace ohmsim {

/// Simulation time in integer picoseconds. All device and optical latencies
/// in the default configuration are whole picoseconds, so time never rounds.
struct SimTime {
  std::uint64_t ps{0};

  constexpr SimTime() = default;
  constexpr explicit SimTime(std::uint64_t picoseconds) : ps(picoseconds) {}

  static constexpr SimTime max() { return SimTime{std::numeric_limits<std::uint64_t>::max()}; }

  constexpr double as_ns() const { return static_cast<double>(ps) / 1000.0; }
  constexpr double as_seconds() const { return static_cast<double>(ps) * 1e-12; }

  constexpr auto operator<=>(const SimTime&) const = default;

  constexpr SimTime& operator+=(SimTime o) {
    ps += o.ps;
    return *this;
  }
  friend constexpr SimTime operator+(SimTime a, SimTime b) { return SimTime{a.ps + b.ps}; }
  // Saturates at zero.
  friend constexpr SimTime operator-(SimTime a, SimTime b) { return SimTime{a.ps > b.ps ? a.ps - b.ps : 0}; }
  friend constexpr SimTime operator*(SimTime a, std::uint64_t k) { return SimTime{a.ps * k}; }

  friend std::ostream& operator<<(std::ostream& os, SimTime t) { return os << t.ps << "ps"; }
};

constexpr SimTime picoseconds(std::uint64_t v) { return SimTime{v}; }
constexpr SimTime nanoseconds(std::uint64_t v) { return SimTime{v * 1000}; }
constexpr SimTime microseconds(std::uint64_t v) { return SimTime{v * 1000 * 1000}; }

/// Converts a (non-negative) nanosecond value from configuration to SimTime,
/// rounding to the nearest picosecond.
inline SimTime from_ns(double ns) { return SimTime{static_cast<std::uint64_t>(ns * 1000.0 + 0.5)}; }

constexpr SimTime max(SimTime a, SimTime b) { return a < b ? b : a; }
constexpr SimTime min(SimTime a, SimTime b) { return a < b ? a : b; }

}  // namespace ohmsim
