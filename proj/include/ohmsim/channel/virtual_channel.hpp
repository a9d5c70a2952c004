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

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ohmsim/optical/power.hpp"
#include "ohmsim/platform.hpp"
#include "ohmsim/sim/time.hpp"

namespace ohmsim::channel {

using DeviceId = std::uint32_t;

struct VirtualChannel {
  int id{0};
  std::vector<int> wavelengths;
  int width_bits{16};
  std::uint32_t frequency_mhz{30000};
  int owner{0};  // memory controller index
};

/// Static division of the waveguide's wavelengths into one VC per controller.
inline std::vector<VirtualChannel> divide_channels(int total_wavelengths, int n_controllers,
                                                   std::uint32_t frequency_mhz = 30000) {
  if (n_controllers <= 0 || total_wavelengths <= 0) throw std::invalid_argument("channel counts must be positive");
  if (total_wavelengths % n_controllers != 0) {
    throw std::invalid_argument("wavelength count " + std::to_string(total_wavelengths) +
                                " is not divisible by controller count " + std::to_string(n_controllers));
  }
  const int per = total_wavelengths / n_controllers;
  std::vector<VirtualChannel> vcs;
  vcs.reserve(static_cast<std::size_t>(n_controllers));
  for (int i = 0; i < n_controllers; ++i) {
    VirtualChannel vc;
    vc.id = i;
    vc.owner = i;
    vc.width_bits = per;
    vc.frequency_mhz = frequency_mhz;
    vc.wavelengths.resize(static_cast<std::size_t>(per));
    std::iota(vc.wavelengths.begin(), vc.wavelengths.end(), i * per);
    vcs.push_back(std::move(vc));
  }
  return vcs;
}

/// Demultiplexer control for one VC: grants the channel to one device at a
/// time by enabling only that device's detector. Round-robin over device ids.
class Arbiter {
 public:
  explicit Arbiter(std::vector<DeviceId> devices = {}) : devices_(std::move(devices)) {
    std::sort(devices_.begin(), devices_.end());
  }

  void add_device(DeviceId d) {
    if (std::find(devices_.begin(), devices_.end(), d) == devices_.end()) {
      devices_.push_back(d);
      std::sort(devices_.begin(), devices_.end());
    }
  }

  DeviceId arbitrate(const std::set<DeviceId>& requests) {
    if (requests.empty()) throw std::invalid_argument("arbitrate needs at least one requester");
    for (auto r : requests) add_device(r);
    // First requester strictly after the last grant, wrapping around.
    std::optional<DeviceId> pick;
    if (last_) {
      auto it = requests.upper_bound(*last_);
      if (it != requests.end()) pick = *it;
    }
    if (!pick) pick = *requests.begin();
    last_ = *pick;
    enabled_ = *pick;
    return *pick;
  }

  void release() { enabled_.reset(); }

  bool detector_enabled(DeviceId d) const { return enabled_ && *enabled_ == d; }
  std::size_t enabled_count() const { return enabled_ ? 1 : 0; }
  std::optional<DeviceId> granted() const { return enabled_; }

 private:
  std::vector<DeviceId> devices_;
  std::optional<DeviceId> last_;
  std::optional<DeviceId> enabled_;
};

enum class Multiplexing : std::uint8_t { None, Wom, HalfCoupledBandwidth };

/// Physical parameters of one serialized link (an optical VC or an
/// electrical channel).
struct LinkParams {
  int width_bits{16};
  std::uint32_t frequency_mhz{30000};
  SimTime serdes{nanoseconds(1)};
  SimTime propagation{picoseconds(100)};
};

/// Bit-slots needed for a payload. Under WOM every 2 data bits occupy a
/// 3-cell codeword.
inline std::uint64_t coded_bits(std::uint64_t payload_bits, Multiplexing mux) {
  if (mux != Multiplexing::Wom) return payload_bits;
  return (payload_bits + 1) / 2 * 3;
}

inline std::uint64_t transfer_cycles(std::uint64_t payload_bits, const LinkParams& link, Multiplexing mux) {
  const auto bits = coded_bits(payload_bits, mux);
  const auto w = static_cast<std::uint64_t>(link.width_bits);
  return (bits + w - 1) / w;
}

/// Time the link is occupied by the payload.
inline SimTime serialization_time(std::uint64_t payload_bits, const LinkParams& link, Multiplexing mux) {
  const std::uint64_t cycles = transfer_cycles(payload_bits, link, mux);
  // ceil(cycles * 1e6 / f_MHz) picoseconds
  const std::uint64_t num = cycles * 1000000ULL;
  return SimTime{(num + link.frequency_mhz - 1) / link.frequency_mhz};
}

/// Completion of a transfer started at `start`: SerDes, serialization and
/// propagation.
inline SimTime transmit(SimTime start, std::uint64_t payload_bits, const LinkParams& link,
                        Multiplexing mux = Multiplexing::None) {
  return start + link.serdes + serialization_time(payload_bits, link, mux) + link.propagation;
}

enum class MigrationFunction : std::uint8_t { AutoRw, Swap, ReverseWrite };

inline const char* to_string(MigrationFunction f) {
  switch (f) {
    case MigrationFunction::AutoRw: return "auto-rw";
    case MigrationFunction::Swap: return "swap";
    case MigrationFunction::ReverseWrite: return "reverse-write";
  }
  return "?";
}

struct Endpoint {
  enum class Kind : std::uint8_t { Controller, Dram, Xpoint } kind;
  DeviceId id{0};
};

struct DualRoute {
  int vc{0};
  Endpoint mc;
  Endpoint dev_a;
  Endpoint dev_b;
  Multiplexing multiplexing{Multiplexing::None};
  MigrationFunction active_function{MigrationFunction::AutoRw};
  SimTime setup_latency;  // MRR retuning before both routes are usable
  double tuning_energy_fj_per_bit{0.0};

  /// Data-route rate as a fraction of nominal.
  double data_route_rate() const { return multiplexing == Multiplexing::Wom ? 2.0 / 3.0 : 1.0; }
};

inline DualRoute establish_dual_route(int vc, Endpoint mc, Endpoint dev_a, Endpoint dev_b, MigrationFunction fn,
                                      Platform platform, const optical::OpticalPowerModel& power = {}) {
  const auto caps = capabilities(platform);
  const bool ok = (fn == MigrationFunction::AutoRw && caps.auto_rw) || (fn == MigrationFunction::Swap && caps.swap) ||
                  (fn == MigrationFunction::ReverseWrite && caps.reverse_write);
  if (!ok) {
    throw CapabilityError(std::string(to_string(platform)) + " cannot form a dual route for " + to_string(fn));
  }
  DualRoute r;
  r.vc = vc;
  r.mc = mc;
  r.dev_a = dev_a;
  r.dev_b = dev_b;
  r.active_function = fn;
  r.multiplexing = caps.wom_coding ? Multiplexing::Wom : Multiplexing::HalfCoupledBandwidth;
  // Every function here puts at least one ring into half-coupled mode.
  const auto t = optical::tuning_cost(optical::MrrMode::NonCoupled, optical::MrrMode::HalfCoupled, power);
  r.setup_latency = t.latency;
  r.tuning_energy_fj_per_bit = t.energy_fj_per_bit;
  return r;
}

enum class LayoutMode : std::uint8_t { General, Planar, TwoLevel };

struct MrrCounts {
  int transmitters{0};
  int receivers{0};
  int total() const { return transmitters + receivers; }
};

/// Rings needed on one VC for a controller and one DRAM/XPoint pair.
struct MrrLayout {
  MrrCounts controller;
  MrrCounts dram;
  MrrCounts xpoint;
  int total() const { return controller.total() + dram.total() + xpoint.total(); }
};

/// General: every device can take any role in any of the three functions
/// (T1..T11, R1..R11). Planar keeps only what swap needs; two-level keeps
/// only what auto-read/write and reverse-write need.
inline MrrLayout mrr_layout(LayoutMode mode) {
  switch (mode) {
    case LayoutMode::General: return {{2, 2}, {5, 5}, {4, 4}};
    // MC: FC tx + FC rx; DRAM: FC tx, HC tx, FC rx; XPoint: FC tx, HC tx, FC rx, HC rx.
    case LayoutMode::Planar: return {{1, 1}, {2, 1}, {2, 2}};
    // MC: FC tx, FC rx, HC rx (DDR monitor); DRAM: FC tx, FC rx + HC rx fwd/bwd;
    // XPoint: FC tx, DRAM-fill tx, FC rx + HC rx fwd/bwd + snarf rx.
    case LayoutMode::TwoLevel: return {{1, 2}, {1, 3}, {2, 4}};
  }
  return {};
}

}  // namespace ohmsim::channel
