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

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ohmsim/sim/time.hpp"

namespace ohmsim::controller {

struct HotnessPolicy {
  std::uint32_t threshold{32};
  SimTime epoch{microseconds(100)};
  std::uint32_t saturate{255};
};

/// One planar group: a DRAM page frame plus R XPoint page frames holding
/// R+1 logical pages. The residency map is a permutation from logical slot
/// to frame; frame 0 is the DRAM frame.
class PlanarGroup {
 public:
  explicit PlanarGroup(std::uint64_t ratio) : frame_of_(ratio + 1), counters_(ratio + 1) {
    for (std::uint64_t s = 0; s <= ratio; ++s) frame_of_[s] = static_cast<std::uint32_t>(s);
  }

  std::uint64_t slots() const { return frame_of_.size(); }
  std::uint32_t frame_of(std::uint64_t slot) const { return frame_of_.at(slot); }
  bool in_dram(std::uint64_t slot) const { return frame_of(slot) == 0; }

  std::uint64_t dram_resident() const {
    for (std::uint64_t s = 0; s < frame_of_.size(); ++s) {
      if (frame_of_[s] == 0) return s;
    }
    throw std::logic_error("planar group lost its DRAM resident");
  }

  /// Counts one access to `slot`; true exactly when the count reaches the
  /// threshold (once per heating, until reset).
  bool touch(std::uint64_t slot, SimTime now, const HotnessPolicy& p) {
    auto& c = counters_.at(slot);
    decay(c, now, p);
    if (c.count >= p.saturate) return false;
    ++c.count;
    return c.count == p.threshold;
  }

  std::uint32_t count(std::uint64_t slot, SimTime now, const HotnessPolicy& p) {
    auto& c = counters_.at(slot);
    decay(c, now, p);
    return c.count;
  }

  void reset_counter(std::uint64_t slot) { counters_.at(slot).count = 0; }

  /// Exchanges the frames of two logical slots (the swap's commit point).
  void exchange(std::uint64_t a, std::uint64_t b) { std::swap(frame_of_.at(a), frame_of_.at(b)); }

 private:
  struct Counter {
    std::uint32_t count{0};
    std::uint64_t epoch{0};
  };

  // Halve the count for every epoch boundary crossed since the last touch.
  static void decay(Counter& c, SimTime now, const HotnessPolicy& p) {
    const std::uint64_t e = p.epoch.ps ? now.ps / p.epoch.ps : 0;
    if (e > c.epoch) {
      const std::uint64_t shift = e - c.epoch;
      c.count = shift >= 32 ? 0 : c.count >> shift;
      c.epoch = e;
    }
  }

  std::vector<std::uint32_t> frame_of_;
  std::vector<Counter> counters_;
};

}  // namespace ohmsim::controller
