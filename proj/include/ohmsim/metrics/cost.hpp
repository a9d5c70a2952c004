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

#include <cmath>
#include <cstdint>

#include "ohmsim/config.hpp"
#include "ohmsim/platform.hpp"

namespace ohmsim::metrics {

inline constexpr std::uint64_t kReferenceDevices = 24;

struct MrrTotals {
  std::uint64_t modulators{0};
  std::uint64_t detectors{0};
  std::uint64_t total() const { return modulators + detectors; }
  friend bool operator==(const MrrTotals&, const MrrTotals&) = default;
};

/// Ring counts of the 24-device reference GPU. Ohm-base and Ohm-BW are the
/// reference package totals. Auto-rw and Ohm-WOM add receivers (snarf and
/// half-coupled taps) but no transmitters, so they take the base modulator
/// count and the Ohm-BW detector count. Electrical platforms carry none; the
/// dedicated-channel Oracle doubles the base channel.
inline MrrTotals reference_mrrs(Platform p, MemoryMode m, bool oracle_dedicated = false) {
  const bool planar = m == MemoryMode::Planar;
  const MrrTotals base = planar ? MrrTotals{2112, 2112} : MrrTotals{2368, 2368};
  const MrrTotals bw = planar ? MrrTotals{2176, 3136} : MrrTotals{2368, 4928};
  switch (p) {
    case Platform::Origin:
    case Platform::Hetero: return {};
    case Platform::OhmBase: return base;
    case Platform::AutoRw:
    case Platform::OhmWom: return {base.modulators, bw.detectors};
    case Platform::OhmBw: return bw;
    case Platform::Oracle: return oracle_dedicated ? MrrTotals{2 * base.modulators, 2 * base.detectors} : base;
  }
  return {};
}

struct DeviceMix {
  std::uint64_t dram{0};
  std::uint64_t xpoint{0};
  double dram_gb{1};
  double xpoint_gb{8};
};

/// Splits `devices` in the reference proportions: planar 12 DRAM + 12 XPoint
/// (1 GB / 8 GB chips), two-level 6 DRAM + 12 XPoint (1 GB / 32 GB chips)
/// out of 24 slots. Platforms without XPoint fill every slot with DRAM.
inline DeviceMix device_mix(Platform p, MemoryMode m, std::uint64_t devices) {
  const bool dram_only = p == Platform::Origin || p == Platform::Oracle;
  if (dram_only) return {devices, 0, 1, 0};
  if (m == MemoryMode::Planar) return {devices / 2, devices / 2, 1, 8};
  return {devices / 4, devices / 2, 1, 32};
}

struct CostBreakdown {
  MrrTotals mrrs;
  double modulators_usd{0};
  double detectors_usd{0};
  double dram_usd{0};
  double xpoint_usd{0};
  double vcsel_usd{0};
  double total() const { return modulators_usd + detectors_usd + dram_usd + xpoint_usd + vcsel_usd; }
};

inline CostBreakdown cost_estimate(const Config& cfg, Platform p, MemoryMode m, std::uint64_t devices = kReferenceDevices,
                                   bool oracle_dedicated = false) {
  const MrrTotals ref = reference_mrrs(p, m, oracle_dedicated);
  const auto scale = [devices](std::uint64_t n) { return n * devices / kReferenceDevices; };
  CostBreakdown c;
  c.mrrs = {scale(ref.modulators), scale(ref.detectors)};
  c.modulators_usd = static_cast<double>(c.mrrs.modulators) * cfg.mrr_unit_usd;
  c.detectors_usd = static_cast<double>(c.mrrs.detectors) * cfg.mrr_unit_usd;
  const DeviceMix mix = device_mix(p, m, devices);
  c.dram_usd = static_cast<double>(mix.dram) * mix.dram_gb * cfg.dram_usd_per_gb;
  c.xpoint_usd = static_cast<double>(mix.xpoint) * mix.xpoint_gb * cfg.xpoint_usd_per_gb;
  c.vcsel_usd = capabilities(p, oracle_dedicated).optical ? cfg.vcsel_usd : 0.0;
  return c;
}

}  // namespace ohmsim::metrics
