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
#include <vector>

#include "ohmsim/config.hpp"
#include "ohmsim/system.hpp"

namespace ohmsim::metrics {

/// Joules per component. DRAM and XPoint constants are placeholders, so only
/// ratios and orderings between platforms carry meaning.
struct EnergyLedger {
  double dram_static{0};
  double dram_dynamic{0};
  double xpoint{0};
  double optical_laser{0};
  double optical_tuning{0};
  double electrical_dma{0};

  double optical() const { return optical_laser + optical_tuning; }
  double dynamic() const { return dram_dynamic + xpoint + optical_tuning + electrical_dma; }
  double total() const { return dram_static + dram_dynamic + xpoint + optical_laser + optical_tuning + electrical_dma; }
};

/// Run-wide inputs that do not come from individual events.
struct EnergyContext {
  SimTime runtime;
  std::uint64_t dram_devices{0};
  std::uint64_t wavelengths{0};
  double laser_multiplier{1.0};
};

inline EnergyContext energy_context(const MemorySystem& sys) {
  return {sys.stats().runtime, sys.dram_device_equivalents(), sys.optical_wavelengths(), sys.caps().laser_multiplier};
}

namespace detail {
inline constexpr double kPico = 1e-12;
inline constexpr double kFemto = 1e-15;

inline void add_time_terms(EnergyLedger& e, const Config& cfg, const EnergyContext& ctx) {
  const double seconds = static_cast<double>(ctx.runtime.ps) * kPico;
  e.dram_static = cfg.dram_static_w * static_cast<double>(ctx.dram_devices) * seconds;
  e.optical_laser = cfg.power.laser_power_mw * 1e-3 * ctx.laser_multiplier * static_cast<double>(ctx.wavelengths) * seconds;
}
}  // namespace detail

/// Electrical channels pay the optical per-bit constant scaled by
/// `electrical_energy_factor`.
inline double electrical_pj_per_bit(const Config& cfg) {
  return cfg.power.mrr_tuning_energy_fj_per_bit * 1e-3 * cfg.electrical_energy_factor;
}

/// Ledger from the aggregate counters of a finished run.
inline EnergyLedger energy_account(const MemorySystem& sys) {
  const Config& cfg = sys.config();
  const auto& s = sys.stats();
  const double line_bits = static_cast<double>(sys.layout().line_bytes * 8);
  EnergyLedger e;
  detail::add_time_terms(e, cfg, energy_context(sys));
  e.dram_dynamic = static_cast<double>(s.dram_columns) * line_bits * cfg.dram_dynamic_pj_per_bit * detail::kPico;
  e.xpoint = (static_cast<double>(s.xpoint_read_lines) * cfg.xpoint_read_pj_per_bit +
              static_cast<double>(s.xpoint_write_lines) * cfg.xpoint_write_pj_per_bit) *
             line_bits * detail::kPico;
  std::uint64_t bits = 0;
  for (const auto& l : sys.links()) bits += l.stats.modulated_bits;
  if (sys.caps().optical) {
    e.optical_tuning = static_cast<double>(bits) * cfg.power.mrr_tuning_energy_fj_per_bit * detail::kFemto;
  } else {
    e.electrical_dma = static_cast<double>(bits) * electrical_pj_per_bit(cfg) * detail::kPico;
  }
  return e;
}

/// Ledger recomputed one event at a time; must agree with the counters.
inline EnergyLedger energy_replay(const std::vector<EnergyEvent>& events, const Config& cfg, const EnergyContext& ctx) {
  EnergyLedger e;
  detail::add_time_terms(e, cfg, ctx);
  for (const auto& ev : events) {
    const double bits = static_cast<double>(ev.bits);
    switch (ev.kind) {
      case EnergyEventKind::DramColumn: e.dram_dynamic += bits * cfg.dram_dynamic_pj_per_bit * detail::kPico; break;
      case EnergyEventKind::XpointRead: e.xpoint += bits * cfg.xpoint_read_pj_per_bit * detail::kPico; break;
      case EnergyEventKind::XpointWrite: e.xpoint += bits * cfg.xpoint_write_pj_per_bit * detail::kPico; break;
      case EnergyEventKind::OpticalBits:
        e.optical_tuning += bits * cfg.power.mrr_tuning_energy_fj_per_bit * detail::kFemto;
        break;
      case EnergyEventKind::ElectricalBits: e.electrical_dma += bits * electrical_pj_per_bit(cfg) * detail::kPico; break;
    }
  }
  return e;
}

}  // namespace ohmsim::metrics
