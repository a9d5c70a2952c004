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
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ohmsim/channel/virtual_channel.hpp"
#include "ohmsim/controller/address.hpp"
#include "ohmsim/controller/planar.hpp"
#include "ohmsim/devices/dram.hpp"
#include "ohmsim/devices/xpoint.hpp"
#include "ohmsim/optical/power.hpp"

namespace ohmsim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OracleVariant : std::uint8_t { DedicatedChannel, DramOnly };

/// Every tunable of the simulated system. Defaults are the reference
/// configuration at desk scale (capacities scaled down, ratios kept).
struct Config {
  // channel
  int controllers{6};
  int wavelengths{96};
  std::uint64_t vc_frequency_mhz{30000};
  std::uint64_t serdes_ps{1000};
  std::uint64_t propagation_ps{100};
  std::uint64_t register_bytes{16384};
  int electrical_width_bits{32};
  std::uint64_t electrical_frequency_mhz{15000};

  // devices per controller
  int dram_devices{2};
  int dram_banks{8};
  int xpoint_devices{2};
  std::uint64_t trcd_ps{25000};
  std::uint64_t trp_ps{10000};
  std::uint64_t tcl_ps{11000};
  std::uint64_t trrd_ps{5000};
  std::uint64_t xpoint_read_ps{190000};
  std::uint64_t xpoint_write_ps{763000};
  std::uint32_t xpoint_read_buffer{16};
  std::uint32_t xpoint_write_buffer{16};
  std::uint64_t start_gap_psi{100};
  std::uint32_t xpoint_media_ports{16};

  // capacity
  std::uint64_t line_bytes{128};
  std::uint64_t page_bytes{4096};
  std::uint64_t planar_dram_bytes{1536 * 1024};
  std::uint64_t planar_ratio{8};
  std::uint64_t two_level_dram_bytes{768 * 1024};
  std::uint64_t two_level_ratio{64};

  // policy
  std::uint32_t hot_threshold{32};
  std::uint64_t hot_epoch_ps{100'000'000};
  std::uint32_t max_migrations{2};
  std::uint64_t migration_defer_ps{2'000'000};
  std::uint32_t max_outstanding{512};
  OracleVariant oracle_variant{OracleVariant::DedicatedChannel};

  // optical
  optical::OpticalPowerModel power{};

  // energy (placeholders; only ratios and orderings are meaningful)
  double dram_static_w{1.0};
  double dram_dynamic_pj_per_bit{20.0};
  double xpoint_read_pj_per_bit{50.0};
  double xpoint_write_pj_per_bit{150.0};
  double electrical_energy_factor{10.0};

  // cost
  double mrr_unit_usd{0.00145};
  double vcsel_usd{100.0};
  double dram_usd_per_gb{140.0 / 12.0};
  double xpoint_usd_per_gb{125.0 / 96.0};

  channel::LinkParams optical_link() const {
    const auto vcs = channel::divide_channels(wavelengths, controllers, vc_frequency_mhz);
    channel::LinkParams p;
    p.width_bits = vcs.front().width_bits;
    p.frequency_mhz = vc_frequency_mhz;
    p.serdes = SimTime{serdes_ps};
    p.propagation = SimTime{propagation_ps};
    return p;
  }

  channel::LinkParams electrical_link() const {
    channel::LinkParams p;
    p.width_bits = electrical_width_bits;
    p.frequency_mhz = electrical_frequency_mhz;
    p.serdes = SimTime{0};
    p.propagation = SimTime{0};
    return p;
  }

  devices::DramTiming dram_timing() const {
    return {SimTime{trcd_ps}, SimTime{trp_ps}, SimTime{tcl_ps}, SimTime{trrd_ps}};
  }

  devices::XpointParams xpoint_params() const {
    devices::XpointParams p;
    p.read_latency = SimTime{xpoint_read_ps};
    p.write_latency = SimTime{xpoint_write_ps};
    p.read_buffer_entries = xpoint_read_buffer;
    p.write_buffer_entries = xpoint_write_buffer;
    p.start_gap_psi = start_gap_psi;
    p.media_ports = xpoint_media_ports;
    return p;
  }

  controller::CapacityLayout layout(MemoryMode mode) const {
    controller::CapacityLayout c;
    c.line_bytes = line_bytes;
    c.page_bytes = page_bytes;
    c.dram_bytes = mode == MemoryMode::Planar ? planar_dram_bytes : two_level_dram_bytes;
    c.xpoint_bytes = c.dram_bytes * (mode == MemoryMode::Planar ? planar_ratio : two_level_ratio);
    return c;
  }

  controller::HotnessPolicy hotness() const { return {hot_threshold, SimTime{hot_epoch_ps}, 255}; }

  void validate() const;
};

namespace detail {

using FieldRef = std::variant<int*, std::uint32_t*, std::uint64_t*, double*, SimTime*, OracleVariant*>;

struct Field {
  const char* key;
  FieldRef ref;
};

inline std::vector<Field> fields(Config& c) {
  auto& p = c.power;
  return {
      {"controllers", &c.controllers},
      {"wavelengths", &c.wavelengths},
      {"vc_frequency_mhz", &c.vc_frequency_mhz},
      {"serdes_ps", &c.serdes_ps},
      {"propagation_ps", &c.propagation_ps},
      {"register_bytes", &c.register_bytes},
      {"electrical_width_bits", &c.electrical_width_bits},
      {"electrical_frequency_mhz", &c.electrical_frequency_mhz},
      {"dram_devices", &c.dram_devices},
      {"dram_banks", &c.dram_banks},
      {"xpoint_devices", &c.xpoint_devices},
      {"trcd_ps", &c.trcd_ps},
      {"trp_ps", &c.trp_ps},
      {"tcl_ps", &c.tcl_ps},
      {"trrd_ps", &c.trrd_ps},
      {"xpoint_read_ps", &c.xpoint_read_ps},
      {"xpoint_write_ps", &c.xpoint_write_ps},
      {"xpoint_read_buffer", &c.xpoint_read_buffer},
      {"xpoint_write_buffer", &c.xpoint_write_buffer},
      {"start_gap_psi", &c.start_gap_psi},
      {"xpoint_media_ports", &c.xpoint_media_ports},
      {"line_bytes", &c.line_bytes},
      {"page_bytes", &c.page_bytes},
      {"planar_dram_bytes", &c.planar_dram_bytes},
      {"planar_ratio", &c.planar_ratio},
      {"two_level_dram_bytes", &c.two_level_dram_bytes},
      {"two_level_ratio", &c.two_level_ratio},
      {"hot_threshold", &c.hot_threshold},
      {"hot_epoch_ps", &c.hot_epoch_ps},
      {"max_migrations", &c.max_migrations},
      {"migration_defer_ps", &c.migration_defer_ps},
      {"max_outstanding", &c.max_outstanding},
      {"oracle_variant", &c.oracle_variant},
      {"laser_mw", &p.laser_power_mw},
      {"filter_drop_db", &p.filter_drop_db},
      {"waveguide_db_per_cm", &p.waveguide_loss_db_per_cm},
      {"splitter_db", &p.splitter_loss_db},
      {"detector_db", &p.detector_loss_db},
      {"modulator_db", &p.modulator_loss_db},
      {"tuning_normal_ps", &p.tuning_time_normal},
      {"tuning_half_coupled_ps", &p.tuning_time_fine},
      {"tuning_fj_per_bit", &p.mrr_tuning_energy_fj_per_bit},
      {"dram_static_w", &c.dram_static_w},
      {"dram_dynamic_pj_per_bit", &c.dram_dynamic_pj_per_bit},
      {"xpoint_read_pj_per_bit", &c.xpoint_read_pj_per_bit},
      {"xpoint_write_pj_per_bit", &c.xpoint_write_pj_per_bit},
      {"electrical_energy_factor", &c.electrical_energy_factor},
      {"mrr_unit_usd", &c.mrr_unit_usd},
      {"vcsel_usd", &c.vcsel_usd},
      {"dram_usd_per_gb", &c.dram_usd_per_gb},
      {"xpoint_usd_per_gb", &c.xpoint_usd_per_gb},
  };
}

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
  std::istringstream is(v);
  T out{};
  is >> out;
  if (!is || !is.eof()) throw ConfigError("bad value for " + key + ": '" + v + "'");
  if constexpr (std::is_unsigned_v<T>) {
    if (v.find('-') != std::string::npos) throw ConfigError("negative value for " + key);
  }
  return out;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace detail

/// Sets one key; unknown keys and malformed values are errors.
inline void set_config_value(Config& c, const std::string& key, const std::string& value) {
  for (auto& f : detail::fields(c)) {
    if (key != f.key) continue;
    std::visit(
        [&](auto* ptr) {
          using T = std::remove_pointer_t<decltype(ptr)>;
          if constexpr (std::is_same_v<T, OracleVariant>) {
            if (value == "dedicated-channel") {
              *ptr = OracleVariant::DedicatedChannel;
            } else if (value == "dram") {
              *ptr = OracleVariant::DramOnly;
            } else {
              throw ConfigError("oracle_variant must be dedicated-channel or dram");
            }
          } else if constexpr (std::is_same_v<T, SimTime>) {
            *ptr = SimTime{detail::parse_number<std::uint64_t>(key, value)};
          } else {
            *ptr = detail::parse_number<T>(key, value);
          }
        },
        f.ref);
    return;
  }
  throw ConfigError("unknown config key: " + key);
}

/// Flat `key = value` lines; `#` starts a comment.
inline Config parse_config(std::istream& in, Config base = {}) {
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(n) + ": expected key = value");
    try {
      set_config_value(base, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(n) + ": " + e.what());
    }
  }
  base.validate();
  return base;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  return parse_config(in);
}

inline void Config::validate() const {
  if (controllers <= 0 || wavelengths <= 0 || wavelengths % controllers != 0) {
    throw ConfigError("wavelengths must divide evenly among controllers");
  }
  if (dram_devices <= 0 || dram_banks <= 0 || xpoint_devices <= 0) throw ConfigError("device counts must be positive");
  if (vc_frequency_mhz == 0 || electrical_frequency_mhz == 0 || electrical_width_bits <= 0) {
    throw ConfigError("link rates must be positive");
  }
  if (xpoint_media_ports == 0) throw ConfigError("xpoint_media_ports must be positive");
  if (max_outstanding == 0) throw ConfigError("max_outstanding must be positive");
  if (hot_threshold == 0 || hot_threshold > 255) throw ConfigError("hot_threshold must be in 1..255");
  try {
    power.validate();
    for (auto mode : {MemoryMode::Planar, MemoryMode::TwoLevel}) {
      const auto l = layout(mode);
      l.validate();
      const std::uint64_t per_mc = static_cast<std::uint64_t>(controllers);
      if (l.dram_pages() % per_mc != 0) throw ConfigError("DRAM pages must divide among controllers");
      if ((l.dram_pages() / per_mc) % static_cast<std::uint64_t>(dram_devices) != 0) {
        throw ConfigError("DRAM pages per controller must divide among DRAM devices");
      }
      if (l.ratio() > 255) throw ConfigError("capacity ratio too large");
    }
    (void)controller::tag_bits(two_level_ratio);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace ohmsim
