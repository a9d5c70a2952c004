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

#include <string>
#include <vector>

#include "ohmsim/optical/power.hpp"
#include "ohmsim/platform.hpp"

namespace ohmsim::metrics {

struct BerEstimate {
  std::string function;
  double received_mw{0};
  double ber{0};
};

/// Receiver routes each platform exercises, at the platform's laser power.
/// Reverse-write is received through the same half-coupled tap as a snarf.
inline std::vector<optical::BerOperatingPoint> platform_routes(const Capabilities& caps) {
  std::vector<optical::BerOperatingPoint> out;
  if (!caps.optical) return out;
  const auto cal = optical::default_calibration_points();
  auto with = [&caps](optical::BerOperatingPoint p, std::string name) {
    p.name = std::move(name);
    p.laser_multiplier = caps.laser_multiplier;
    p.target_ber = 0;
    return p;
  };
  out.push_back(with(cal[0], "data"));
  if (caps.auto_rw) out.push_back(with(cal[1], "auto-rw"));
  if (caps.reverse_write) out.push_back(with(cal[1], "reverse-write"));
  if (caps.swap) out.push_back(with(caps.hc_transmitters ? cal[3] : cal[2], "swap"));
  return out;
}

inline std::vector<BerEstimate> ber_estimates(const Capabilities& caps, const optical::BerModel& model,
                                              const optical::OpticalPowerModel& power) {
  std::vector<BerEstimate> out;
  for (const auto& p : platform_routes(caps)) {
    const double rx = p.received_mw(power);
    out.push_back({p.name, rx, model.ber(rx)});
  }
  return out;
}

}  // namespace ohmsim::metrics
