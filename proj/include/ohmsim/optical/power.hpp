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
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ohmsim/optical/fraction.hpp"
#include "ohmsim/sim/time.hpp"

namespace ohmsim::optical {

enum class MrrMode : std::uint8_t { FullyCoupled, HalfCoupled, NonCoupled };

/// Fraction of incoming power that continues past a ring in this mode.
inline Fraction pass_fraction(MrrMode m) {
  switch (m) {
    case MrrMode::FullyCoupled: return kZero;
    case MrrMode::HalfCoupled: return kHalf;
    case MrrMode::NonCoupled: return kFull;
  }
  return kFull;
}

struct OpticalPowerModel {
  double mrr_tuning_energy_fj_per_bit{200.0};
  double filter_drop_db{1.5};
  double waveguide_loss_db_per_cm{0.3};
  double splitter_loss_db{0.2};
  double detector_loss_db{0.1};
  double modulator_loss_db{0.5};
  double laser_power_mw{0.73};
  SimTime tuning_time_normal{picoseconds(100)};
  SimTime tuning_time_fine{picoseconds(500)};

  void validate() const {
    if (filter_drop_db < 0 || waveguide_loss_db_per_cm < 0 || splitter_loss_db < 0 || detector_loss_db < 0) {
      throw std::invalid_argument("optical losses must be non-negative");
    }
    if (modulator_loss_db < 0 || modulator_loss_db > 1) {
      throw std::invalid_argument("modulator loss must lie in [0, 1] dB");
    }
    if (laser_power_mw <= 0) throw std::invalid_argument("laser power must be positive");
  }
};

enum class ComponentKind : std::uint8_t { Filter, Waveguide, Splitter, Detector, Modulator };

struct RouteComponent {
  ComponentKind kind;
  double length_cm{0.0};  // waveguide segments only

  static RouteComponent filter() { return {ComponentKind::Filter}; }
  static RouteComponent waveguide(double cm) { return {ComponentKind::Waveguide, cm}; }
  static RouteComponent splitter() { return {ComponentKind::Splitter}; }
  static RouteComponent detector() { return {ComponentKind::Detector}; }
  static RouteComponent modulator() { return {ComponentKind::Modulator}; }
};

using Route = std::vector<RouteComponent>;

inline double path_loss_db(const Route& route, const OpticalPowerModel& m) {
  double db = 0.0;
  for (const auto& c : route) {
    switch (c.kind) {
      case ComponentKind::Filter: db += m.filter_drop_db; break;
      case ComponentKind::Waveguide:
        if (c.length_cm < 0) throw std::invalid_argument("negative waveguide length");
        db += m.waveguide_loss_db_per_cm * c.length_cm;
        break;
      case ComponentKind::Splitter: db += m.splitter_loss_db; break;
      case ComponentKind::Detector: db += m.detector_loss_db; break;
      case ComponentKind::Modulator: db += m.modulator_loss_db; break;
    }
  }
  return db;
}

inline double received_power_mw(double laser_mw, double loss_db, double level_fraction) {
  if (level_fraction < 0.0 || level_fraction > 1.0) throw std::invalid_argument("level fraction outside [0,1]");
  return laser_mw * std::pow(10.0, -loss_db / 10.0) * level_fraction;
}

struct TuningCost {
  SimTime latency;
  double energy_fj_per_bit{0.0};
};

/// Entering or leaving half-coupled needs the slow fine-grained tuning.
inline TuningCost tuning_cost(MrrMode from, MrrMode to, const OpticalPowerModel& m = {}) {
  if (from == to) return {};
  const bool fine = from == MrrMode::HalfCoupled || to == MrrMode::HalfCoupled;
  return {fine ? m.tuning_time_fine : m.tuning_time_normal, m.mrr_tuning_energy_fj_per_bit};
}

/// BER(P) = A * exp(-k * P), P in mW at the receiver.
class BerModel {
 public:
  BerModel() = default;
  BerModel(double a, double k) : a_(a), k_(k) {
    if (!(a_ > 0) || !(k_ > 0)) throw std::invalid_argument("BER model needs A > 0 and k > 0");
  }

  double a() const { return a_; }
  double k() const { return k_; }

  double ber(double received_mw) const {
    if (!(received_mw > 0)) throw std::domain_error("BER requires positive received power");
    return std::min(a_ * std::exp(-k_ * received_mw), 1.0 - 1e-12);
  }

  struct Sample {
    double received_mw;
    double ber;
  };

  /// Least squares on ln(BER) = ln(A) - k * P.
  static BerModel fit(const std::vector<Sample>& samples) {
    if (samples.size() < 2) throw std::invalid_argument("BER fit needs at least two samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(samples.size());
    for (const auto& s : samples) {
      if (!(s.received_mw > 0) || !(s.ber > 0) || !(s.ber < 1)) throw std::invalid_argument("bad BER sample");
      const double y = std::log(s.ber);
      sx += s.received_mw;
      sy += y;
      sxx += s.received_mw * s.received_mw;
      sxy += s.received_mw * y;
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-300) throw std::invalid_argument("BER fit samples share one power level");
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    if (!(slope < 0)) throw std::invalid_argument("BER samples do not decrease with power");
    return BerModel(std::exp(intercept), -slope);
  }

 private:
  double a_{1e-10};
  double k_{30.0};
};

/// A named receiver position whose BER is reported. Calibration points carry
/// the measured target; the received power comes from the route losses.
struct BerOperatingPoint {
  std::string name;
  double laser_multiplier{1.0};
  Fraction weakest_level{kFull};
  Route route;
  double target_ber{0.0};  // 0 when not a calibration point

  double received_mw(const OpticalPowerModel& m) const {
    return received_power_mw(m.laser_power_mw * laser_multiplier, path_loss_db(route, m), weakest_level.value());
  }
};

/// Receiver positions used for calibration. Route lengths are the default
/// package geometry (see README): the controller-to-device data route, the
/// snarf tap on the data route, and the two WOM/half-coupled swap routes
/// that pass a half-coupled receiver and a second modulator.
inline std::vector<BerOperatingPoint> default_calibration_points() {
  using RC = RouteComponent;
  return {
      {"ohm-base.data", 1.0, kFull, {RC::modulator(), RC::waveguide(2.0), RC::filter(), RC::detector()}, 7.2e-16},
      {"ohm-wom.auto-rw", 2.0, kHalf, {RC::modulator(), RC::waveguide(1.6), RC::filter(), RC::detector()}, 6.1e-16},
      {"ohm-wom.swap",
       2.0,
       kHalf,
       {RC::modulator(), RC::waveguide(0.5), RC::detector(), RC::modulator(), RC::waveguide(0.35), RC::filter(),
        RC::detector()},
       9.9e-16},
      {"ohm-bw.swap",
       4.0,
       kQuarter,
       {RC::modulator(), RC::waveguide(0.4), RC::detector(), RC::modulator(), RC::waveguide(0.3), RC::filter(),
        RC::detector()},
       9.3e-16},
  };
}

inline BerModel calibrate_ber(const std::vector<BerOperatingPoint>& points, const OpticalPowerModel& m) {
  std::vector<BerModel::Sample> samples;
  for (const auto& p : points) {
    if (p.target_ber > 0) samples.push_back({p.received_mw(m), p.target_ber});
  }
  return BerModel::fit(samples);
}

}  // namespace ohmsim::optical
