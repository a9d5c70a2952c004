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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ohmsim/optical/fraction.hpp"

namespace ohmsim::optical {

using BitVector = std::vector<std::uint8_t>;

inline BitVector bits_from_string(const std::string& s) {
  BitVector b;
  b.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string may only hold 0/1: " + s);
    b.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return b;
}

inline std::string bits_to_string(const BitVector& b) {
  std::string s;
  s.reserve(b.size());
  for (auto v : b) s.push_back(static_cast<char>('0' + v));
  return s;
}

inline bool is_legal_level(Fraction f) { return f == kZero || f == kQuarter || f == kHalf || f == kFull; }

/// Per-symbol optical power on one wavelength, as an exact fraction of the
/// laser source power. Levels are restricted to {0, 1/4, 1/2, 1}.
class LightSymbolStream {
 public:
  LightSymbolStream() = default;
  LightSymbolStream(int wavelength_id, std::vector<Fraction> levels)
      : wavelength_id_(wavelength_id), levels_(std::move(levels)) {
    for (const auto& l : levels_) {
      if (!is_legal_level(l)) throw std::invalid_argument("illegal light level");
    }
  }

  /// Unmodulated source light of the given length.
  static LightSymbolStream source(std::size_t length, int wavelength_id = 0) {
    return LightSymbolStream(wavelength_id, std::vector<Fraction>(length, kFull));
  }

  int wavelength_id() const { return wavelength_id_; }
  const std::vector<Fraction>& levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }
  Fraction operator[](std::size_t i) const { return levels_[i]; }

  /// Smallest strictly positive level, or zero when the stream is dark.
  Fraction min_lit_level() const {
    Fraction best = kZero;
    for (auto l : levels_) {
      if (l > kZero && (best == kZero || l < best)) best = l;
    }
    return best;
  }

  friend bool operator==(const LightSymbolStream&, const LightSymbolStream&) = default;

 private:
  int wavelength_id_{0};
  std::vector<Fraction> levels_;
};

enum class ModulationScheme : std::uint8_t {
  Standard,         // bit 0 fully couples (dark), bit 1 passes
  HalfCoupledZero,  // bit 0 half couples, bit 1 passes
};

inline LightSymbolStream modulate(const LightSymbolStream& input, const BitVector& bits, ModulationScheme scheme) {
  if (bits.size() != input.size()) throw std::invalid_argument("modulate: bit count differs from stream length");
  std::vector<Fraction> out;
  out.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      out.push_back(input[i]);
    } else {
      out.push_back(scheme == ModulationScheme::Standard ? kZero : input[i] * kHalf);
    }
  }
  return LightSymbolStream(input.wavelength_id(), std::move(out));
}

struct HalfCoupledDetection {
  BitVector bits;
  LightSymbolStream passed;
};

/// Half-coupled receiver: senses the stream and lets half of the power
/// continue down the waveguide.
inline HalfCoupledDetection hc_detect(const LightSymbolStream& input, Fraction threshold) {
  HalfCoupledDetection r;
  r.bits.reserve(input.size());
  std::vector<Fraction> passed;
  passed.reserve(input.size());
  for (auto l : input.levels()) {
    r.bits.push_back(l > threshold ? 1 : 0);
    passed.push_back(l * kHalf);
  }
  r.passed = LightSymbolStream(input.wavelength_id(), std::move(passed));
  return r;
}

/// Fully-coupled receiver; the light is consumed.
inline BitVector fc_detect(const LightSymbolStream& input, Fraction threshold) {
  BitVector bits;
  bits.reserve(input.size());
  for (auto l : input.levels()) bits.push_back(l > threshold ? 1 : 0);
  return bits;
}

/// Threshold between 1/2 and 1 for a HalfCoupledZero stream on full light.
inline constexpr Fraction kHalfCoupledThreshold{3, 4};
/// "Any light" test used after a Standard second-stage modulation.
inline constexpr Fraction kStrictlyPositive{0};

}  // namespace ohmsim::optical
