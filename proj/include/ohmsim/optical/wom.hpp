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
#include <optional>
#include <stdexcept>
#include <string>

namespace ohmsim::optical {

/// 2-bit-in-3-cell write-once code. Two senders can place successive values
/// on one light signal: the first write uses a weight <= 1 codeword, the
/// second either leaves it alone (same data) or sets cells to the complement
/// of the first-generation codeword for the new data.
enum class WomGeneration : std::uint8_t { Gen1, Gen2 };

class WomDecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WomCode {
  // cells[0] is the leftmost character of the printed codeword.
  std::array<std::uint8_t, 3> cells{0, 0, 0};
  WomGeneration generation{WomGeneration::Gen1};

  unsigned weight() const { return cells[0] + cells[1] + cells[2]; }

  std::string str() const {
    return {static_cast<char>('0' + cells[0]), static_cast<char>('0' + cells[1]), static_cast<char>('0' + cells[2])};
  }

  static WomCode parse(const std::string& s) {
    if (s.size() != 3) throw std::invalid_argument("WOM codeword must have 3 cells: " + s);
    WomCode c;
    for (int i = 0; i < 3; ++i) {
      if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("bad WOM cell in " + s);
      c.cells[i] = static_cast<std::uint8_t>(s[i] - '0');
    }
    c.generation = c.weight() <= 1 ? WomGeneration::Gen1 : WomGeneration::Gen2;
    return c;
  }

  friend bool operator==(const WomCode&, const WomCode&) = default;
};

struct WomDecoded {
  std::uint8_t data{0};
  WomGeneration generation{WomGeneration::Gen1};
  friend bool operator==(const WomDecoded&, const WomDecoded&) = default;
};

namespace detail {
// data -> Gen1 codeword: 00->000, 01->001, 10->010, 11->100
inline constexpr std::array<std::array<std::uint8_t, 3>, 4> kGen1Table{{
    {0, 0, 0},
    {0, 0, 1},
    {0, 1, 0},
    {1, 0, 0},
}};
}  // namespace detail

inline WomCode wom_first_write(std::uint8_t data) {
  if (data > 3) throw std::invalid_argument("WOM data must be 2 bits");
  return WomCode{detail::kGen1Table[data], WomGeneration::Gen1};
}

inline WomDecoded wom_decode(const WomCode& code) {
  const unsigned w = code.weight();
  for (std::uint8_t d = 0; d < 4; ++d) {
    const auto& g1 = detail::kGen1Table[d];
    if (w <= 1 && code.cells == g1) return {d, WomGeneration::Gen1};
    if (w >= 2) {
      const std::array<std::uint8_t, 3> g2{static_cast<std::uint8_t>(1 - g1[0]), static_cast<std::uint8_t>(1 - g1[1]),
                                           static_cast<std::uint8_t>(1 - g1[2])};
      if (code.cells == g2) return {d, WomGeneration::Gen2};
    }
  }
  // Every 3-bit pattern belongs to one of the two tables, so this is only
  // reachable for cells outside {0,1}.
  throw WomDecodeError("pattern is not a WOM codeword");
}

inline WomCode wom_second_write(const WomCode& code, std::uint8_t data) {
  if (data > 3) throw std::invalid_argument("WOM data must be 2 bits");
  if (code.generation != WomGeneration::Gen1) throw std::invalid_argument("second write requires a Gen1 codeword");
  if (wom_decode(code).data == data) return code;
  const auto& g1 = detail::kGen1Table[data];
  WomCode out;
  for (int i = 0; i < 3; ++i) out.cells[i] = static_cast<std::uint8_t>(1 - g1[i]);
  out.generation = WomGeneration::Gen2;
  return out;
}

}  // namespace ohmsim::optical
