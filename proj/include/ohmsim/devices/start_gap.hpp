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
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace ohmsim::devices {

/// Table-free wear leveling over N logical lines stored in N+1 physical
/// lines. One physical line (the gap) is always empty; every `psi` media
/// writes the line before the gap moves into it. After the gap has walked
/// the whole array the start offset advances by one, so over time every
/// logical line visits every physical line.
class StartGap {
 public:
  struct Move {
    std::uint64_t from;
    std::uint64_t to;
  };

  StartGap(std::uint64_t lines, std::uint64_t psi = 100) : n_(lines), gap_(lines), psi_(psi) {
    if (lines == 0) throw std::invalid_argument("Start-Gap needs at least one line");
    if (psi == 0) throw std::invalid_argument("Start-Gap rotation period must be positive");
  }

  std::uint64_t lines() const { return n_; }
  std::uint64_t gap_index() const { return gap_; }
  std::uint64_t start_index() const { return start_; }
  std::uint64_t write_counter() const { return writes_; }
  std::uint64_t psi() const { return psi_; }
  std::uint64_t rotations() const { return rotations_; }

  std::uint64_t translate(std::uint64_t logical) const {
    if (logical >= n_) {
      throw std::out_of_range("logical line " + std::to_string(logical) + " outside " + std::to_string(n_) + " lines");
    }
    std::uint64_t pa = (logical + start_) % n_;
    if (pa >= gap_) ++pa;
    return pa;
  }

  /// Counts one media write; returns the data move to perform when the
  /// rotation period elapses.
  std::optional<Move> on_write() {
    ++writes_;
    if (writes_ < psi_) return std::nullopt;
    return rotate();
  }

  /// Moves the gap down by one line. The caller must copy physical `from`
  /// into physical `to` so that translation stays consistent.
  Move rotate() {
    writes_ = 0;
    ++rotations_;
    if (gap_ == 0) {
      // Wrap: the last physical line moves into slot 0 and the whole
      // mapping shifts by one.
      gap_ = n_;
      start_ = (start_ + 1) % n_;
      return {n_, 0};
    }
    const Move m{gap_ - 1, gap_};
    --gap_;
    return m;
  }

 private:
  std::uint64_t n_;
  std::uint64_t gap_;
  std::uint64_t start_{0};
  std::uint64_t writes_{0};
  std::uint64_t psi_;
  std::uint64_t rotations_{0};
};

}  // namespace ohmsim::devices
