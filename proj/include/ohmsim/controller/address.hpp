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

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "ohmsim/platform.hpp"

namespace ohmsim::controller {

class AddressError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Capacity split of one memory mode. Planar exposes DRAM + XPoint as one
/// flat space; two-level exposes only the XPoint capacity (DRAM caches it).
struct CapacityLayout {
  std::uint64_t dram_bytes{0};
  std::uint64_t xpoint_bytes{0};
  std::uint64_t line_bytes{128};
  std::uint64_t page_bytes{4096};

  std::uint64_t ratio() const { return dram_bytes ? xpoint_bytes / dram_bytes : 0; }
  std::uint64_t lines_per_page() const { return page_bytes / line_bytes; }
  std::uint64_t dram_lines() const { return dram_bytes / line_bytes; }
  std::uint64_t dram_pages() const { return dram_bytes / page_bytes; }

  std::uint64_t addressable(MemoryMode mode) const {
    return mode == MemoryMode::Planar ? dram_bytes + xpoint_bytes : xpoint_bytes;
  }

  void validate() const {
    if (line_bytes == 0 || page_bytes % line_bytes != 0) throw std::invalid_argument("page must hold whole lines");
    if (dram_bytes == 0 || dram_bytes % page_bytes != 0) throw std::invalid_argument("DRAM must hold whole pages");
    if (xpoint_bytes % dram_bytes != 0) throw std::invalid_argument("XPoint capacity must be a multiple of DRAM");
  }
};

struct PlanarAddress {
  std::uint64_t group{0};
  std::uint64_t slot{0};  // logical page index within the group
  std::uint64_t offset{0};
};

struct TwoLevelAddress {
  std::uint64_t index{0};  // DRAM line slot
  std::uint64_t tag{0};
  std::uint64_t offset{0};
};

inline void check_range(std::uint64_t addr, const CapacityLayout& c, MemoryMode mode) {
  if (addr >= c.addressable(mode)) {
    throw AddressError("address 0x" + std::to_string(addr) + " beyond " + std::string(to_string(mode)) +
                       " capacity");
  }
}

/// Pages are striped across groups so consecutive pages land in different
/// groups; group g owns logical pages g, g+G, g+2G, ... (G = DRAM pages).
inline PlanarAddress decode_planar(std::uint64_t addr, const CapacityLayout& c) {
  check_range(addr, c, MemoryMode::Planar);
  const std::uint64_t page = addr / c.page_bytes;
  return {page % c.dram_pages(), page / c.dram_pages(), addr % c.page_bytes};
}

inline TwoLevelAddress decode_two_level(std::uint64_t addr, const CapacityLayout& c) {
  check_range(addr, c, MemoryMode::TwoLevel);
  const std::uint64_t line = addr / c.line_bytes;
  return {line % c.dram_lines(), line / c.dram_lines(), addr % c.line_bytes};
}

/// log2 of the XPoint:DRAM ratio; the ratio must be a power of two.
inline unsigned tag_bits(std::uint64_t ratio) {
  if (ratio == 0 || !std::has_single_bit(ratio)) throw std::invalid_argument("capacity ratio must be a power of two");
  return static_cast<unsigned>(std::countr_zero(ratio));
}

/// valid/dirty/tag bits carried in the ECC region of each DRAM cache line.
struct CacheLineMeta {
  bool valid{false};
  bool dirty{false};
  std::uint8_t tag{0};

  friend bool operator==(const CacheLineMeta&, const CacheLineMeta&) = default;
};

}  // namespace ohmsim::controller
