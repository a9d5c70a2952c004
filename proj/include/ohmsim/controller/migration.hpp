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
#include <string>
#include <vector>

#include "ohmsim/sim/time.hpp"

namespace ohmsim::controller {

enum class MigrationKind : std::uint8_t { BaselineCopy, AutoRw, Swap, ReverseWrite };

inline const char* to_string(MigrationKind k) {
  switch (k) {
    case MigrationKind::BaselineCopy: return "baseline-copy";
    case MigrationKind::AutoRw: return "auto-rw";
    case MigrationKind::Swap: return "swap";
    case MigrationKind::ReverseWrite: return "reverse-write";
  }
  return "?";
}

enum class MigrationState : std::uint8_t { Pending, Active, Done };

/// Half-open byte range [begin, end).
struct AddressRange {
  std::uint64_t begin{0};
  std::uint64_t end{0};

  bool empty() const { return end <= begin; }
  bool intersects(const AddressRange& o) const { return !empty() && !o.empty() && begin < o.end && o.begin < end; }
};

struct BankRef {
  std::uint32_t device{0};
  std::uint32_t bank{0};
  friend bool operator==(const BankRef&, const BankRef&) = default;
};

enum class DeviceKind : std::uint8_t { Dram, Xpoint };

struct Location {
  DeviceKind kind{DeviceKind::Dram};
  std::uint32_t device{0};
  std::uint64_t address{0};  // device-local line
};

struct MigrationTask {
  std::uint64_t id{0};
  MigrationKind kind{MigrationKind::BaselineCopy};
  Location src;
  Location dst;
  std::uint64_t size{0};
  MigrationState state{MigrationState::Pending};
  SimTime created;
  // Logical address ranges no demand request may touch until the task ends.
  std::vector<AddressRange> locked;
  // Whole-bank lock held by swaps between the preset and the confirm.
  std::optional<BankRef> bank_lock;
};

struct ConflictQuery {
  AddressRange range;
  std::optional<BankRef> bank;
};

inline bool conflicts(const ConflictQuery& q, const MigrationTask& t) {
  if (t.state != MigrationState::Active) return false;
  if (q.bank && t.bank_lock && *q.bank == *t.bank_lock) return true;
  for (const auto& r : t.locked) {
    if (r.intersects(q.range)) return true;
  }
  return false;
}

template <typename Tasks>
bool detect_conflict(const ConflictQuery& q, const Tasks& active) {
  for (const auto& t : active) {
    if (conflicts(q, t)) return true;
  }
  return false;
}

/// Steps of the SWAP-CMD handshake in the order the controller must see them.
enum class HandshakeStep : std::uint8_t { Preset = 1, SwapCmd, DramRead, DramWrite, Ready, Confirm };

inline const char* to_string(HandshakeStep s) {
  switch (s) {
    case HandshakeStep::Preset: return "preset";
    case HandshakeStep::SwapCmd: return "swap-cmd";
    case HandshakeStep::DramRead: return "migrate-read";
    case HandshakeStep::DramWrite: return "migrate-write";
    case HandshakeStep::Ready: return "ready";
    case HandshakeStep::Confirm: return "confirm";
  }
  return "?";
}

struct HandshakeRecord {
  std::uint64_t task{0};
  HandshakeStep step{HandshakeStep::Preset};
  SimTime at;
};

/// SWAP-CMD payload: opcode, DRAM address, XPoint address, size.
inline constexpr std::uint64_t kSwapCmdBytes = 1 + 8 + 8 + 4;

}  // namespace ohmsim::controller
