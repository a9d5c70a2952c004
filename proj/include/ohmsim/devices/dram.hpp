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
#include <vector>

#include "ohmsim/sim/time.hpp"

namespace ohmsim::devices {

/// Illegal DDR command for the bank state or timing. Aborts the run.
class ProtocolViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DramTiming {
  SimTime tRCD{nanoseconds(25)};
  SimTime tRP{nanoseconds(10)};
  SimTime tCL{nanoseconds(11)};
  SimTime tRRD{nanoseconds(5)};
};

enum class DramCommand : std::uint8_t { ACT, PRE, RD, WR };

inline const char* to_string(DramCommand c) {
  switch (c) {
    case DramCommand::ACT: return "ACT";
    case DramCommand::PRE: return "PRE";
    case DramCommand::RD: return "RD";
    case DramCommand::WR: return "WR";
  }
  return "?";
}

enum class BankState : std::uint8_t { Precharged, Activated };

struct DramBank {
  BankState state{BankState::Precharged};
  std::optional<std::uint64_t> open_row;
  // Earliest times implied by previous commands to this bank.
  SimTime act_ok;  // after PRE + tRP
  SimTime col_ok;  // after ACT + tRCD
  SimTime pre_ok;  // after the last column command's data
};

/// One DRAM device: a set of banks sharing the tRRD activate window.
class DramDevice {
 public:
  explicit DramDevice(std::size_t banks = 8, DramTiming timing = {}) : banks_(banks), timing_(timing) {}

  const DramTiming& timing() const { return timing_; }
  std::size_t bank_count() const { return banks_.size(); }
  const DramBank& bank(std::size_t b) const { return banks_.at(b); }
  std::uint64_t commands_issued() const { return commands_; }

  /// Earliest time >= now at which `cmd` would be legal, or nullopt when the
  /// bank state forbids it outright.
  std::optional<SimTime> earliest(std::size_t b, DramCommand cmd, std::uint64_t row, SimTime now) const {
    const auto& bk = banks_.at(b);
    switch (cmd) {
      case DramCommand::ACT: {
        if (bk.state != BankState::Precharged) return std::nullopt;
        SimTime t = max(now, bk.act_ok);
        if (last_act_) t = max(t, *last_act_ + timing_.tRRD);
        return t;
      }
      case DramCommand::PRE:
        if (bk.state != BankState::Activated) return std::nullopt;
        return max(now, bk.pre_ok);
      case DramCommand::RD:
      case DramCommand::WR:
        if (bk.state != BankState::Activated || bk.open_row != row) return std::nullopt;
        return max(now, bk.col_ok);
    }
    return std::nullopt;
  }

  /// Issues a command at `at`. Returns: ACT -> time columns become legal,
  /// PRE -> time the bank may be activated again, RD -> first data at the
  /// device pins, WR -> time the write is committed.
  SimTime issue(std::size_t b, DramCommand cmd, std::uint64_t row, SimTime at) {
    const auto ok = earliest(b, cmd, row, at);
    if (!ok) {
      throw ProtocolViolation(std::string(to_string(cmd)) + " illegal in bank " + std::to_string(b) + " state");
    }
    if (*ok != at) {
      throw ProtocolViolation(std::string(to_string(cmd)) + " to bank " + std::to_string(b) + " at " +
                              std::to_string(at.ps) + "ps violates timing (earliest " + std::to_string(ok->ps) +
                              "ps)");
    }
    auto& bk = banks_[b];
    ++commands_;
    switch (cmd) {
      case DramCommand::ACT:
        bk.state = BankState::Activated;
        bk.open_row = row;
        bk.col_ok = at + timing_.tRCD;
        bk.pre_ok = at;
        last_act_ = at;
        return bk.col_ok;
      case DramCommand::PRE:
        bk.state = BankState::Precharged;
        bk.open_row.reset();
        bk.act_ok = at + timing_.tRP;
        return bk.act_ok;
      case DramCommand::RD:
      case DramCommand::WR: {
        const SimTime done = at + timing_.tCL;
        bk.pre_ok = max(bk.pre_ok, done);
        return done;
      }
    }
    return at;
  }

  /// Issues the commands that bring `row` into the row buffer (if needed)
  /// and then one column command, each at its earliest legal time.
  /// Returns the column command's completion.
  SimTime access(std::size_t b, std::uint64_t row, bool write, SimTime now) {
    const auto& bk = banks_.at(b);
    SimTime t = now;
    if (bk.state == BankState::Activated && bk.open_row != row) {
      t = *earliest(b, DramCommand::PRE, 0, t);
      issue(b, DramCommand::PRE, 0, t);
    }
    if (banks_[b].state == BankState::Precharged) {
      t = *earliest(b, DramCommand::ACT, row, t);
      issue(b, DramCommand::ACT, row, t);
    }
    const auto cmd = write ? DramCommand::WR : DramCommand::RD;
    t = *earliest(b, cmd, row, t);
    return issue(b, cmd, row, t);
  }

  /// Presets a bank so `row` is open; returns the time columns are legal.
  SimTime preset(std::size_t b, std::uint64_t row, SimTime now) {
    const auto& bk = banks_.at(b);
    SimTime t = now;
    if (bk.state == BankState::Activated && bk.open_row == row) return max(now, bk.col_ok);
    if (bk.state == BankState::Activated) {
      t = *earliest(b, DramCommand::PRE, 0, t);
      issue(b, DramCommand::PRE, 0, t);
    }
    t = *earliest(b, DramCommand::ACT, row, t);
    return issue(b, DramCommand::ACT, row, t);
  }

  bool row_hit(std::size_t b, std::uint64_t row) const {
    const auto& bk = banks_.at(b);
    return bk.state == BankState::Activated && bk.open_row == row;
  }

 private:
  std::vector<DramBank> banks_;
  DramTiming timing_;
  std::optional<SimTime> last_act_;
  std::uint64_t commands_{0};
};

}  // namespace ohmsim::devices
