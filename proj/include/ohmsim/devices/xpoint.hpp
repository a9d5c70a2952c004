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
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ohmsim/devices/dram.hpp"
#include "ohmsim/devices/start_gap.hpp"
#include "ohmsim/sim/engine.hpp"

namespace ohmsim::devices {

struct XpointParams {
  SimTime read_latency{nanoseconds(190)};
  SimTime write_latency{nanoseconds(763)};
  std::uint32_t read_buffer_entries{16};
  std::uint32_t write_buffer_entries{16};
  std::uint64_t start_gap_psi{100};
  // Independent media ports per direction; each serves one access at a time.
  std::uint32_t media_ports{1};
};

class BufferFull : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 3D XPoint media behind its logic-layer controller. Reads and writes are
/// queued in bounded buffers and served by one read and one write media
/// engine, each strictly serial. A write becomes visible only once its
/// media latency has elapsed; a read samples the media when its media
/// access begins.
class XpointDevice {
 public:
  XpointDevice(Engine& engine, std::uint64_t lines, XpointParams params = {})
      : engine_(engine), params_(params), start_gap_(lines, params.start_gap_psi),
        read_ports_(std::max<std::uint32_t>(1, params.media_ports)),
        write_ports_(std::max<std::uint32_t>(1, params.media_ports)) {}

  XpointDevice(const XpointDevice&) = delete;
  XpointDevice& operator=(const XpointDevice&) = delete;

  const XpointParams& params() const { return params_; }
  const StartGap& start_gap() const { return start_gap_; }
  std::uint64_t lines() const { return start_gap_.lines(); }

  bool can_accept_read() const { return reads_in_buffer_ < params_.read_buffer_entries; }
  bool can_accept_write() const { return writes_in_buffer_ < params_.write_buffer_entries; }
  std::uint32_t read_buffer_occupancy() const { return reads_in_buffer_; }
  std::uint32_t write_buffer_occupancy() const { return writes_in_buffer_; }

  std::uint64_t media_reads() const { return media_reads_; }
  std::uint64_t media_writes() const { return media_writes_; }
  std::uint64_t line_writes() const { return line_writes_; }
  std::uint64_t physical_writes(std::uint64_t phys) const {
    auto it = wear_.find(phys);
    return it == wear_.end() ? 0 : it->second;
  }

  using Tokens = std::vector<std::uint64_t>;

  /// DDR-T read of `count` consecutive logical lines as one media access.
  /// `on_ready` fires when the device raises its ready signal; the buffer
  /// entry stays allocated until `release_read()` (after the controller has
  /// pulled the data).
  void read(std::uint64_t line, std::uint64_t count, std::function<void(Tokens, SimTime ready)> on_ready) {
    if (!can_accept_read()) throw BufferFull("XPoint read buffer full");
    if (count == 0 || line + count > lines()) throw std::out_of_range("XPoint read outside device");
    ++reads_in_buffer_;
    SimTime& port = earliest_port(read_ports_);
    const SimTime start = max(engine_.now(), port);
    port = start + params_.read_latency;
    engine_.schedule(start, [this, line, count, start, cb = std::move(on_ready)]() mutable {
      ++media_reads_;
      Tokens tokens(count);
      for (std::uint64_t i = 0; i < count; ++i) tokens[i] = peek(line + i);
      const SimTime ready = start + params_.read_latency;
      engine_.schedule(ready, [cb = std::move(cb), tokens = std::move(tokens), ready]() mutable {
        cb(std::move(tokens), ready);
      });
    });
  }

  void read(std::uint64_t line, std::function<void(std::uint64_t token, SimTime ready)> on_ready) {
    read(line, 1, [cb = std::move(on_ready)](Tokens t, SimTime ready) { cb(t.front(), ready); });
  }

  void release_read() {
    if (reads_in_buffer_ > 0) --reads_in_buffer_;
  }

  /// Persistent write of consecutive lines; `on_durable` fires once the
  /// media write completes and the buffer entry is freed.
  void write(std::uint64_t line, Tokens tokens, std::function<void(SimTime durable)> on_durable = {}) {
    if (!can_accept_write()) throw BufferFull("XPoint write buffer full");
    if (tokens.empty() || line + tokens.size() > lines()) throw std::out_of_range("XPoint write outside device");
    ++writes_in_buffer_;
    SimTime& port = earliest_port(write_ports_);
    const SimTime start = max(engine_.now(), port);
    const SimTime durable = start + params_.write_latency;
    port = durable;
    engine_.schedule(durable, [this, line, tokens = std::move(tokens), durable, cb = std::move(on_durable)] {
      for (std::uint64_t i = 0; i < tokens.size(); ++i) commit(line + i, tokens[i]);
      ++media_writes_;
      --writes_in_buffer_;
      if (cb) cb(durable);
    });
  }

  void write(std::uint64_t line, std::uint64_t token, std::function<void(SimTime durable)> on_durable = {}) {
    write(line, Tokens{token}, std::move(on_durable));
  }

  /// Current durable value of a logical line (0 if never written).
  std::uint64_t peek(std::uint64_t line) const {
    auto it = media_.find(start_gap_.translate(line));
    return it == media_.end() ? 0 : it->second;
  }

  SimTime read_port_free() const { return *std::min_element(read_ports_.begin(), read_ports_.end()); }
  SimTime write_port_free() const { return *std::min_element(write_ports_.begin(), write_ports_.end()); }

 private:
  void commit(std::uint64_t line, std::uint64_t token) {
    const auto phys = start_gap_.translate(line);
    media_[phys] = token;
    ++wear_[phys];
    ++line_writes_;
    if (auto mv = start_gap_.on_write()) {
      auto it = media_.find(mv->from);
      if (it != media_.end()) {
        media_[mv->to] = it->second;
        media_.erase(mv->from);
      } else {
        media_.erase(mv->to);
      }
      ++wear_[mv->to];
    }
  }

  Engine& engine_;
  XpointParams params_;
  StartGap start_gap_;
  std::unordered_map<std::uint64_t, std::uint64_t> media_;
  std::unordered_map<std::uint64_t, std::uint64_t> wear_;
  static SimTime& earliest_port(std::vector<SimTime>& ports) {
    return *std::min_element(ports.begin(), ports.end());
  }

  std::vector<SimTime> read_ports_;
  std::vector<SimTime> write_ports_;
  std::uint32_t reads_in_buffer_{0};
  std::uint32_t writes_in_buffer_{0};
  std::uint64_t media_reads_{0};
  std::uint64_t media_writes_{0};
  std::uint64_t line_writes_{0};
};

enum class TransactionKind : std::uint8_t { Read, Write };

/// What a snarfing XPoint controller records from a transfer it observes.
struct CapturedTransaction {
  TransactionKind kind{TransactionKind::Read};
  std::uint64_t address{0};
  std::vector<std::uint64_t> data;
  std::uint64_t ecc{0};
  std::uint8_t tag{0};
  friend bool operator==(const CapturedTransaction&, const CapturedTransaction&) = default;
};

/// Passive tap on the MC<->DRAM traffic through a half-coupled receiver.
class SnarfUnit {
 public:
  void enable(bool on) { enabled_ = on; }
  bool enabled() const { return enabled_; }
  std::uint64_t captured() const { return captured_; }

  std::optional<CapturedTransaction> observe(const CapturedTransaction& on_channel) {
    if (!enabled_) return std::nullopt;
    ++captured_;
    return on_channel;
  }

 private:
  bool enabled_{false};
  std::uint64_t captured_{0};
};

struct SwapGranule {
  std::size_t bank{0};
  std::uint64_t row{0};
  std::uint64_t first_column{0};
  std::uint64_t bytes{0};
  std::uint64_t burst_bytes{128};
};

struct DdrSeqCommand {
  DramCommand cmd;
  std::size_t bank;
  std::uint64_t row;
  std::uint64_t column;
};

/// DDR sequence generator in the XPoint controller: reads the old DRAM
/// contents of the granule, then writes the XPoint data, one burst per
/// column. Relies on the controller having preset the bank.
inline std::vector<DdrSeqCommand> ddr_seq_generate(const SwapGranule& task, const DramBank& bank) {
  if (task.bytes == 0) return {};
  if (bank.state != BankState::Activated || bank.open_row != task.row) {
    throw ProtocolViolation("swap target bank was not preset to the activated row");
  }
  const std::uint64_t bursts = (task.bytes + task.burst_bytes - 1) / task.burst_bytes;
  std::vector<DdrSeqCommand> seq;
  seq.reserve(bursts * 2);
  for (std::uint64_t i = 0; i < bursts; ++i) seq.push_back({DramCommand::RD, task.bank, task.row, task.first_column + i});
  for (std::uint64_t i = 0; i < bursts; ++i) seq.push_back({DramCommand::WR, task.bank, task.row, task.first_column + i});
  return seq;
}

/// Replays a generated sequence against a device at earliest legal times.
/// Returns the completion of the last command.
inline SimTime replay(DramDevice& dev, const std::vector<DdrSeqCommand>& seq, SimTime now) {
  SimTime done = now;
  SimTime t = now;
  for (const auto& c : seq) {
    auto e = dev.earliest(c.bank, c.cmd, c.row, t);
    if (!e) throw ProtocolViolation(std::string("generated ") + to_string(c.cmd) + " is illegal");
    done = max(done, dev.issue(c.bank, c.cmd, c.row, *e));
    t = *e;
  }
  return done;
}

}  // namespace ohmsim::devices
