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
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ohmsim/channel/virtual_channel.hpp"
#include "ohmsim/sim/engine.hpp"

namespace ohmsim::channel {

enum class TrafficClass : std::uint8_t { Demand, Migration };

/// A payload moving over one link. `device` is the non-controller endpoint
/// for data-route transfers (or the sender for memory-route transfers).
struct Transfer {
  DeviceId device{0};
  std::uint64_t bytes{0};
  TrafficClass cls{TrafficClass::Demand};
  // Bytes to hold in the receiving device's register until released.
  std::uint64_t register_bytes{0};
  // Opaque line tokens carried by the transfer; visible to snarfing devices.
  std::vector<std::uint64_t> payload;
  std::function<void(SimTime delivered)> on_delivered;
};

struct LinkStats {
  SimTime busy_demand;
  SimTime busy_migration;
  std::uint64_t bytes_demand{0};
  std::uint64_t bytes_migration{0};
  std::uint64_t modulated_bits{0};
  std::uint64_t transfers{0};
  std::uint64_t wom_transfers{0};
};

/// One serialized route (a VC data route, memory route, or an electrical
/// channel) driven by the event engine. Transfers queue per device; the
/// arbiter picks the next device round-robin whenever the link goes idle.
class Link {
 public:
  using Observer = std::function<void(const Transfer&, SimTime start, Multiplexing mux)>;

  Link(Engine& engine, LinkParams params, std::string name = "link")
      : engine_(engine), params_(params), name_(std::move(name)) {}

  Link(const Link&) = delete;
  Link& operator=(const Link&) = delete;

  const LinkParams& params() const { return params_; }
  const LinkStats& stats() const { return stats_; }
  const Arbiter& arbiter() const { return arbiter_; }
  bool busy() const { return busy_; }
  std::size_t queued() const { return queued_; }

  void set_register_capacity(std::uint64_t bytes) { register_capacity_ = bytes; }
  std::uint64_t register_occupancy(DeviceId d) const {
    auto it = register_used_.find(d);
    return it == register_used_.end() ? 0 : it->second;
  }
  void release_register(DeviceId d, std::uint64_t bytes) {
    auto& used = register_used_[d];
    used = bytes > used ? 0 : used - bytes;
    try_grant();
  }

  /// Queried at grant time; lets the owner slow the link while the sibling
  /// route is in use.
  void set_mux_probe(std::function<Multiplexing()> probe) { mux_probe_ = std::move(probe); }
  void add_observer(Observer o) { observers_.push_back(std::move(o)); }
  void set_busy_listener(std::function<void(bool)> l) { busy_listener_ = std::move(l); }

  void submit(Transfer t) {
    pending_[t.device].push_back(std::move(t));
    ++queued_;
    try_grant();
  }

 private:
  void try_grant() {
    if (busy_ || queued_ == 0) return;
    std::set<DeviceId> ready;
    for (auto& [dev, q] : pending_) {
      if (q.empty()) continue;
      const auto need = q.front().register_bytes;
      if (need == 0 || register_capacity_ == 0 || register_occupancy(dev) + need <= register_capacity_) {
        ready.insert(dev);
      }
    }
    if (ready.empty()) return;  // back-pressure: wait for a register release
    const DeviceId dev = arbiter_.arbitrate(ready);
    Transfer t = std::move(pending_[dev].front());
    pending_[dev].pop_front();
    --queued_;
    if (t.register_bytes) register_used_[dev] += t.register_bytes;

    const Multiplexing mux = mux_probe_ ? mux_probe_() : Multiplexing::None;
    const SimTime start = engine_.now();
    const SimTime occupancy = serialization_time(t.bytes * 8, params_, mux);
    stats_.modulated_bits += coded_bits(t.bytes * 8, mux);
    ++stats_.transfers;
    if (mux == Multiplexing::Wom) ++stats_.wom_transfers;
    if (t.cls == TrafficClass::Demand) {
      stats_.busy_demand += occupancy;
      stats_.bytes_demand += t.bytes;
    } else {
      stats_.busy_migration += occupancy;
      stats_.bytes_migration += t.bytes;
    }
    for (auto& o : observers_) o(t, start, mux);

    busy_ = true;
    if (busy_listener_) busy_listener_(true);
    const SimTime end = start + occupancy;
    const SimTime delivered = end + params_.serdes + params_.propagation;
    auto cb = std::move(t.on_delivered);
    engine_.schedule(end, [this, delivered, cb = std::move(cb)]() mutable {
      busy_ = false;
      arbiter_.release();
      if (busy_listener_) busy_listener_(false);
      if (cb) engine_.schedule(delivered, [cb = std::move(cb), delivered] { cb(delivered); });
      try_grant();
    });
  }

  Engine& engine_;
  LinkParams params_;
  std::string name_;
  Arbiter arbiter_;
  std::map<DeviceId, std::deque<Transfer>> pending_;
  std::size_t queued_{0};
  bool busy_{false};
  std::uint64_t register_capacity_{0};
  std::map<DeviceId, std::uint64_t> register_used_;
  std::function<Multiplexing()> mux_probe_;
  std::function<void(bool)> busy_listener_;
  std::vector<Observer> observers_;
  LinkStats stats_;
};

}  // namespace ohmsim::channel
