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
#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <list>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ohmsim/channel/link.hpp"
#include "ohmsim/config.hpp"
#include "ohmsim/controller/address.hpp"
#include "ohmsim/controller/migration.hpp"
#include "ohmsim/controller/planar.hpp"
#include "ohmsim/controller/scheduler.hpp"
#include "ohmsim/devices/dram.hpp"
#include "ohmsim/devices/xpoint.hpp"
#include "ohmsim/platform.hpp"
#include "ohmsim/sim/engine.hpp"
#include "ohmsim/workload/request.hpp"

namespace ohmsim {

using channel::Link;
using channel::TrafficClass;
using channel::Transfer;
using controller::MigrationKind;

/// Per-event energy inputs, recorded only when asked for so the ledger can
/// be recomputed independently of the aggregate counters.
enum class EnergyEventKind : std::uint8_t { DramColumn, XpointRead, XpointWrite, OpticalBits, ElectricalBits };

struct EnergyEvent {
  EnergyEventKind kind;
  std::uint64_t bits;
};

struct ReadObservation {
  std::uint64_t request{0};
  std::uint64_t line{0};
  std::uint64_t token{0};
};

struct SystemOptions {
  bool record_reads{false};
  bool record_energy_events{false};
};

inline constexpr std::size_t kMigrationKinds = 4;

struct SystemStats {
  std::uint64_t requests_completed{0};
  std::uint64_t line_ops{0};
  std::vector<double> latencies_ns;
  std::array<std::uint64_t, kMigrationKinds> migrations{};
  // Migration bytes each function put on a controller's data route.
  std::array<std::uint64_t, kMigrationKinds> data_route_migration_bytes{};
  std::uint64_t dram_columns{0};
  std::uint64_t xpoint_read_lines{0};
  std::uint64_t xpoint_write_lines{0};
  std::uint64_t xpoint_media_reads{0};
  std::uint64_t xpoint_media_writes{0};
  std::uint64_t lookups{0};
  std::uint64_t hits{0};
  std::uint64_t misses{0};
  std::uint64_t dirty_evictions{0};
  std::uint64_t lookup_dram_reads{0};  // tag-check accesses, one per lookup
  std::uint64_t snarfed{0};
  std::uint64_t reverse_writes{0};
  std::uint64_t freezes{0};
  SimTime frozen_time;
  SimTime runtime;
};

struct LinkReport {
  std::string name;
  int controller{0};
  channel::LinkStats stats;
  bool optical{true};
};

class MemorySystem {
 public:
  MemorySystem(const Config& cfg, Platform platform, MemoryMode mode, SystemOptions opts = {})
      : cfg_(cfg), platform_(platform), mode_(mode), opts_(opts),
        caps_(capabilities(platform, cfg.oracle_variant == OracleVariant::DedicatedChannel)),
        layout_(cfg.layout(mode)), hot_(cfg.hotness()) {
    cfg_.validate();
    dram_only_ = !caps_.has_xpoint;
    nmc_ = static_cast<std::uint64_t>(cfg.controllers);
    ndram_ = static_cast<std::uint64_t>(cfg.dram_devices);
    nbanks_ = static_cast<std::uint64_t>(cfg.dram_banks);
    nx_ = static_cast<std::uint64_t>(cfg.xpoint_devices);
    lpp_ = layout_.lines_per_page();
    ratio_ = layout_.ratio();
    dram_pages_per_mc_ = layout_.dram_pages() / nmc_;
    dram_devs_ = ndram_;
    if (dram_only_) {
      const std::uint64_t pages = layout_.addressable(mode) / layout_.page_bytes;
      dram_pages_per_mc_ = (pages + nmc_ - 1) / nmc_;
      // The all-DRAM Oracle holds the whole capacity in DRAM, i.e. more
      // devices; Origin keeps the base device count with deeper rows.
      if (platform == Platform::Oracle) dram_devs_ = ndram_ * (layout_.addressable(mode) / layout_.dram_bytes);
    }
    if (!dram_only_ && (dram_pages_per_mc_ * ratio_) % nx_ != 0) {
      throw ConfigError("XPoint frames per controller must divide among XPoint devices");
    }
    build();
  }

  MemorySystem(const MemorySystem&) = delete;
  MemorySystem& operator=(const MemorySystem&) = delete;

  Platform platform() const { return platform_; }
  MemoryMode mode() const { return mode_; }
  const Capabilities& caps() const { return caps_; }
  const Config& config() const { return cfg_; }
  const controller::CapacityLayout& layout() const { return layout_; }
  Engine& engine() { return engine_; }
  const SystemStats& stats() const { return stats_; }
  const std::vector<ReadObservation>& reads() const { return reads_; }
  const std::vector<EnergyEvent>& energy_events() const { return energy_events_; }
  const std::vector<workload::MemRequest>& requests() const { return requests_; }
  std::uint64_t addressable_bytes() const { return layout_.addressable(mode_); }

  std::vector<controller::HandshakeRecord> handshakes() const {
    std::vector<controller::HandshakeRecord> out;
    for (const auto& mc : mcs_) out.insert(out.end(), mc->handshake.begin(), mc->handshake.end());
    return out;
  }

  std::vector<LinkReport> links() const {
    std::vector<LinkReport> out;
    for (const auto& mc : mcs_) {
      out.push_back({"data", mc->id, mc->data->stats(), caps_.optical});
      if (mc->memory) out.push_back({"memory", mc->id, mc->memory->stats(), caps_.optical});
      if (mc->migration) out.push_back({"migration", mc->id, mc->migration->stats(), caps_.optical});
    }
    return out;
  }

  /// Total DRAM devices powered (DRAM-only platforms hold the whole
  /// capacity in DRAM).
  std::uint64_t dram_device_equivalents() const {
    return nmc_ * dram_devs_;
  }

  std::uint64_t optical_wavelengths() const {
    if (!caps_.optical) return 0;
    const auto w = static_cast<std::uint64_t>(cfg_.wavelengths);
    return caps_.dedicated_migration_channel ? 2 * w : w;
  }

  /// Replaces the workload. Requests must be sorted by issue time.
  void load(std::vector<workload::MemRequest> reqs) {
    for (std::size_t i = 1; i < reqs.size(); ++i) {
      if (reqs[i].issue_time < reqs[i - 1].issue_time) throw std::invalid_argument("requests not sorted by time");
    }
    for (const auto& r : reqs) {
      if (r.size == 0) throw std::invalid_argument("request of zero bytes");
      if (r.address + r.size > addressable_bytes()) {
        throw controller::AddressError("request " + std::to_string(r.id) + " beyond " +
                                       std::string(to_string(mode_)) + " capacity");
      }
    }
    requests_ = std::move(reqs);
    progress_.assign(requests_.size(), {});
    next_ = 0;
  }

  /// Runs every loaded request to completion (closed loop: at most
  /// `max_outstanding` requests in flight).
  void run() {
    inject();
    engine_.run();
    for (const auto& mc : mcs_) {
      if (!mc->queue.empty() || !mc->active.empty() || !mc->pending.empty()) {
        throw std::logic_error("simulation ended with work outstanding in controller " + std::to_string(mc->id));
      }
    }
    stats_.runtime = engine_.now();
    for (const auto& mc : mcs_) {
      for (const auto& x : mc->xp) {
        stats_.xpoint_media_reads += x->media_reads();
        stats_.xpoint_media_writes += x->media_writes();
      }
    }
  }

  /// Current logical content of a line, looked up through residency,
  /// cache metadata, and wear leveling.
  std::uint64_t peek(std::uint64_t line) const {
    if (dram_only_) {
      const auto l = dram_only_loc(line);
      return mcs_[l.mc]->load_dram(l.key);
    }
    if (mode_ == MemoryMode::Planar) {
      const auto l = planar_loc(line);
      const Mc& mc = *mcs_[l.mc];
      return l.in_dram ? mc.load_dram(l.key) : mc.xp[l.xdev]->peek(l.xline);
    }
    const auto l = two_level_loc(line);
    const Mc& mc = *mcs_[l.mc];
    auto it = mc.meta.find(l.key);
    if (it != mc.meta.end() && it->second.valid && it->second.tag == l.tag) return mc.load_dram(l.key);
    return mc.xp[l.xdev]->peek(l.xline);
  }

  std::uint64_t total_lines() const { return addressable_bytes() / layout_.line_bytes; }

  /// Test hook: the group table of a planar controller.
  const controller::PlanarGroup& planar_group(int mc, std::uint64_t local_group) const {
    return mcs_.at(static_cast<std::size_t>(mc))->groups.at(local_group);
  }

 private:
  static constexpr channel::DeviceId kMcPort = 0;

  struct LineOp {
    std::uint64_t seq{0};
    std::size_t req{0};
    std::uint64_t line{0};
    bool write{false};
    std::uint64_t token{0};
    std::uint64_t key{0};
  };

  struct ReqProgress {
    std::uint32_t remaining{0};
    SimTime injected;
  };

  struct Loc {
    std::size_t mc{0};
    bool in_dram{true};
    std::uint32_t dev{0};
    std::uint32_t bank{0};
    std::uint64_t row{0};
    std::uint64_t key{0};  // controller-local DRAM line (cache index in two-level)
    std::uint32_t xdev{0};
    std::uint64_t xline{0};
    std::uint64_t page{0};        // global logical page (planar)
    std::uint64_t local_group{0}; // planar
    std::uint64_t slot{0};        // planar
    std::uint8_t tag{0};          // two-level
  };

  struct Task {
    controller::MigrationTask t;
    std::uint64_t local_group{0};
    std::uint64_t hot_slot{0};
    std::uint64_t cold_slot{0};
    Loc dram;  // DRAM page of the group
    std::uint32_t xdev{0};
    std::uint64_t xline{0};  // first line of the hot page's XPoint frame
    std::vector<std::uint64_t> from_dram;
    std::vector<std::uint64_t> from_xpoint;
    int legs_left{0};
    bool dram_done{false};
    bool xpoint_done{false};
    bool draining{false};
  };

  struct Mc {
    int id{0};
    std::unique_ptr<Link> data;
    std::unique_ptr<Link> memory;
    std::unique_ptr<Link> migration;
    std::vector<devices::DramDevice> dram;
    std::vector<std::unique_ptr<devices::XpointDevice>> xp;
    std::vector<std::uint32_t> xp_read_credits;
    std::vector<std::uint32_t> xp_write_credits;
    std::unordered_map<std::uint64_t, std::uint64_t> dram_store;
    std::unordered_map<std::uint64_t, controller::CacheLineMeta> meta;
    std::vector<controller::PlanarGroup> groups;
    std::vector<std::uint8_t> group_busy;  // migration pending or active
    std::vector<LineOp> queue;
    std::unordered_map<std::uint64_t, std::deque<std::uint64_t>> key_order;
    std::unordered_map<std::uint64_t, std::uint32_t> page_inflight;
    std::vector<std::uint32_t> bank_inflight;
    // Time of the latest command already placed on each bank.
    std::vector<SimTime> bank_ready;
    std::list<Task> active;
    std::deque<Task> pending;
    std::deque<std::function<bool()>> waiters;
    std::vector<controller::HandshakeRecord> handshake;
    devices::SnarfUnit snarf;
    int frozen{0};
    SimTime frozen_since;
    bool kick_pending{false};
    bool defer_timer{false};

    std::uint64_t load_dram(std::uint64_t key) const {
      auto it = dram_store.find(key);
      return it == dram_store.end() ? 0 : it->second;
    }
  };

  // ---------------------------------------------------------------- setup

  void build() {
    const channel::LinkParams lp = caps_.optical ? cfg_.optical_link() : cfg_.electrical_link();
    ctl_ = lp.serdes + lp.propagation;
    for (std::uint64_t m = 0; m < nmc_; ++m) {
      auto mc = std::make_unique<Mc>();
      mc->id = static_cast<int>(m);
      mc->data = std::make_unique<Link>(engine_, lp, "data");
      if (caps_.swap) mc->memory = std::make_unique<Link>(engine_, lp, "memory");
      if (caps_.dedicated_migration_channel) mc->migration = std::make_unique<Link>(engine_, lp, "migration");
      for (std::uint64_t d = 0; d < dram_devs_; ++d) mc->dram.emplace_back(nbanks_, cfg_.dram_timing());
      mc->bank_inflight.assign(dram_devs_ * nbanks_, 0);
      mc->bank_ready.assign(dram_devs_ * nbanks_, SimTime{});
      if (!dram_only_) {
        const std::uint64_t lines = dram_pages_per_mc_ * ratio_ / nx_ * lpp_;
        for (std::uint64_t x = 0; x < nx_; ++x) {
          mc->xp.push_back(std::make_unique<devices::XpointDevice>(engine_, lines, cfg_.xpoint_params()));
        }
        mc->xp_read_credits.assign(nx_, cfg_.xpoint_read_buffer);
        mc->xp_write_credits.assign(nx_, cfg_.xpoint_write_buffer);
        if (mode_ == MemoryMode::Planar) {
          mc->groups.assign(dram_pages_per_mc_, controller::PlanarGroup(ratio_));
          mc->group_busy.assign(dram_pages_per_mc_, 0);
        }
      }
      mc->snarf.enable(caps_.auto_rw);
      Mc* raw = mc.get();
      if (caps_.wom_coding) {
        raw->data->set_mux_probe([raw] {
          return raw->memory->busy() ? channel::Multiplexing::Wom : channel::Multiplexing::None;
        });
      }
      if (opts_.record_energy_events) {
        for (Link* l : {raw->data.get(), raw->memory.get(), raw->migration.get()}) {
          if (!l) continue;
          l->add_observer([this](const Transfer& t, SimTime, channel::Multiplexing mux) {
            const auto bits = channel::coded_bits(t.bytes * 8, mux);
            energy_events_.push_back(
                {caps_.optical ? EnergyEventKind::OpticalBits : EnergyEventKind::ElectricalBits, bits});
          });
        }
      }
      mcs_.push_back(std::move(mc));
    }
  }

  channel::DeviceId dram_port(std::uint32_t d) const { return static_cast<channel::DeviceId>(1 + d); }
  channel::DeviceId xp_port(std::uint32_t x) const { return static_cast<channel::DeviceId>(1 + dram_devs_ + x); }

  // ------------------------------------------------------------- mapping

  void place_dram_page(Loc& l, std::uint64_t local_page) const {
    l.dev = static_cast<std::uint32_t>(local_page % dram_devs_);
    l.bank = static_cast<std::uint32_t>((local_page / dram_devs_) % nbanks_);
    l.row = local_page / (dram_devs_ * nbanks_);
  }

  Loc dram_only_loc(std::uint64_t line) const {
    Loc l;
    const std::uint64_t page = line / lpp_;
    l.mc = page % nmc_;
    const std::uint64_t lp = page / nmc_;
    place_dram_page(l, lp);
    l.key = lp * lpp_ + line % lpp_;
    l.page = page;
    return l;
  }

  Loc planar_loc(std::uint64_t line) const {
    const auto a = controller::decode_planar(line * layout_.line_bytes, layout_);
    Loc l;
    l.page = line / lpp_;
    l.mc = a.group % nmc_;
    l.local_group = a.group / nmc_;
    l.slot = a.slot;
    const std::uint64_t off = a.offset / layout_.line_bytes;
    place_dram_page(l, l.local_group);
    const std::uint32_t frame = mcs_[l.mc]->groups[l.local_group].frame_of(a.slot);
    l.in_dram = frame == 0;
    l.key = l.local_group * lpp_ + off;
    if (!l.in_dram) xpoint_frame(l, frame, off);
    return l;
  }

  void xpoint_frame(Loc& l, std::uint32_t frame, std::uint64_t off) const {
    const std::uint64_t xid = l.local_group * ratio_ + (frame - 1);
    l.xdev = static_cast<std::uint32_t>(xid % nx_);
    l.xline = (xid / nx_) * lpp_ + off;
  }

  Loc two_level_loc(std::uint64_t line) const {
    const auto a = controller::decode_two_level(line * layout_.line_bytes, layout_);
    Loc l;
    const std::uint64_t ipage = a.index / lpp_;
    const std::uint64_t off = a.index % lpp_;
    l.mc = ipage % nmc_;
    const std::uint64_t lp = ipage / nmc_;
    place_dram_page(l, lp);
    l.key = lp * lpp_ + off;
    l.tag = static_cast<std::uint8_t>(a.tag);
    const std::uint64_t xpage = a.tag * dram_pages_per_mc_ + lp;
    l.xdev = static_cast<std::uint32_t>(xpage % nx_);
    l.xline = (xpage / nx_) * lpp_ + off;
    l.page = ipage;
    return l;
  }

  /// Global line of the line cached at controller-local index `key` under `tag`.
  std::uint64_t two_level_line(std::size_t mc, std::uint64_t key, std::uint64_t tag) const {
    const std::uint64_t lp = key / lpp_;
    const std::uint64_t index = (lp * nmc_ + mc) * lpp_ + key % lpp_;
    return tag * layout_.dram_lines() + index;
  }

  Loc locate(std::uint64_t line) const {
    if (dram_only_) return dram_only_loc(line);
    return mode_ == MemoryMode::Planar ? planar_loc(line) : two_level_loc(line);
  }

  std::size_t bank_index(const Loc& l) const { return l.dev * nbanks_ + l.bank; }

  // ----------------------------------------------------------- injection

  void inject() {
    while (next_ < requests_.size() && outstanding_ < cfg_.max_outstanding) {
      const auto& r = requests_[next_];
      if (r.issue_time > engine_.now()) {
        if (!inject_scheduled_) {
          inject_scheduled_ = true;
          engine_.schedule(r.issue_time, [this] {
            inject_scheduled_ = false;
            inject();
          });
        }
        return;
      }
      start_request(next_++);
    }
  }

  void start_request(std::size_t i) {
    auto& r = requests_[i];
    const std::uint64_t first = r.address / layout_.line_bytes;
    const std::uint64_t last = (r.address + r.size - 1) / layout_.line_bytes;
    progress_[i] = {static_cast<std::uint32_t>(last - first + 1), engine_.now()};
    ++outstanding_;
    for (std::uint64_t line = first; line <= last; ++line) {
      const Loc l = locate(line);
      if (line == first) r.controller_id = static_cast<int>(l.mc);
      Mc& mc = *mcs_[l.mc];
      LineOp op;
      op.seq = next_seq_++;
      op.req = i;
      op.line = line;
      op.write = !r.is_read();
      op.token = r.id + 1;
      op.key = (!dram_only_ && mode_ == MemoryMode::TwoLevel) ? l.key : line;
      mc.key_order[op.key].push_back(op.seq);
      mc.queue.push_back(op);
      kick(mc);
    }
  }

  void complete_line(std::size_t i) {
    auto& p = progress_[i];
    if (--p.remaining > 0) return;
    auto& r = requests_[i];
    r.completion_time = engine_.now();
    stats_.latencies_ns.push_back((engine_.now() - p.injected).as_ns());
    ++stats_.requests_completed;
    --outstanding_;
    inject();
  }

  void observe_read(const LineOp& op, std::uint64_t token) {
    if (opts_.record_reads) reads_.push_back({requests_[op.req].id, op.line, token});
  }

  // ----------------------------------------------------------- scheduling

  void kick(Mc& mc) {
    if (mc.kick_pending) return;
    mc.kick_pending = true;
    Mc* p = &mc;
    engine_.schedule(engine_.now(), [this, p] {
      p->kick_pending = false;
      pass(*p);
    });
  }

  bool locked(const Mc& mc, const Loc& l) const {
    if (mode_ != MemoryMode::Planar || dram_only_) return false;
    controller::ConflictQuery q;
    q.range = {l.page * layout_.page_bytes, (l.page + 1) * layout_.page_bytes};
    if (l.in_dram) q.bank = controller::BankRef{l.dev, l.bank};
    for (const auto& t : mc.active) {
      if (controller::conflicts(q, t.t)) return true;
    }
    return false;
  }

  bool eligible(const Mc& mc, const LineOp& op, const Loc& l) const {
    if (mc.frozen) return false;
    if (mc.key_order.at(op.key).front() != op.seq) return false;
    if (dram_only_ || mode_ == MemoryMode::TwoLevel) return bank_free(mc, l);
    if (locked(mc, l)) return false;
    if (!l.in_dram) return op.write ? mc.xp_write_credits[l.xdev] > 0 : mc.xp_read_credits[l.xdev] > 0;
    return bank_free(mc, l);
  }

  void pass(Mc& mc) {
    for (std::size_t n = mc.waiters.size(); n > 0; --n) {
      auto w = std::move(mc.waiters.front());
      mc.waiters.pop_front();
      if (!w()) mc.waiters.push_back(std::move(w));
    }
    start_drained(mc);
    const controller::SchedulerPolicy policy{caps_.swap && mode_ == MemoryMode::Planar};
    std::vector<controller::Candidate> cands;
    std::vector<Loc> locs;
    while (true) {
      cands.clear();
      locs.clear();
      bool writes = false;
      for (const auto& op : mc.queue) {
        const Loc l = locate(op.line);
        controller::Candidate c;
        c.age = op.seq;
        c.is_read = !op.write;
        c.ready = eligible(mc, op, l);
        c.row_hit = l.in_dram && mc.dram[l.dev].row_hit(l.bank, l.row);
        writes = writes || op.write;
        cands.push_back(c);
        locs.push_back(l);
      }
      controller::MigrationView mig;
      mig.pending = !mc.frozen && !mc.pending.empty() && mc.active.size() < cfg_.max_migrations;
      mig.overdue = mig.pending && engine_.now() - mc.pending.front().t.created >= SimTime{cfg_.migration_defer_ps};
      mig.writes_queued = writes;
      const auto a = controller::schedule(cands, mig, policy);
      if (a.kind == controller::ActionKind::Demand) {
        LineOp op = mc.queue[a.index];
        mc.queue.erase(mc.queue.begin() + static_cast<std::ptrdiff_t>(a.index));
        issue(mc, op, locs[a.index]);
      } else if (a.kind == controller::ActionKind::LaunchMigration) {
        launch(mc);
      } else {
        break;
      }
    }
    // A deferred background migration needs a wake-up once it is overdue.
    if (!mc.pending.empty() && policy.background_migration && !mc.defer_timer) {
      const SimTime due = mc.pending.front().t.created + SimTime{cfg_.migration_defer_ps};
      if (due > engine_.now()) {
        mc.defer_timer = true;
        Mc* p = &mc;
        engine_.schedule(due, [this, p] {
          p->defer_timer = false;
          kick(*p);
        });
      }
    }
  }

  // ------------------------------------------------------- demand issue

  void issue(Mc& mc, const LineOp& op, const Loc& l) {
    ++stats_.line_ops;
    if (mode_ == MemoryMode::TwoLevel && !dram_only_) {
      issue_two_level(mc, op, l);
      return;
    }
    if (!dram_only_) {
      ++mc.page_inflight[l.page];
      if (l.in_dram) {
        ++mc.bank_inflight[bank_index(l)];
      } else {
        heat(mc, l);
      }
    }
    if (l.in_dram) {
      op.write ? dram_write(mc, op, l) : dram_read(mc, op, l);
    } else {
      op.write ? xpoint_write(mc, op, l) : xpoint_read(mc, op, l);
    }
  }

  SimTime dram_column(Mc& mc, const Loc& l, bool write, SimTime at) {
    ++stats_.dram_columns;
    if (opts_.record_energy_events) energy_events_.push_back({EnergyEventKind::DramColumn, layout_.line_bytes * 8});
    const SimTime done = mc.dram[l.dev].access(l.bank, l.row, write, at);
    note_bank_command(mc, bank_index(l), done - mc.dram[l.dev].timing().tCL);
    return done;
  }

  // Demand issue to a bank waits until its queued commands have gone out,
  // so commands reach each bank roughly in time order.
  void note_bank_command(Mc& mc, std::size_t bank, SimTime cmd) {
    if (cmd <= mc.bank_ready[bank]) return;
    mc.bank_ready[bank] = cmd;
    if (cmd > engine_.now()) {
      Mc* p = &mc;
      engine_.schedule(cmd, [this, p] { kick(*p); });
    }
  }

  bool bank_free(const Mc& mc, const Loc& l) const { return mc.bank_ready[bank_index(l)] <= engine_.now(); }

  void dram_read(Mc& mc, LineOp op, Loc l) {
    const SimTime t = dram_column(mc, l, false, engine_.now());
    engine_.schedule(t, [this, &mc, op, l] {
      const std::uint64_t token = mc.load_dram(l.key);
      mc.data->submit({dram_port(l.dev), layout_.line_bytes, TrafficClass::Demand, 0, {token},
                       [this, &mc, op, l, token](SimTime) {
                         observe_read(op, token);
                         finish_planar(mc, op, l);
                       }});
    });
  }

  void dram_write(Mc& mc, LineOp op, Loc l) {
    mc.data->submit({kMcPort, layout_.line_bytes, TrafficClass::Demand, 0, {op.token}, [this, &mc, op, l](SimTime) {
                       const SimTime t = dram_column(mc, l, true, engine_.now());
                       engine_.schedule(t, [this, &mc, op, l] {
                         mc.dram_store[l.key] = op.token;
                         finish_planar(mc, op, l);
                       });
                     }});
  }

  void xpoint_read(Mc& mc, LineOp op, Loc l) {
    --mc.xp_read_credits[l.xdev];
    count_xpoint(false, 1);
    mc.xp[l.xdev]->read(l.xline, 1, [this, &mc, op, l](devices::XpointDevice::Tokens tk, SimTime) {
      const std::uint64_t token = tk.front();
      after_handshake([this, &mc, op, l, token] {
      mc.data->submit({xp_port(l.xdev), layout_.line_bytes, TrafficClass::Demand, 0, {token},
                       [this, &mc, op, l, token](SimTime) {
                         release_read_credit(mc, l.xdev);
                         observe_read(op, token);
                         finish_planar(mc, op, l);
                       }});
      });
    });
  }

  /// DDR-T: XPoint raises ready, the controller answers, then data moves.
  void after_handshake(std::function<void()> fn) { engine_.schedule(engine_.now() + ctl_ + ctl_, std::move(fn)); }

  void xpoint_write(Mc& mc, LineOp op, Loc l) {
    --mc.xp_write_credits[l.xdev];
    mc.data->submit({kMcPort, layout_.line_bytes, TrafficClass::Demand, 0, {op.token}, [this, &mc, op, l](SimTime) {
                       count_xpoint(true, 1);
                       mc.xp[l.xdev]->write(l.xline, op.token, [this, &mc, op, l](SimTime) {
                         release_write_credit(mc, l.xdev);
                         finish_planar(mc, op, l);
                       });
                     }});
  }

  void finish_planar(Mc& mc, const LineOp& op, const Loc& l) {
    if (!dram_only_) {
      if (--mc.page_inflight[l.page] == 0) mc.page_inflight.erase(l.page);
      if (l.in_dram) --mc.bank_inflight[bank_index(l)];
    }
    release_key(mc, op);
    complete_line(op.req);
  }

  void release_key(Mc& mc, const LineOp& op) {
    auto it = mc.key_order.find(op.key);
    if (it == mc.key_order.end() || it->second.empty() || it->second.front() != op.seq) {
      throw std::logic_error("per-line ordering broken");
    }
    it->second.pop_front();
    if (it->second.empty()) mc.key_order.erase(it);
    kick(mc);
  }

  void count_xpoint(bool write, std::uint64_t lines) {
    (write ? stats_.xpoint_write_lines : stats_.xpoint_read_lines) += lines;
    if (opts_.record_energy_events) {
      energy_events_.push_back(
          {write ? EnergyEventKind::XpointWrite : EnergyEventKind::XpointRead, lines * layout_.line_bytes * 8});
    }
  }

  void release_read_credit(Mc& mc, std::uint32_t x) {
    mc.xp[x]->release_read();
    ++mc.xp_read_credits[x];
    kick(mc);
  }

  void release_write_credit(Mc& mc, std::uint32_t x) {
    ++mc.xp_write_credits[x];
    kick(mc);
  }

  /// Persistent XPoint write that waits for a buffer credit if needed.
  void xpoint_store(Mc& mc, std::uint32_t x, std::uint64_t xline, devices::XpointDevice::Tokens tokens,
                    std::function<void()> done) {
    auto attempt = [this, &mc, x, xline, tokens, done]() {
      if (mc.xp_write_credits[x] == 0) return false;
      --mc.xp_write_credits[x];
      count_xpoint(true, tokens.size());
      mc.xp[x]->write(xline, tokens, [this, &mc, x, done](SimTime) {
        release_write_credit(mc, x);
        done();
      });
      return true;
    };
    if (!attempt()) mc.waiters.push_back(attempt);
  }

  /// XPoint read that waits for a buffer credit; the caller releases the
  /// credit once the data has left the device.
  void xpoint_fetch(Mc& mc, std::uint32_t x, std::uint64_t xline, std::uint64_t count,
                    std::function<void(devices::XpointDevice::Tokens)> ready) {
    auto attempt = [this, &mc, x, xline, count, ready]() {
      if (mc.xp_read_credits[x] == 0) return false;
      --mc.xp_read_credits[x];
      count_xpoint(false, count);
      mc.xp[x]->read(xline, count, [ready](devices::XpointDevice::Tokens tk, SimTime) { ready(std::move(tk)); });
      return true;
    };
    if (!attempt()) mc.waiters.push_back(attempt);
  }

  // ------------------------------------------------------------ two-level

  Link& migration_link(Mc& mc) { return mc.migration ? *mc.migration : *mc.data; }

  /// Sends one migration transfer and charges it to `kind` when it rides
  /// the data route.
  void send_migration(Mc& mc, MigrationKind kind, Transfer t) {
    Link& ln = migration_link(mc);
    if (&ln == mc.data.get()) stats_.data_route_migration_bytes[static_cast<std::size_t>(kind)] += t.bytes;
    t.cls = TrafficClass::Migration;
    ln.submit(std::move(t));
  }

  void issue_two_level(Mc& mc, LineOp op, Loc l) {
    ++stats_.lookups;
    ++stats_.lookup_dram_reads;
    const SimTime t = dram_column(mc, l, false, engine_.now());
    engine_.schedule(t, [this, &mc, op, l] {
      const controller::CacheLineMeta meta = mc.meta[l.key];
      const std::uint64_t cached = mc.load_dram(l.key);
      const bool hit = meta.valid && meta.tag == l.tag;
      // The tag-check burst carries data and metadata; an Auto-rw capable
      // XPoint controller captures it when it holds a dirty victim.
      if (!hit && meta.valid && meta.dirty && mc.snarf.enabled()) {
        const devices::CapturedTransaction tx{devices::TransactionKind::Read, l.key, {cached}, 0, meta.tag};
        if (mc.snarf.observe(tx)) ++stats_.snarfed;
      }
      mc.data->submit({dram_port(l.dev), layout_.line_bytes, TrafficClass::Demand, 0, {cached},
                       [this, &mc, op, l, meta, cached](SimTime) { tag_checked(mc, op, l, meta, cached); }});
    });
  }

  void tag_checked(Mc& mc, const LineOp& op, const Loc& l, controller::CacheLineMeta meta, std::uint64_t cached) {
    const bool hit = meta.valid && meta.tag == l.tag;
    if (hit) {
      ++stats_.hits;
      if (!op.write) {
        observe_read(op, cached);
        release_key(mc, op);
        complete_line(op.req);
        return;
      }
      fill_dram(mc, l, op.token, std::nullopt, {true, true, l.tag}, [this, &mc, op] {
        release_key(mc, op);
        complete_line(op.req);
      });
      return;
    }
    ++stats_.misses;
    const bool evict = meta.valid && meta.dirty;
    auto jobs = std::make_shared<int>(evict ? 2 : 1);
    auto done = [this, &mc, op, jobs] {
      if (--*jobs == 0) release_key(mc, op);
    };
    if (evict) {
      ++stats_.dirty_evictions;
      evict_line(mc, two_level_loc(two_level_line(l.mc, l.key, meta.tag)), cached, done);
    }
    if (op.write) {
      fill_dram(mc, l, op.token, std::nullopt, {true, true, l.tag}, [this, op, done] {
        complete_line(op.req);
        done();
      });
    } else {
      miss_fill(mc, op, l, done);
    }
  }

  /// Writes one line into the DRAM cache over the data route (or, with a
  /// migration kind, as migration traffic) and updates its metadata.
  void fill_dram(Mc& mc, const Loc& l, std::uint64_t token, std::optional<MigrationKind> kind,
                 controller::CacheLineMeta meta, std::function<void()> done) {
    Transfer t{kMcPort, layout_.line_bytes, TrafficClass::Demand, 0, {token},
               [this, &mc, l, token, meta, done](SimTime) {
                 const SimTime w = dram_column(mc, l, true, engine_.now());
                 engine_.schedule(w, [&mc, l, token, meta, done] {
                   mc.dram_store[l.key] = token;
                   mc.meta[l.key] = meta;
                   done();
                 });
               }};
    if (kind) {
      send_migration(mc, *kind, std::move(t));
    } else {
      mc.data->submit(std::move(t));
    }
  }

  void evict_line(Mc& mc, const Loc& victim, std::uint64_t token, std::function<void()> done) {
    if (caps_.auto_rw) {
      // Data was captured from the tag-check burst; no channel traffic.
      ++stats_.migrations[static_cast<std::size_t>(MigrationKind::AutoRw)];
      xpoint_store(mc, victim.xdev, victim.xline, {token}, std::move(done));
      return;
    }
    ++stats_.migrations[static_cast<std::size_t>(MigrationKind::BaselineCopy)];
    send_migration(mc, MigrationKind::BaselineCopy,
                   {kMcPort, layout_.line_bytes, TrafficClass::Migration, 0, {token},
                    [this, &mc, victim, token, done](SimTime) {
                      xpoint_store(mc, victim.xdev, victim.xline, {token}, done);
                    }});
  }

  void miss_fill(Mc& mc, const LineOp& op, const Loc& l, std::function<void()> done) {
    xpoint_fetch(mc, l.xdev, l.xline, 1, [this, &mc, op, l, done](devices::XpointDevice::Tokens tk) {
      const std::uint64_t token = tk.front();
      if (caps_.reverse_write) {
        reverse_write(mc, op, l, token, done);
        return;
      }
      after_handshake([this, &mc, op, l, token, done] {
        mc.data->submit({xp_port(l.xdev), layout_.line_bytes, TrafficClass::Demand, 0, {token},
                         [this, &mc, op, l, token, done](SimTime) {
                           release_read_credit(mc, l.xdev);
                           observe_read(op, token);
                           complete_line(op.req);
                           ++stats_.migrations[static_cast<std::size_t>(MigrationKind::BaselineCopy)];
                           fill_dram(mc, l, token, MigrationKind::BaselineCopy, {true, false, l.tag}, done);
                         }});
      });
    });
  }

  /// XPoint raises ready, the controller freezes issue and confirms, then one
  /// burst both fills DRAM and serves the pending read.
  void reverse_write(Mc& mc, const LineOp& op, const Loc& l, std::uint64_t token, std::function<void()> done) {
    ++stats_.reverse_writes;
    ++stats_.migrations[static_cast<std::size_t>(MigrationKind::ReverseWrite)];
    engine_.schedule(engine_.now() + ctl_, [this, &mc, op, l, token, done] {
      freeze(mc);
      engine_.schedule(engine_.now() + ctl_, [this, &mc, op, l, token, done] {
        mc.data->submit({xp_port(l.xdev), layout_.line_bytes, TrafficClass::Demand, 0, {token},
                         [this, &mc, op, l, token, done](SimTime) {
                           release_read_credit(mc, l.xdev);
                           const SimTime w = dram_column(mc, l, true, engine_.now());
                           observe_read(op, token);
                           complete_line(op.req);
                           unfreeze(mc);
                           engine_.schedule(w, [&mc, l, token, done, tag = l.tag] {
                             mc.dram_store[l.key] = token;
                             mc.meta[l.key] = {true, false, tag};
                             done();
                           });
                         }});
      });
    });
  }

  void freeze(Mc& mc) {
    if (mc.frozen++ == 0) {
      mc.frozen_since = engine_.now();
      ++stats_.freezes;
    }
  }

  void unfreeze(Mc& mc) {
    if (--mc.frozen == 0) {
      stats_.frozen_time += engine_.now() - mc.frozen_since;
      kick(mc);
    }
  }

  // ------------------------------------------------------ planar migration

  MigrationKind planar_kind() const {
    if (caps_.swap) return MigrationKind::Swap;
    if (caps_.auto_rw) return MigrationKind::AutoRw;
    return MigrationKind::BaselineCopy;
  }

  void heat(Mc& mc, const Loc& l) {
    auto& g = mc.groups[l.local_group];
    if (!g.touch(l.slot, engine_.now(), hot_) || mc.group_busy[l.local_group]) return;
    mc.group_busy[l.local_group] = 1;
    Task task;
    task.t.id = next_task_++;
    task.t.kind = planar_kind();
    task.t.created = engine_.now();
    task.t.size = layout_.page_bytes;
    task.local_group = l.local_group;
    task.hot_slot = l.slot;
    mc.pending.push_back(std::move(task));
  }

  std::uint64_t global_page(const Mc& mc, std::uint64_t local_group, std::uint64_t slot) const {
    const std::uint64_t group = local_group * nmc_ + static_cast<std::uint64_t>(mc.id);
    return slot * layout_.dram_pages() + group;
  }

  void launch(Mc& mc) {
    Task task = std::move(mc.pending.front());
    mc.pending.pop_front();
    auto& g = mc.groups[task.local_group];
    if (g.in_dram(task.hot_slot)) {
      mc.group_busy[task.local_group] = 0;
      return;
    }
    task.cold_slot = g.dram_resident();
    place_dram_page(task.dram, task.local_group);
    task.dram.mc = static_cast<std::size_t>(mc.id);
    Loc x;
    x.local_group = task.local_group;
    xpoint_frame(x, g.frame_of(task.hot_slot), 0);
    task.xdev = x.xdev;
    task.xline = x.xline;
    for (auto s : {task.hot_slot, task.cold_slot}) {
      const std::uint64_t p = global_page(mc, task.local_group, s);
      task.t.locked.push_back({p * layout_.page_bytes, (p + 1) * layout_.page_bytes});
    }
    task.t.src = {controller::DeviceKind::Xpoint, task.xdev, task.xline};
    task.t.dst = {controller::DeviceKind::Dram, task.dram.dev, task.local_group * lpp_};
    if (task.t.kind == MigrationKind::Swap) task.t.bank_lock = controller::BankRef{task.dram.dev, task.dram.bank};
    task.t.state = controller::MigrationState::Active;
    task.draining = true;
    mc.active.push_back(std::move(task));
    start_drained(mc);
  }

  void start_drained(Mc& mc) {
    for (auto& task : mc.active) {
      if (!task.draining) continue;
      bool busy = false;
      for (auto s : {task.hot_slot, task.cold_slot}) {
        busy = busy || mc.page_inflight.count(global_page(mc, task.local_group, s)) > 0;
      }
      if (task.t.bank_lock) {
        busy = busy || mc.bank_inflight[bank_index(task.dram)] > 0;
        // At most one running migration per DRAM bank.
        for (const auto& other : mc.active) {
          busy = busy || (&other != &task && !other.draining && other.t.bank_lock == task.t.bank_lock);
        }
      }
      if (busy || mc.xp_read_credits[task.xdev] == 0 || mc.xp_write_credits[task.xdev] == 0) continue;
      --mc.xp_read_credits[task.xdev];
      --mc.xp_write_credits[task.xdev];
      task.draining = false;
      ++stats_.migrations[static_cast<std::size_t>(task.t.kind)];
      if (task.t.kind == MigrationKind::Swap) {
        begin_swap(mc, task);
      } else {
        begin_copy(mc, task);
      }
    }
  }

  std::vector<std::uint64_t> dram_page_tokens(const Mc& mc, const Task& task) const {
    std::vector<std::uint64_t> out(lpp_);
    for (std::uint64_t o = 0; o < lpp_; ++o) out[o] = mc.load_dram(task.local_group * lpp_ + o);
    return out;
  }

  void store_dram_page(Mc& mc, const Task& task, const std::vector<std::uint64_t>& tokens) {
    for (std::uint64_t o = 0; o < lpp_; ++o) mc.dram_store[task.local_group * lpp_ + o] = tokens[o];
  }

  SimTime dram_page_burst(Mc& mc, const Task& task, bool write) {
    SimTime done = engine_.now();
    for (std::uint64_t o = 0; o < lpp_; ++o) done = max(done, dram_column(mc, task.dram, write, engine_.now()));
    return done;
  }

  /// BaselineCopy and AutoRw: both pages travel through the controller,
  /// except that an Auto-rw XPoint writes the snarfed DRAM page itself.
  void begin_copy(Mc& mc, Task& task) {
    Task* tp = &task;
    const std::uint64_t page = layout_.page_bytes;
    auto gather = std::make_shared<int>(2);
    auto both_read = [this, &mc, tp, gather] {
      if (--*gather > 0) return;
      send_migration(mc, tp->t.kind,
                     {kMcPort, layout_.page_bytes, TrafficClass::Migration, 0, tp->from_xpoint, [this, &mc, tp](SimTime) {
                        const SimTime w = dram_page_burst(mc, *tp, true);
                        engine_.schedule(w, [this, &mc, tp] {
                          store_dram_page(mc, *tp, tp->from_xpoint);
                          dram_side_done(mc, tp);
                        });
                      }});
      auto write_back = [this, &mc, tp] {
        count_xpoint(true, lpp_);
        mc.xp[tp->xdev]->write(tp->xline, tp->from_dram, [this, &mc, tp](SimTime) {
          release_write_credit(mc, tp->xdev);
          xpoint_side_done(mc, tp);
        });
      };
      if (tp->t.kind == MigrationKind::AutoRw) {
        write_back();
      } else {
        send_migration(mc, tp->t.kind,
                       {kMcPort, layout_.page_bytes, TrafficClass::Migration, 0, tp->from_dram,
                        [write_back](SimTime) { write_back(); }});
      }
    };

    const SimTime r = dram_page_burst(mc, task, false);
    engine_.schedule(r, [this, &mc, tp, page, both_read] {
      tp->from_dram = dram_page_tokens(mc, *tp);
      send_migration(mc, tp->t.kind,
                     {dram_port(tp->dram.dev), page, TrafficClass::Migration, 0, tp->from_dram,
                      [this, &mc, tp, both_read](SimTime) {
                        if (tp->t.kind == MigrationKind::AutoRw) {
                          const devices::CapturedTransaction tx{devices::TransactionKind::Read, tp->xline,
                                                                tp->from_dram, 0, 0};
                          if (auto cap = mc.snarf.observe(tx)) {
                            ++stats_.snarfed;
                            tp->from_dram = cap->data;
                          }
                        }
                        both_read();
                      }});
    });
    count_xpoint(false, lpp_);
    mc.xp[task.xdev]->read(task.xline, lpp_, [this, &mc, tp, page, both_read](devices::XpointDevice::Tokens tk, SimTime) {
      tp->from_xpoint = std::move(tk);
      after_handshake([this, &mc, tp, page, both_read] {
        send_migration(mc, tp->t.kind,
                       {xp_port(tp->xdev), page, TrafficClass::Migration, 0, tp->from_xpoint,
                        [this, &mc, tp, both_read](SimTime) {
                          release_read_credit(mc, tp->xdev);
                          both_read();
                        }});
      });
    });
  }


  void record(Mc& mc, const Task* tp, controller::HandshakeStep s, SimTime at) {
    mc.handshake.push_back({tp->t.id, s, at});
  }

  /// SWAP-CMD: preset the bank, delegate the page exchange to the XPoint
  /// controller's DDR sequence generator over the memory route, then
  /// ready/confirm.
  void begin_swap(Mc& mc, Task& task) {
    Task* tp = &task;
    const SimTime now = engine_.now();
    record(mc, tp, controller::HandshakeStep::Preset, now);
    note_bank_command(mc, bank_index(task.dram), mc.dram[task.dram.dev].preset(task.dram.bank, task.dram.row, now));
    send_migration(mc, MigrationKind::Swap,
                   {kMcPort, controller::kSwapCmdBytes, TrafficClass::Migration, 0, {}, [this, &mc, tp](SimTime at) {
                      record(mc, tp, controller::HandshakeStep::SwapCmd, at);
                      swap_at_xpoint(mc, tp);
                    }});
  }

  void swap_at_xpoint(Mc& mc, Task* tp) {
    auto gather = std::make_shared<int>(2);
    auto exchange = [this, &mc, tp, gather] {
      if (--*gather > 0) return;
      mc.memory->submit({xp_port(tp->xdev), layout_.page_bytes, TrafficClass::Migration, 0, tp->from_xpoint,
                         [this, &mc, tp](SimTime) {
                           release_read_credit(mc, tp->xdev);
                           const auto seq = write_half(mc, tp);
                           const SimTime w = devices::replay(mc.dram[tp->dram.dev], seq, engine_.now());
                           count_columns(seq.size());
                           note_bank_command(mc, bank_index(tp->dram), w - mc.dram[tp->dram.dev].timing().tCL);
                           record(mc, tp, controller::HandshakeStep::DramWrite, w);
                           engine_.schedule(w, [this, &mc, tp] {
                             store_dram_page(mc, *tp, tp->from_xpoint);
                             swap_ready(mc, tp);
                           });
                         }});
      count_xpoint(true, lpp_);
      mc.xp[tp->xdev]->write(tp->xline, tp->from_dram, [this, &mc, tp](SimTime) {
        release_write_credit(mc, tp->xdev);
        xpoint_side_done(mc, tp);
      });
    };
    count_xpoint(false, lpp_);
    mc.xp[tp->xdev]->read(tp->xline, lpp_, [tp, exchange](devices::XpointDevice::Tokens tk, SimTime) {
      tp->from_xpoint = std::move(tk);
      exchange();
    });
    const auto seq = read_half(mc, tp);
    const SimTime r = devices::replay(mc.dram[tp->dram.dev], seq, engine_.now());
    count_columns(seq.size());
    note_bank_command(mc, bank_index(tp->dram), r - mc.dram[tp->dram.dev].timing().tCL);
    record(mc, tp, controller::HandshakeStep::DramRead, r);
    engine_.schedule(r, [this, &mc, tp, exchange] {
      tp->from_dram = dram_page_tokens(mc, *tp);
      mc.memory->submit({dram_port(tp->dram.dev), layout_.page_bytes, TrafficClass::Migration, 0, tp->from_dram,
                         [exchange](SimTime) { exchange(); }});
    });
  }

  std::vector<devices::DdrSeqCommand> generate(Mc& mc, Task* tp) {
    const devices::SwapGranule g{tp->dram.bank, tp->dram.row, 0, layout_.page_bytes, layout_.line_bytes};
    return devices::ddr_seq_generate(g, mc.dram[tp->dram.dev].bank(tp->dram.bank));
  }

  std::vector<devices::DdrSeqCommand> read_half(Mc& mc, Task* tp) {
    auto seq = generate(mc, tp);
    seq.resize(seq.size() / 2);
    return seq;
  }

  std::vector<devices::DdrSeqCommand> write_half(Mc& mc, Task* tp) {
    auto seq = generate(mc, tp);
    seq.erase(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(seq.size() / 2));
    return seq;
  }

  void count_columns(std::size_t n) {
    stats_.dram_columns += n;
    if (opts_.record_energy_events) {
      for (std::size_t i = 0; i < n; ++i) energy_events_.push_back({EnergyEventKind::DramColumn, layout_.line_bytes * 8});
    }
  }

  /// DDR-T: once the DDR sequence has finished on the DRAM side, XPoint
  /// raises ready and the controller confirms.
  void swap_ready(Mc& mc, Task* tp) {
    engine_.schedule(engine_.now() + ctl_, [this, &mc, tp] {
      record(mc, tp, controller::HandshakeStep::Ready, engine_.now());
      engine_.schedule(engine_.now() + ctl_, [this, &mc, tp] {
        record(mc, tp, controller::HandshakeStep::Confirm, engine_.now());
        dram_side_done(mc, tp);
      });
    });
  }

  /// The hot page is now in DRAM: switch residency and release the bank and
  /// the hot page. The evicted page stays locked until its XPoint copy is
  /// durable.
  void dram_side_done(Mc& mc, Task* tp) {
    tp->dram_done = true;
    auto& g = mc.groups[tp->local_group];
    g.exchange(tp->hot_slot, tp->cold_slot);
    g.reset_counter(tp->hot_slot);
    g.reset_counter(tp->cold_slot);
    tp->t.bank_lock.reset();
    tp->t.locked.erase(tp->t.locked.begin());
    if (tp->xpoint_done) {
      finish_migration(mc, tp);
    } else {
      kick(mc);
    }
  }

  void xpoint_side_done(Mc& mc, Task* tp) {
    tp->xpoint_done = true;
    if (tp->dram_done) finish_migration(mc, tp);
  }

  void finish_migration(Mc& mc, Task* tp) {
    mc.group_busy[tp->local_group] = 0;
    mc.active.remove_if([tp](const Task& t) { return &t == tp; });
    kick(mc);
  }

  Config cfg_;
  Platform platform_;
  MemoryMode mode_;
  SystemOptions opts_;
  Capabilities caps_;
  controller::CapacityLayout layout_;
  controller::HotnessPolicy hot_;
  bool dram_only_{false};
  std::uint64_t nmc_{0}, ndram_{0}, dram_devs_{0}, nbanks_{0}, nx_{0}, lpp_{0}, ratio_{0}, dram_pages_per_mc_{0};
  SimTime ctl_;

  Engine engine_;
  std::vector<std::unique_ptr<Mc>> mcs_;
  std::vector<workload::MemRequest> requests_;
  std::vector<ReqProgress> progress_;
  std::size_t next_{0};
  std::uint32_t outstanding_{0};
  bool inject_scheduled_{false};
  std::uint64_t next_seq_{0};
  std::uint64_t next_task_{0};
  SystemStats stats_;
  std::vector<ReadObservation> reads_;
  std::vector<EnergyEvent> energy_events_;
};

}  // namespace ohmsim
