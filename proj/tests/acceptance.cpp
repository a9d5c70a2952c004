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

// Acceptance suite: prints PASS/FAIL per criterion and exits non-zero if any
// criterion fails. Tolerances are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ddr_oracle.hpp"
#include "ohmsim/ohmsim.hpp"

namespace {

using namespace ohmsim;

constexpr double kWomGoodputTolerance = 0.01;  // absolute, on the 2/3 ratio
constexpr double kBerTolerance = 0.25;         // relative, per calibration point
constexpr double kBerLimit = 1e-15;
constexpr double kOracleGap = 0.20;            // Ohm-base over Oracle, migration-heavy
constexpr double kLayoutTolerance = 1.0;       // MRRs
constexpr std::size_t kDdrSequences = 1000;
constexpr std::uint64_t kShadowRequests = 100000;
constexpr const char* kOrderingWorkloadSize = "n=50000";

struct Outcome {
  bool pass{true};
  std::string detail;
};

// Collects failures with a message; the first few are kept for the report.
struct Check {
  Outcome out;
  int failures{0};
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    out.pass = false;
    if (++failures <= 4) out.detail += (out.detail.empty() ? "" : "; ") + what;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1. WOM codec
Outcome wom_codec() {
  const auto t0 = std::chrono::steady_clock::now();
  Check c;
  c.expect(optical::wom_first_write(0b10).str() == "010", "first write of 10 is not 010");
  for (std::uint8_t a = 0; a < 4; ++a) {
    for (std::uint8_t b = 0; b < 4; ++b) {
      const auto first = optical::wom_first_write(a);
      const auto second = optical::wom_second_write(first, b);
      const std::string pair = std::to_string(a) + "->" + std::to_string(b);
      c.expect(optical::wom_decode(first).data == a, "first decode " + pair);
      c.expect(optical::wom_decode(second).data == b, "second decode " + pair);
      for (int i = 0; i < 3; ++i) c.expect(second.cells[i] >= first.cells[i], "cell cleared " + pair);
    }
  }
  const double s = seconds_since(t0);
  c.expect(s < 1.0, "runtime " + fmt("%.3f s", s));
  if (c.out.pass) c.out.detail = "16/16 pairs, 10 -> 010, " + fmt("%.4f s", s);
  return c.out;
}

// 2. Light arithmetic worked example
Outcome light_example() {
  using namespace optical;
  const auto t0 = std::chrono::steady_clock::now();
  Check c;
  auto stream = [](std::vector<Fraction> v) { return LightSymbolStream(0, std::move(v)); };
  const auto mc_bits = bits_from_string("00110");
  const auto xp_bits = bits_from_string("10101");
  const auto s1 = modulate(LightSymbolStream::source(5), mc_bits, ModulationScheme::HalfCoupledZero);
  const auto det = hc_detect(s1, kHalfCoupledThreshold);
  const auto s3 = modulate(det.passed, xp_bits, ModulationScheme::Standard);
  c.expect(s1 == stream({kHalf, kHalf, kFull, kFull, kHalf}), "MC stream is not 1/2 1/2 1 1 1/2");
  c.expect(det.passed == stream({kQuarter, kQuarter, kHalf, kHalf, kQuarter}), "pass-through is not 1/4 1/4 1/2 1/2 1/4");
  c.expect(s3 == stream({kQuarter, kZero, kHalf, kZero, kQuarter}), "XPoint stream is not 1/4 0 1/2 0 1/4");
  c.expect(det.bits == mc_bits, "half-coupled receiver misdecodes");
  c.expect(fc_detect(s3, kStrictlyPositive) == xp_bits, "full receiver misdecodes");
  const double s = seconds_since(t0);
  c.expect(s < 1.0, "runtime " + fmt("%.3f s", s));
  if (c.out.pass) c.out.detail = "1/4 0 1/2 0 1/4, both receivers decode, " + fmt("%.4f s", s);
  return c.out;
}

// 3. WOM goodput on the data route of an Ohm-WOM swap dual route.
Outcome wom_goodput() {
  Check c;
  Config cfg;
  const auto route = channel::establish_dual_route(0, {channel::Endpoint::Kind::Controller, 0},
                                                   {channel::Endpoint::Kind::Dram, 1},
                                                   {channel::Endpoint::Kind::Xpoint, 2},
                                                   channel::MigrationFunction::Swap, Platform::OhmWom, cfg.power);
  c.expect(route.multiplexing == channel::Multiplexing::Wom, "Ohm-WOM swap route is not WOM multiplexed");
  Engine engine;
  const auto params = cfg.optical_link();
  channel::Link link(engine, params, "data");
  link.set_mux_probe([&route] { return route.multiplexing; });
  constexpr std::uint64_t kBits = 1'000'000;
  constexpr std::uint64_t kChunkBytes = 125;
  for (std::uint64_t sent = 0; sent < kBits; sent += kChunkBytes * 8) {
    link.submit({1, kChunkBytes, channel::TrafficClass::Demand, 0, {}, {}});
  }
  engine.run();
  const double busy_s = static_cast<double>(link.stats().busy_demand.ps) * 1e-12;
  const double goodput = static_cast<double>(kBits) / busy_s;
  const double nominal = static_cast<double>(params.width_bits) * static_cast<double>(params.frequency_mhz) * 1e6;
  const double ratio = goodput / nominal;
  c.expect(link.stats().bytes_demand * 8 == kBits, "payload bits not conserved");
  c.expect(std::abs(ratio - 2.0 / 3.0) <= kWomGoodputTolerance, "goodput ratio " + fmt("%.4f", ratio));
  c.out.detail = "goodput/nominal = " + fmt("%.4f", ratio) + " over 10^6 bits (target 0.6667 +/- 0.01)";
  return c.out;
}

// 4. DDR timing against the brute-force calculator
Outcome ddr_oracle() {
  Check c;
  std::mt19937_64 rng(20260401);
  std::size_t commands = 0;
  for (std::size_t i = 0; i < kDdrSequences; ++i) {
    const std::size_t banks = 1 + rng() % 8;
    const auto seq = testing::random_legal_sequence(rng, banks, 1 + rng() % 80);
    commands += seq.size();
    const auto [fsm, oracle] = testing::compare_sequence(seq, banks);
    c.expect(fsm == oracle, "sequence " + std::to_string(i) + ": " + std::to_string(fsm) + " vs " + std::to_string(oracle));
  }
  if (c.out.pass) c.out.detail = "1000 sequences, " + std::to_string(commands) + " commands, exact";
  return c.out;
}

// 5. Start-Gap
Outcome start_gap() {
  Check c;
  std::mt19937_64 rng(5);
  std::size_t states = 0;
  for (std::uint64_t n = 1; n <= 16; ++n) {
    devices::StartGap sg(n, 1);
    std::map<std::uint64_t, std::uint64_t> phys;
    std::vector<std::uint64_t> shadow(n);
    for (std::uint64_t l = 0; l < n; ++l) {
      shadow[l] = rng();
      phys[sg.translate(l)] = shadow[l];
    }
    // Two full cycles of the start register: n rotations of n + 1 moves each.
    for (std::uint64_t step = 0; step < 2 * n * (n + 1); ++step) {
      ++states;
      std::set<std::uint64_t> image;
      for (std::uint64_t l = 0; l < n; ++l) {
        const auto p = sg.translate(l);
        c.expect(p <= n && p != sg.gap_index(), "N=" + std::to_string(n) + " maps onto the gap");
        image.insert(p);
        c.expect(phys.count(p) && phys.at(p) == shadow[l], "N=" + std::to_string(n) + " lost data");
      }
      c.expect(image.size() == n, "N=" + std::to_string(n) + " not injective");
      const auto mv = sg.rotate();
      phys[mv.to] = phys[mv.from];
      phys.erase(mv.from);
    }
    c.expect(sg.start_index() == 0 && sg.gap_index() == n, "N=" + std::to_string(n) + " did not return to the start");
  }
  if (c.out.pass) c.out.detail = std::to_string(states) + " states over N=1..16, bijective, data invariant";
  return c.out;
}

// 6. Two-level optical migration kept off the data route
Outcome data_route_migration() {
  Check c;
  experiment::ExperimentConfig ec;
  ec.mode = MemoryMode::TwoLevel;
  ec.synthetic = "migration-heavy,n=50000";
  std::map<Platform, std::uint64_t> bytes;
  std::uint64_t misses = 0;
  for (auto p : {Platform::OhmBase, Platform::OhmWom, Platform::OhmBw}) {
    ec.platform = p;
    const auto r = experiment::run_experiment(ec);
    for (const auto& m : r.migrations) bytes[p] += m.data_route_bytes;
    misses = r.misses;
  }
  c.expect(bytes[Platform::OhmWom] == 0, "Ohm-WOM carried " + std::to_string(bytes[Platform::OhmWom]) + " B");
  c.expect(bytes[Platform::OhmBw] == 0, "Ohm-BW carried " + std::to_string(bytes[Platform::OhmBw]) + " B");
  c.expect(bytes[Platform::OhmBase] > 0, "Ohm-base carried no migration bytes");
  c.out.detail = "data-route migration bytes: base " + std::to_string(bytes[Platform::OhmBase]) + ", wom " +
                 std::to_string(bytes[Platform::OhmWom]) + ", bw " + std::to_string(bytes[Platform::OhmBw]) + " (" +
                 std::to_string(misses) + " misses)";
  return c.out;
}

// Runs shared by criteria 7 and 11.
struct OrderingRun {
  std::string workload;
  MemoryMode mode;
  Platform platform;
  metrics::MetricsReport report;
};

std::vector<OrderingRun> ordering_runs() {
  std::vector<experiment::ExperimentConfig> cfgs;
  std::vector<OrderingRun> runs;
  const Platform order[] = {Platform::Oracle, Platform::OhmBw, Platform::OhmWom, Platform::AutoRw, Platform::OhmBase};
  for (const auto& w : workload::bundled_workloads()) {
    for (auto m : {MemoryMode::Planar, MemoryMode::TwoLevel}) {
      for (auto p : order) {
        experiment::ExperimentConfig ec;
        ec.platform = p;
        ec.mode = m;
        ec.synthetic = w + "," + kOrderingWorkloadSize;
        // Latency ordering compares against the all-DRAM Oracle.
        if (p == Platform::Oracle) ec.config.oracle_variant = OracleVariant::DramOnly;
        cfgs.push_back(ec);
        runs.push_back({w, m, p, {}});
      }
    }
  }
  const auto reports = experiment::run_sweep(cfgs);
  for (std::size_t i = 0; i < runs.size(); ++i) runs[i].report = reports[i];
  return runs;
}

const metrics::MetricsReport& find(const std::vector<OrderingRun>& runs, const std::string& w, MemoryMode m,
                                   Platform p) {
  for (const auto& r : runs) {
    if (r.workload == w && r.mode == m && r.platform == p) return r.report;
  }
  throw std::logic_error("missing run");
}

// 7. Platform latency ordering and the Oracle gap
Outcome latency_ordering(const std::vector<OrderingRun>& runs) {
  Check c;
  int holds = 0, total = 0;
  for (const auto& w : workload::bundled_workloads()) {
    for (auto m : {MemoryMode::Planar, MemoryMode::TwoLevel}) {
      auto lat = [&](Platform p) { return find(runs, w, m, p).latency.mean_ns; };
      const double oracle = lat(Platform::Oracle), bw = lat(Platform::OhmBw), wom = lat(Platform::OhmWom),
                   arw = lat(Platform::AutoRw), base = lat(Platform::OhmBase);
      // Every Ohm variant is reported as a strict improvement over Ohm-base.
      const bool ok = oracle <= bw && bw <= wom && wom <= arw && arw < base && wom < base && bw < base;
      ++total;
      holds += ok;
      std::ostringstream os;
      os.precision(1);
      os << std::fixed << w << "/" << to_string(m) << ": oracle " << oracle << " bw " << bw << " wom " << wom
         << " auto-rw " << arw << " base " << base;
      c.expect(ok, os.str());
    }
  }
  std::string gaps;
  for (auto m : {MemoryMode::Planar, MemoryMode::TwoLevel}) {
    experiment::ExperimentConfig ec;
    ec.mode = m;
    ec.synthetic = "migration-heavy,n=50000";
    ec.platform = Platform::Oracle;
    const double oracle = experiment::run_experiment(ec).latency.mean_ns;
    ec.platform = Platform::OhmBase;
    const double base = experiment::run_experiment(ec).latency.mean_ns;
    const double gap = base / oracle - 1.0;
    gaps += std::string(gaps.empty() ? "" : ", ") + std::string(to_string(m)) + " " + fmt("%.1f%%", 100 * gap);
    c.expect(gap >= kOracleGap, "migration-heavy " + std::string(to_string(m)) + " gap " + fmt("%.1f%%", 100 * gap));
  }
  const std::string summary =
      "ordering holds on " + std::to_string(holds) + "/" + std::to_string(total) + "; base over oracle: " + gaps;
  c.out.detail = c.out.pass ? summary : summary + "; " + c.out.detail;
  return c.out;
}

// 8. BER calibration
Outcome ber_calibration() {
  Check c;
  const Config cfg;
  const auto points = optical::default_calibration_points();
  const auto model = optical::calibrate_ber(points, cfg.power);
  double worst_err = 0;
  for (const auto& p : points) {
    const double err = std::abs(model.ber(p.received_mw(cfg.power)) - p.target_ber) / p.target_ber;
    worst_err = std::max(worst_err, err);
    c.expect(err <= kBerTolerance, p.name + " off by " + fmt("%.1f%%", 100 * err));
  }
  double prev = model.ber(0.001);
  for (int i = 2; i <= 2000; ++i) {
    const double b = model.ber(0.001 * i);
    c.expect(b < prev, "not strictly decreasing at " + fmt("%.3f mW", 0.001 * i));
    prev = b;
  }
  double worst_ber = 0;
  for (auto pl : kAllPlatforms) {
    for (const auto& e : metrics::ber_estimates(capabilities(pl), model, cfg.power)) {
      worst_ber = std::max(worst_ber, e.ber);
      c.expect(e.ber < kBerLimit, std::string(to_string(pl)) + " " + e.function + " BER " + fmt("%.2e", e.ber));
    }
  }
  if (c.out.pass) {
    c.out.detail = "A=" + fmt("%.3e", model.a()) + " k=" + fmt("%.3f", model.k()) + ", worst point error " +
                   fmt("%.2f%%", 100 * worst_err) + ", worst platform BER " + fmt("%.2e", worst_ber);
  }
  return c.out;
}

// 9. MRR counts
Outcome mrr_counts() {
  Check c;
  const Config cfg;
  struct Row {
    Platform p;
    MemoryMode m;
    std::uint64_t mod, det;
  };
  const Row rows[] = {{Platform::OhmBase, MemoryMode::Planar, 2112, 2112},
                      {Platform::OhmBw, MemoryMode::Planar, 2176, 3136},
                      {Platform::OhmBase, MemoryMode::TwoLevel, 2368, 2368},
                      {Platform::OhmBw, MemoryMode::TwoLevel, 2368, 4928}};
  for (const auto& r : rows) {
    const auto got = metrics::cost_estimate(cfg, r.p, r.m, metrics::kReferenceDevices).mrrs;
    c.expect(got.modulators == r.mod && got.detectors == r.det,
             std::string(to_string(r.p)) + "/" + std::string(to_string(r.m)) + " got " +
                 std::to_string(got.modulators) + "/" + std::to_string(got.detectors));
  }
  const double general = channel::mrr_layout(channel::LayoutMode::General).total();
  const double planar = channel::mrr_layout(channel::LayoutMode::Planar).total();
  const double two = channel::mrr_layout(channel::LayoutMode::TwoLevel).total();
  // "58% fewer" leaves 42% of the general layout, "42% fewer" leaves 58%.
  c.expect(std::abs(planar - 0.42 * general) <= kLayoutTolerance, "planar layout " + fmt("%.0f", planar));
  c.expect(std::abs(two - 0.58 * general) <= kLayoutTolerance, "two-level layout " + fmt("%.0f", two));
  if (c.out.pass) {
    c.out.detail = "4/4 rows exact; layouts " + fmt("%.0f", planar) + " and " + fmt("%.0f", two) + " of " +
                   fmt("%.0f", general) + " rings (" + fmt("%.0f%%", 100 * (1 - planar / general)) + " and " +
                   fmt("%.0f%%", 100 * (1 - two / general)) + " fewer)";
  }
  return c.out;
}

// 10. Shadow memory over randomized interleavings
Outcome shadow_memory() {
  Check c;
  std::mt19937_64 rng(777);
  std::uint64_t reads_checked = 0, lines_checked = 0, runs = 0;
  for (auto mode : {MemoryMode::Planar, MemoryMode::TwoLevel}) {
    for (auto p : kAllPlatforms) {
      // Randomize the interleaving: window depth, migration pressure, seeds.
      Config cfg;
      cfg.max_outstanding = std::vector<std::uint32_t>{4, 32, 128, 512}[rng() % 4];
      cfg.hot_threshold = static_cast<std::uint32_t>(2 + rng() % 30);
      cfg.max_migrations = static_cast<std::uint32_t>(1 + rng() % 4);
      cfg.start_gap_psi = 1 + rng() % 100;
      auto spec = workload::parse_synthetic("migration-heavy,read_ratio=0.6,footprint=4194304");
      spec.requests = kShadowRequests;
      spec.seed = rng();
      const auto reqs = workload::gen_synthetic(spec);

      MemorySystem sys(cfg, p, mode, {true, false});
      sys.load(reqs);
      sys.run();
      ++runs;

      // Flat reference memory; write tokens are request id + 1.
      const std::uint64_t lb = sys.layout().line_bytes;
      std::map<std::uint64_t, std::uint64_t> image;
      std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> expected;
      for (const auto& r : reqs) {
        for (std::uint64_t line = r.address / lb; line <= (r.address + r.size - 1) / lb; ++line) {
          if (r.is_read()) {
            auto it = image.find(line);
            expected[{r.id, line}] = it == image.end() ? 0 : it->second;
          } else {
            image[line] = r.id + 1;
          }
        }
      }
      const std::string tag = std::string(to_string(p)) + "/" + std::string(to_string(mode));
      std::uint64_t bad_reads = 0, bad_lines = 0;
      for (const auto& o : sys.reads()) {
        ++reads_checked;
        auto it = expected.find({o.request, o.line});
        if (it == expected.end() || it->second != o.token) ++bad_reads;
      }
      for (std::uint64_t line = 0; line < sys.total_lines(); ++line) {
        auto it = image.find(line);
        ++lines_checked;
        if (sys.peek(line) != (it == image.end() ? 0 : it->second)) ++bad_lines;
      }
      c.expect(sys.reads().size() == expected.size(), tag + " recorded " + std::to_string(sys.reads().size()) +
                                                          " reads of " + std::to_string(expected.size()));
      c.expect(bad_reads == 0, tag + ": " + std::to_string(bad_reads) + " stale reads");
      c.expect(bad_lines == 0, tag + ": " + std::to_string(bad_lines) + " wrong lines in the final image");
    }
  }
  if (c.out.pass) {
    c.out.detail = std::to_string(runs) + " runs x 10^5 requests: " + std::to_string(reads_checked) +
                   " reads and " + std::to_string(lines_checked) + " final lines exact";
  }
  return c.out;
}

// 11. Energy ordering
Outcome energy_ordering(const std::vector<OrderingRun>& runs) {
  Check c;
  int applicable = 0;
  for (const auto& w : workload::bundled_workloads()) {
    for (auto m : {MemoryMode::Planar, MemoryMode::TwoLevel}) {
      const auto& wom = find(runs, w, m, Platform::OhmWom);
      const auto& base = find(runs, w, m, Platform::OhmBase);
      if (wom.run.runtime_ps >= base.run.runtime_ps) continue;
      ++applicable;
      c.expect(wom.energy.total() <= base.energy.total(),
               w + "/" + std::string(to_string(m)) + ": wom " + fmt("%.4g J", wom.energy.total()) + " > base " +
                   fmt("%.4g J", base.energy.total()));
    }
  }
  c.expect(applicable > 0, "no workload where Ohm-WOM shortens the run");
  const std::string summary = std::to_string(applicable) + " workload/mode pairs where Ohm-WOM shortens the run";
  c.out.detail = c.out.pass ? summary : summary + "; " + c.out.detail;
  return c.out;
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&failed](int n, const char* name, const std::function<Outcome()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %d: %s [%s] (%.1f s)\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  };
  report(1, "WOM codec exhaustive", wom_codec);
  report(2, "light arithmetic example", light_example);
  report(3, "WOM goodput penalty", wom_goodput);
  report(4, "DDR timing oracle", ddr_oracle);
  report(5, "Start-Gap bijectivity and data invariance", start_gap);
  report(6, "two-level migration off the data route", data_route_migration);
  std::vector<OrderingRun> runs;
  bool runs_ok = true;
  try {
    runs = ordering_runs();
  } catch (const std::exception& e) {
    runs_ok = false;
    std::printf("ordering runs failed: %s\n", e.what());
  }
  report(7, "platform latency ordering", [&] { return runs_ok ? latency_ordering(runs) : Outcome{false, "no runs"}; });
  report(8, "BER calibration", ber_calibration);
  report(9, "MRR counts", mrr_counts);
  report(10, "shadow-memory equivalence", shadow_memory);
  report(11, "energy ordering", [&] { return runs_ok ? energy_ordering(runs) : Outcome{false, "no runs"}; });
  std::printf("%d of 11 criteria passed\n", 11 - failed);
  return failed == 0 ? 0 : 1;
}
