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

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "ddr_oracle.hpp"
#include "ohmsim/devices/dram.hpp"
#include "ohmsim/devices/start_gap.hpp"
#include "ohmsim/devices/xpoint.hpp"

namespace ohmsim::devices {
namespace {

// ---- DRAM ----

TEST(Dram, ClosedBankReadIs36ns) {
  DramDevice d;
  const SimTime act = SimTime{};
  EXPECT_EQ(d.access(0, 5, false, act), nanoseconds(36));
}

TEST(Dram, RowHitReadIs11ns) {
  DramDevice d;
  d.access(0, 5, false, SimTime{});
  const SimTime t = nanoseconds(100);
  EXPECT_EQ(d.access(0, 5, false, t), t + nanoseconds(11));
}

TEST(Dram, RowConflictIs46ns) {
  DramDevice d;
  d.access(0, 5, false, SimTime{});
  const SimTime t = nanoseconds(100);
  EXPECT_EQ(d.access(0, 6, false, t), t + nanoseconds(46));
}

TEST(Dram, IllegalCommandsThrow) {
  DramDevice d;
  EXPECT_THROW(d.issue(0, DramCommand::RD, 0, SimTime{}), ProtocolViolation);
  d.issue(0, DramCommand::ACT, 1, SimTime{});
  EXPECT_THROW(d.issue(0, DramCommand::RD, 2, nanoseconds(30)), ProtocolViolation);   // wrong row
  EXPECT_THROW(d.issue(0, DramCommand::RD, 1, nanoseconds(10)), ProtocolViolation);   // before tRCD
  EXPECT_THROW(d.issue(1, DramCommand::ACT, 1, nanoseconds(2)), ProtocolViolation);   // inside tRRD
  EXPECT_NO_THROW(d.issue(1, DramCommand::ACT, 1, nanoseconds(5)));
  EXPECT_THROW(d.issue(0, DramCommand::ACT, 1, nanoseconds(50)), ProtocolViolation);  // already open
}

TEST(Dram, PresetOpensRow) {
  DramDevice d;
  const SimTime ready = d.preset(2, 9, SimTime{});
  EXPECT_EQ(ready, nanoseconds(25));
  EXPECT_TRUE(d.row_hit(2, 9));
  EXPECT_EQ(d.preset(2, 9, nanoseconds(40)), nanoseconds(40));
}

TEST(Dram, RandomSequencesMatchBruteForce) {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 300; ++i) {
    const auto seq = testing::random_legal_sequence(rng, 8, 1 + rng() % 60);
    const auto [fsm, oracle] = testing::compare_sequence(seq, 8);
    ASSERT_EQ(fsm, oracle) << "sequence " << i;
  }
}

// ---- Start-Gap ----

TEST(StartGap, FreshStateIsIdentity) {
  StartGap sg(8);
  for (std::uint64_t l = 0; l < 8; ++l) EXPECT_EQ(sg.translate(l), l);
  EXPECT_THROW(sg.translate(8), std::out_of_range);
}

// Exhaustive: every reachable state for N <= 16 over two full rotation
// cycles is a bijection onto [0, N] minus the gap.
TEST(StartGap, BijectiveAtEveryState) {
  for (std::uint64_t n = 1; n <= 16; ++n) {
    StartGap sg(n, 1);
    for (std::uint64_t step = 0; step < 2 * n * (n + 1) + 3; ++step) {
      std::set<std::uint64_t> image;
      for (std::uint64_t l = 0; l < n; ++l) {
        const auto p = sg.translate(l);
        ASSERT_LE(p, n);
        ASSERT_NE(p, sg.gap_index());
        image.insert(p);
      }
      ASSERT_EQ(image.size(), n);
      sg.rotate();
    }
  }
}

TEST(StartGap, RotationEveryPsiWrites) {
  StartGap sg(10, 100);
  int rotations = 0;
  for (int i = 1; i <= 1000; ++i) {
    if (sg.on_write()) {
      ++rotations;
      EXPECT_EQ(i % 100, 0);
    }
  }
  EXPECT_EQ(rotations, 10);
}

TEST(StartGap, FullCycleAdvancesStart) {
  for (std::uint64_t n = 1; n <= 16; ++n) {
    StartGap sg(n, 1);
    for (std::uint64_t i = 0; i < n + 1; ++i) sg.rotate();
    EXPECT_EQ(sg.start_index(), 1 % n);
    EXPECT_EQ(sg.gap_index(), n);
  }
}

// Shadow memory: data moved as instructed keeps every logical value.
TEST(StartGap, DataInvariantAcrossRotations) {
  std::mt19937_64 rng(11);
  for (std::uint64_t n = 1; n <= 16; ++n) {
    StartGap sg(n, 1);
    std::map<std::uint64_t, std::uint64_t> phys;
    std::vector<std::uint64_t> shadow(n);
    for (std::uint64_t l = 0; l < n; ++l) {
      shadow[l] = rng();
      phys[sg.translate(l)] = shadow[l];
    }
    for (std::uint64_t step = 0; step < 3 * (n + 1); ++step) {
      const auto mv = sg.rotate();
      phys[mv.to] = phys[mv.from];
      phys.erase(mv.from);
      for (std::uint64_t l = 0; l < n; ++l) ASSERT_EQ(phys.at(sg.translate(l)), shadow[l]);
    }
  }
}

TEST(StartGap, SingleHotLineWearSpreads) {
  const std::uint64_t n = 8, psi = 4, k = 40;
  XpointParams p;
  p.start_gap_psi = psi;
  Engine e;
  XpointDevice x(e, n, p);
  const std::uint64_t total = k * psi * (n + 1) * n;
  for (std::uint64_t i = 0; i < total; ++i) {
    while (!x.can_accept_write()) e.run_until(e.now() + nanoseconds(763));
    x.write(3, i + 1);
  }
  e.run();
  std::uint64_t sum = 0, worst = 0;
  for (std::uint64_t ph = 0; ph <= n; ++ph) {
    sum += x.physical_writes(ph);
    worst = std::max(worst, x.physical_writes(ph));
  }
  const double fair = static_cast<double>(sum) / static_cast<double>(n + 1);
  EXPECT_LE(static_cast<double>(worst), fair * 1.25);
  EXPECT_EQ(x.peek(3), total);
}

// ---- XPoint ----

struct XpointFixture : ::testing::Test {
  Engine e;
};

TEST_F(XpointFixture, ReadReadyAfter190ns) {
  XpointDevice x(e, 64);
  SimTime ready;
  x.read(5, [&](std::uint64_t, SimTime t) { ready = t; });
  e.run();
  EXPECT_EQ(ready, nanoseconds(190));
}

TEST_F(XpointFixture, BackToBackReadsOnOnePortSerialize) {
  XpointDevice x(e, 64);
  std::vector<SimTime> ready;
  x.read(1, [&](std::uint64_t, SimTime t) { ready.push_back(t); });
  x.read(2, [&](std::uint64_t, SimTime t) { ready.push_back(t); });
  e.run();
  EXPECT_EQ(ready, (std::vector<SimTime>{nanoseconds(190), nanoseconds(380)}));
}

TEST_F(XpointFixture, MultiplePortsOverlap) {
  XpointParams p;
  p.media_ports = 2;
  XpointDevice x(e, 64, p);
  std::vector<SimTime> ready;
  for (int i = 0; i < 3; ++i) x.read(1, [&](std::uint64_t, SimTime t) { ready.push_back(t); });
  e.run();
  EXPECT_EQ(ready, (std::vector<SimTime>{nanoseconds(190), nanoseconds(190), nanoseconds(380)}));
}

TEST_F(XpointFixture, WriteDurableOnlyAfterLatency) {
  XpointDevice x(e, 64);
  SimTime durable;
  x.write(7, 42, [&](SimTime t) { durable = t; });
  std::uint64_t early = 99, late = 99;
  e.schedule(nanoseconds(700), [&] { x.read(7, [&](std::uint64_t v, SimTime) { early = v; }); });
  e.schedule(nanoseconds(763), [&] { x.read(7, [&](std::uint64_t v, SimTime) { late = v; }); });
  e.run();
  EXPECT_EQ(durable, nanoseconds(763));
  EXPECT_EQ(early, 0u);
  EXPECT_EQ(late, 42u);
}

TEST_F(XpointFixture, BuffersBound) {
  XpointParams p;
  p.read_buffer_entries = 2;
  p.write_buffer_entries = 1;
  XpointDevice x(e, 64, p);
  x.read(0, [](std::uint64_t, SimTime) {});
  x.read(1, [](std::uint64_t, SimTime) {});
  EXPECT_THROW(x.read(2, [](std::uint64_t, SimTime) {}), BufferFull);
  x.release_read();
  EXPECT_NO_THROW(x.read(2, [](std::uint64_t, SimTime) {}));
  x.write(0, 1);
  EXPECT_THROW(x.write(1, 1), BufferFull);
  e.run();
  EXPECT_EQ(x.write_buffer_occupancy(), 0u);
  EXPECT_NO_THROW(x.write(1, 1));
  x.release_read();
  x.release_read();
  EXPECT_THROW(x.read(64, 1, [](XpointDevice::Tokens, SimTime) {}), std::out_of_range);
}

TEST_F(XpointFixture, MultiLineAccessIsOneMediaOp) {
  XpointDevice x(e, 64);
  x.write(8, XpointDevice::Tokens{1, 2, 3, 4});
  e.run();
  XpointDevice::Tokens got;
  x.read(8, 4, [&](XpointDevice::Tokens t, SimTime) { got = t; });
  e.run();
  EXPECT_EQ(got, (XpointDevice::Tokens{1, 2, 3, 4}));
  EXPECT_EQ(x.media_reads(), 1u);
  EXPECT_EQ(x.media_writes(), 1u);
  EXPECT_EQ(x.line_writes(), 4u);
}

TEST_F(XpointFixture, RandomTrafficNeverReadsUndurableData) {
  XpointParams p;
  p.media_ports = 3;
  p.start_gap_psi = 5;
  XpointDevice x(e, 32, p);
  std::mt19937_64 rng(21);
  // Reference: value history per line with durable times.
  std::map<std::uint64_t, std::vector<std::pair<SimTime, std::uint64_t>>> durable;
  std::uint64_t next = 1;
  bool ok = true;
  for (int i = 0; i < 3000; ++i) {
    e.run_until(e.now() + nanoseconds(rng() % 100));
    const std::uint64_t line = rng() % 32;
    if (rng() % 2 && x.can_accept_write()) {
      const std::uint64_t v = next++;
      x.write(line, v, [&durable, line, v](SimTime t) { durable[line].push_back({t, v}); });
    } else if (x.can_accept_read()) {
      x.read(line, [&, line](std::uint64_t v, SimTime ready) {
        x.release_read();
        // Sampled when the media access began: the newest value durable by
        // then (the access started at ready - 190 ns).
        const SimTime start = ready - nanoseconds(190);
        std::uint64_t expect = 0;
        for (const auto& [t, val] : durable[line]) {
          if (t <= start) expect = val;
        }
        ok = ok && v == expect;
      });
    }
  }
  e.run();
  EXPECT_TRUE(ok);
}

// ---- snarf and DDR sequence generator ----

TEST(Snarf, CapturesExactlyWhenEnabled) {
  SnarfUnit s;
  const CapturedTransaction tx{TransactionKind::Read, 0x80, {1, 2, 3}, 0xabc, 5};
  EXPECT_FALSE(s.observe(tx));
  s.enable(true);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    CapturedTransaction r{rng() % 2 ? TransactionKind::Read : TransactionKind::Write, rng(), {}, rng(),
                          static_cast<std::uint8_t>(rng() % 64)};
    for (std::uint64_t k = rng() % 40; k > 0; --k) r.data.push_back(rng());
    const auto cap = s.observe(r);
    ASSERT_TRUE(cap);
    EXPECT_EQ(*cap, r);
  }
  EXPECT_EQ(s.captured(), 500u);
}

TEST(DdrSeq, GranuleAndEmpty) {
  DramDevice d;
  d.preset(3, 4, SimTime{});
  const auto seq = ddr_seq_generate({3, 4, 0, 128, 128}, d.bank(3));
  ASSERT_EQ(seq.size(), 2u);
  EXPECT_EQ(seq[0].cmd, DramCommand::RD);
  EXPECT_EQ(seq[1].cmd, DramCommand::WR);
  EXPECT_TRUE(ddr_seq_generate({3, 4, 0, 0, 128}, d.bank(3)).empty());
  EXPECT_NO_THROW(replay(d, seq, nanoseconds(30)));
}

TEST(DdrSeq, RequiresPreset) {
  DramDevice d;
  EXPECT_THROW(ddr_seq_generate({0, 1, 0, 128, 128}, d.bank(0)), ProtocolViolation);
  d.preset(0, 2, SimTime{});
  EXPECT_THROW(ddr_seq_generate({0, 1, 0, 128, 128}, d.bank(0)), ProtocolViolation);
}

TEST(DdrSeq, RandomTasksReplayLegally) {
  std::mt19937_64 rng(17);
  DramDevice d;
  SimTime now;
  for (int i = 0; i < 500; ++i) {
    const std::size_t bank = rng() % d.bank_count();
    const std::uint64_t row = rng() % 16;
    now = d.preset(bank, row, now);
    const SwapGranule g{bank, row, rng() % 32, 128 * (1 + rng() % 32), 128};
    const auto seq = ddr_seq_generate(g, d.bank(bank));
    EXPECT_EQ(seq.size(), 2 * (g.bytes / 128));
    ASSERT_NO_THROW(now = replay(d, seq, now));
  }
}

}  // namespace
}  // namespace ohmsim::devices
