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

#include <algorithm>
#include <map>
#include <random>
#include <string>

#include "ohmsim/system.hpp"
#include "ohmsim/workload/synthetic.hpp"

namespace ohmsim {
namespace {

using workload::MemRequest;

// Reference memory: every read must return the token of the latest earlier
// write to its line (0 if none); the final image must match too. Writes
// carry token id + 1.
struct ShadowResult {
  std::size_t bad_reads{0};
  std::size_t bad_lines{0};
  std::size_t reads_checked{0};
};

ShadowResult shadow_check(const MemorySystem& sys, const std::vector<MemRequest>& reqs) {
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
  ShadowResult out;
  for (const auto& o : sys.reads()) {
    ++out.reads_checked;
    if (expected.at({o.request, o.line}) != o.token) ++out.bad_reads;
  }
  for (const auto& [line, v] : image) {
    if (sys.peek(line) != v) ++out.bad_lines;
  }
  return out;
}

std::vector<MemRequest> workload_for(const std::string& spec) { return workload::gen_synthetic(workload::parse_synthetic(spec)); }

struct Case {
  Platform platform;
  MemoryMode mode;
};

std::string case_name(const ::testing::TestParamInfo<Case>& info) {
  std::string s = std::string(to_string(info.param.platform)) + "_" + std::string(to_string(info.param.mode));
  for (auto& c : s) {
    if (c == '-') c = '_';
  }
  return s;
}

std::vector<Case> all_cases() {
  std::vector<Case> out;
  for (auto mode : {MemoryMode::Planar, MemoryMode::TwoLevel}) {
    for (auto p : kAllPlatforms) out.push_back({p, mode});
  }
  return out;
}

class EveryPlatform : public ::testing::TestWithParam<Case> {};

TEST_P(EveryPlatform, ShadowMemoryAgrees) {
  const auto reqs = workload_for("migration-heavy,n=15000,read_ratio=0.6,footprint=4194304,seed=3");
  MemorySystem sys(Config{}, GetParam().platform, GetParam().mode, {true, false});
  sys.load(reqs);
  sys.run();
  const auto r = shadow_check(sys, reqs);
  EXPECT_EQ(sys.stats().requests_completed, reqs.size());
  EXPECT_GT(r.reads_checked, 0u);
  EXPECT_EQ(r.bad_reads, 0u);
  EXPECT_EQ(r.bad_lines, 0u);
}

TEST_P(EveryPlatform, MultiLineRequestsAgree) {
  std::mt19937_64 rng(31);
  std::vector<MemRequest> reqs;
  SimTime t;
  for (std::uint64_t i = 0; i < 3000; ++i) {
    MemRequest r;
    r.id = i;
    r.kind = rng() % 3 ? workload::RequestKind::Read : workload::RequestKind::Write;
    r.size = static_cast<std::uint32_t>(64 * (1 + rng() % 8));
    r.address = (rng() % 2048) * 64;
    r.issue_time = t;
    t = t + picoseconds(rng() % 20000);
    reqs.push_back(r);
  }
  MemorySystem sys(Config{}, GetParam().platform, GetParam().mode, {true, false});
  sys.load(reqs);
  sys.run();
  const auto r = shadow_check(sys, reqs);
  EXPECT_EQ(r.bad_reads, 0u);
  EXPECT_EQ(r.bad_lines, 0u);
}

TEST_P(EveryPlatform, EmptyWorkload) {
  MemorySystem sys(Config{}, GetParam().platform, GetParam().mode);
  sys.load({});
  sys.run();
  EXPECT_EQ(sys.stats().requests_completed, 0u);
  EXPECT_EQ(sys.stats().runtime, SimTime{});
}

TEST_P(EveryPlatform, Deterministic) {
  const auto reqs = workload_for("grams,n=4000");
  auto once = [&] {
    MemorySystem sys(Config{}, GetParam().platform, GetParam().mode);
    sys.load(reqs);
    sys.run();
    return std::make_pair(sys.stats().runtime, sys.stats().latencies_ns);
  };
  EXPECT_EQ(once(), once());
}

INSTANTIATE_TEST_SUITE_P(System, EveryPlatform, ::testing::ValuesIn(all_cases()), case_name);

TEST(System, TwoLevelOpticalMigrationStaysOffDataRoute) {
  const auto reqs = workload_for("migration-heavy,n=20000");
  std::map<Platform, std::uint64_t> bytes;
  for (auto p : {Platform::OhmBase, Platform::OhmWom, Platform::OhmBw}) {
    MemorySystem sys(Config{}, p, MemoryMode::TwoLevel);
    sys.load(reqs);
    sys.run();
    for (auto b : sys.stats().data_route_migration_bytes) bytes[p] += b;
  }
  EXPECT_GT(bytes[Platform::OhmBase], 0u);
  EXPECT_EQ(bytes[Platform::OhmWom], 0u);
  EXPECT_EQ(bytes[Platform::OhmBw], 0u);
}

TEST(System, SwapHandshakeStepsInOrder) {
  const auto reqs = workload_for("migration-heavy,n=20000");
  for (auto p : {Platform::OhmWom, Platform::OhmBw}) {
    MemorySystem sys(Config{}, p, MemoryMode::Planar);
    sys.load(reqs);
    sys.run();
    ASSERT_GT(sys.stats().migrations[static_cast<std::size_t>(controller::MigrationKind::Swap)], 0u);
    std::map<std::uint64_t, std::map<controller::HandshakeStep, std::vector<SimTime>>> by_task;
    for (const auto& h : sys.handshakes()) by_task[h.task][h.step].push_back(h.at);
    ASSERT_FALSE(by_task.empty());
    using S = controller::HandshakeStep;
    for (auto& [task, steps] : by_task) {
      for (auto s : {S::Preset, S::SwapCmd, S::Ready, S::Confirm}) ASSERT_EQ(steps[s].size(), 1u) << task;
      ASSERT_FALSE(steps[S::DramRead].empty());
      ASSERT_EQ(steps[S::DramRead].size(), steps[S::DramWrite].size());
      const auto lo = [](const std::vector<SimTime>& v) { return *std::min_element(v.begin(), v.end()); };
      const auto hi = [](const std::vector<SimTime>& v) { return *std::max_element(v.begin(), v.end()); };
      EXPECT_LE(steps[S::Preset][0], steps[S::SwapCmd][0]);
      EXPECT_LE(steps[S::SwapCmd][0], lo(steps[S::DramRead]));
      EXPECT_LE(lo(steps[S::DramRead]), lo(steps[S::DramWrite]));
      EXPECT_LE(hi(steps[S::DramWrite]), steps[S::Ready][0]);
      EXPECT_LE(steps[S::Ready][0], steps[S::Confirm][0]);
    }
  }
}

TEST(System, RejectsBadWorkloads) {
  MemorySystem sys(Config{}, Platform::OhmBase, MemoryMode::TwoLevel);
  MemRequest a;
  a.size = 128;
  a.issue_time = nanoseconds(5);
  MemRequest b = a;
  b.issue_time = nanoseconds(1);
  EXPECT_THROW(sys.load({a, b}), std::invalid_argument);
  a.address = sys.addressable_bytes() - 64;
  EXPECT_THROW(sys.load({a}), controller::AddressError);
  a.address = 0;
  a.size = 0;
  EXPECT_THROW(sys.load({a}), std::invalid_argument);
}

TEST(System, WavelengthAccounting) {
  Config cfg;
  EXPECT_EQ(MemorySystem(cfg, Platform::Hetero, MemoryMode::Planar).optical_wavelengths(), 0u);
  EXPECT_EQ(MemorySystem(cfg, Platform::OhmBase, MemoryMode::Planar).optical_wavelengths(), 96u);
  EXPECT_EQ(MemorySystem(cfg, Platform::Oracle, MemoryMode::Planar).optical_wavelengths(), 192u);
  cfg.oracle_variant = OracleVariant::DramOnly;
  EXPECT_EQ(MemorySystem(cfg, Platform::Oracle, MemoryMode::Planar).optical_wavelengths(), 96u);
}

}  // namespace
}  // namespace ohmsim
