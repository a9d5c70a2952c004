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
#include <fstream>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ohmsim/config.hpp"
#include "ohmsim/metrics/report.hpp"
#include "ohmsim/platform.hpp"
#include "ohmsim/system.hpp"
#include "ohmsim/workload/synthetic.hpp"
#include "ohmsim/workload/trace.hpp"

namespace ohmsim::experiment {

/// One platform, one mode, one workload. The workload is either a trace file
/// or a synthetic spec string such as "pagerank,n=20000".
struct ExperimentConfig {
  Config config;
  Platform platform{Platform::OhmBase};
  MemoryMode mode{MemoryMode::Planar};
  std::optional<std::string> trace_path;
  std::string synthetic{"pagerank"};
  std::optional<std::uint64_t> seed;
};

struct Workload {
  std::string name;
  std::uint64_t seed{0};
  std::vector<workload::MemRequest> requests;
};

inline Workload load_workload(const ExperimentConfig& ec) {
  if (ec.trace_path) {
    std::ifstream in(*ec.trace_path);
    if (!in) throw ConfigError("cannot open trace " + *ec.trace_path);
    return {*ec.trace_path, ec.seed.value_or(0), workload::parse_trace(in)};
  }
  workload::SyntheticWorkloadSpec spec;
  try {
    spec = workload::parse_synthetic(ec.synthetic);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (ec.seed) spec.seed = *ec.seed;
  return {spec.name, spec.seed, workload::gen_synthetic(spec)};
}

inline const char* oracle_name(OracleVariant v) { return v == OracleVariant::DramOnly ? "dram" : "dedicated-channel"; }

/// Builds the report of a finished run.
inline metrics::MetricsReport make_report(const MemorySystem& sys, const Workload& wl) {
  const Config& cfg = sys.config();
  const auto& s = sys.stats();
  metrics::MetricsReport r;
  r.run = {std::string(to_string(sys.platform())), std::string(to_string(sys.mode())), wl.name, wl.seed,
           oracle_name(cfg.oracle_variant), wl.requests.size(), s.runtime.ps};
  r.latency = metrics::summarize_latency(s.latencies_ns);
  if (s.runtime.ps > 0) {
    r.throughput_requests_per_us = static_cast<double>(s.requests_completed) / (static_cast<double>(s.runtime.ps) * 1e-6);
  }
  r.vcs = metrics::vc_usage(sys);
  std::uint64_t eff = 0, wasted = 0;
  for (const auto& v : r.vcs) {
    eff += v.effective_ps;
    wasted += v.wasted_ps;
  }
  const double total = static_cast<double>(s.runtime.ps) * static_cast<double>(r.vcs.size());
  if (total > 0) {
    r.effective_bw = static_cast<double>(eff) / total;
    r.wasted_bw = static_cast<double>(wasted) / total;
  }
  for (std::size_t k = 0; k < kMigrationKinds; ++k) {
    r.migrations.push_back({controller::to_string(static_cast<MigrationKind>(k)), s.migrations[k],
                            s.data_route_migration_bytes[k]});
  }
  r.lookups = s.lookups;
  r.hits = s.hits;
  r.misses = s.misses;
  r.reverse_writes = s.reverse_writes;
  r.snarfed = s.snarfed;
  r.xpoint_media_writes = s.xpoint_media_writes;
  r.energy = metrics::energy_account(sys);
  const auto ber_model = optical::calibrate_ber(optical::default_calibration_points(), cfg.power);
  r.ber = metrics::ber_estimates(sys.caps(), ber_model, cfg.power);
  r.cost = metrics::cost_estimate(cfg, sys.platform(), sys.mode(), metrics::kReferenceDevices,
                                  sys.caps().dedicated_migration_channel);
  return r;
}

/// Full simulation of one configuration. Capability errors carry the
/// platform and mode; protocol violations propagate unchanged.
inline metrics::MetricsReport run_experiment(const ExperimentConfig& ec) {
  const Workload wl = load_workload(ec);
  try {
    MemorySystem sys(ec.config, ec.platform, ec.mode);
    sys.load(wl.requests);
    sys.run();
    return make_report(sys, wl);
  } catch (const CapabilityError& e) {
    throw CapabilityError(std::string(to_string(ec.platform)) + "/" + std::string(to_string(ec.mode)) + ": " +
                          e.what());
  } catch (const controller::AddressError& e) {
    throw ConfigError(std::string("workload does not fit ") + std::string(to_string(ec.mode)) + " capacity: " +
                      e.what());
  }
}

/// Runs independent experiments concurrently, one event loop each; results
/// keep the input order.
inline std::vector<metrics::MetricsReport> run_sweep(const std::vector<ExperimentConfig>& runs, unsigned jobs = 0) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<metrics::MetricsReport> out(runs.size());
  for (std::size_t begin = 0; begin < runs.size(); begin += jobs) {
    const std::size_t end = std::min(runs.size(), begin + jobs);
    std::vector<std::future<metrics::MetricsReport>> batch;
    for (std::size_t i = begin; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, [&runs, i] { return run_experiment(runs[i]); }));
    }
    for (std::size_t i = begin; i < end; ++i) out[i] = batch[i - begin].get();
  }
  return out;
}

/// Sweep description, one `key = value` per line, `#` comments:
///   config   = <path>              (optional; relative to the matrix file)
///   platform = ohm-base, ohm-wom   (comma list, repeatable)
///   mode     = planar, two-level   (comma list, repeatable)
///   workload = pagerank,n=20000    (one synthetic spec per line, repeatable)
///   trace    = <path>              (one trace per line, repeatable)
///   seed     = <u64>               (optional override)
///   jobs     = <n>                 (optional parallelism)
struct SweepMatrix {
  std::vector<ExperimentConfig> runs;
  unsigned jobs{0};
};

inline SweepMatrix parse_matrix(std::istream& in, const std::string& base_dir = ".") {
  Config cfg;
  std::vector<Platform> platforms;
  std::vector<MemoryMode> modes;
  std::vector<ExperimentConfig> workloads;
  std::optional<std::uint64_t> seed;
  SweepMatrix m;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  auto split = [&trim](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (auto t = trim(item); !t.empty()) out.push_back(t);
    }
    return out;
  };
  auto resolve = [&base_dir](const std::string& path) {
    return path.empty() || path.front() == '/' ? path : base_dir + "/" + path;
  };
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("matrix line " + std::to_string(n) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "config") {
        cfg = load_config(resolve(value));
      } else if (key == "platform") {
        for (const auto& p : split(value)) platforms.push_back(parse_platform(p));
      } else if (key == "mode") {
        for (const auto& p : split(value)) modes.push_back(parse_mode(p));
      } else if (key == "workload") {
        ExperimentConfig ec;
        ec.synthetic = value;
        workloads.push_back(ec);
      } else if (key == "trace") {
        ExperimentConfig ec;
        ec.trace_path = resolve(value);
        workloads.push_back(ec);
      } else if (key == "seed") {
        seed = std::stoull(value);
      } else if (key == "jobs") {
        m.jobs = static_cast<unsigned>(std::stoul(value));
      } else {
        throw ConfigError("unknown key '" + key + "'");
      }
    } catch (const std::exception& e) {
      throw ConfigError("matrix line " + std::to_string(n) + ": " + e.what());
    }
  }
  if (platforms.empty() || modes.empty() || workloads.empty()) {
    throw ConfigError("matrix needs at least one platform, mode and workload");
  }
  for (const auto& w : workloads) {
    for (auto mode : modes) {
      for (auto p : platforms) {
        ExperimentConfig ec = w;
        ec.config = cfg;
        ec.platform = p;
        ec.mode = mode;
        ec.seed = seed;
        m.runs.push_back(ec);
      }
    }
  }
  return m;
}

inline constexpr const char* kSweepCsvHeader =
    "platform,mode,workload,seed,requests,mean_ns,p99_ns,throughput_requests_per_us,effective_bw,wasted_bw,energy_j";

inline void write_sweep_csv(const std::vector<metrics::MetricsReport>& reports, std::ostream& os) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : reports) {
    os << r.run.platform << ',' << r.run.mode << ',' << r.run.workload << ',' << r.run.seed << ',' << r.run.requests
       << ',' << r.latency.mean_ns << ',' << r.latency.p99_ns << ',' << r.throughput_requests_per_us << ','
       << r.effective_bw << ',' << r.wasted_bw << ',' << r.energy.total() << '\n';
  }
}

}  // namespace ohmsim::experiment
