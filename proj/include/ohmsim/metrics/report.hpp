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
#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ohmsim/metrics/ber.hpp"
#include "ohmsim/metrics/cost.hpp"
#include "ohmsim/metrics/energy.hpp"

namespace ohmsim::metrics {

inline constexpr const char* kSchemaVersion = "ohmsim.report/1";

struct RunMetadata {
  std::string platform;
  std::string mode;
  std::string workload;
  std::uint64_t seed{0};
  std::string oracle_variant;
  std::uint64_t requests{0};
  std::uint64_t runtime_ps{0};
  friend bool operator==(const RunMetadata&, const RunMetadata&) = default;
};

struct LatencySummary {
  std::uint64_t samples{0};
  double mean_ns{0};
  double p50_ns{0};
  double p95_ns{0};
  double p99_ns{0};
  double max_ns{0};
  friend bool operator==(const LatencySummary&, const LatencySummary&) = default;
};

/// One controller's virtual channel. Times in ps; effective + wasted + idle
/// equals the run time exactly.
struct VcUsage {
  int vc{0};
  std::uint64_t effective_ps{0};
  std::uint64_t wasted_ps{0};
  std::uint64_t idle_ps{0};
  std::uint64_t memory_route_ps{0};
  std::uint64_t migration_channel_ps{0};
  friend bool operator==(const VcUsage&, const VcUsage&) = default;
};

struct MigrationSummary {
  std::string kind;
  std::uint64_t count{0};
  std::uint64_t data_route_bytes{0};
  friend bool operator==(const MigrationSummary&, const MigrationSummary&) = default;
};

struct MetricsReport {
  std::string schema{kSchemaVersion};
  RunMetadata run;
  LatencySummary latency;
  // Labeled proxy: there is no core model, so no IPC.
  double throughput_requests_per_us{0};
  double effective_bw{0};
  double wasted_bw{0};
  std::vector<VcUsage> vcs;
  std::vector<MigrationSummary> migrations;
  std::uint64_t lookups{0};
  std::uint64_t hits{0};
  std::uint64_t misses{0};
  std::uint64_t reverse_writes{0};
  std::uint64_t snarfed{0};
  std::uint64_t xpoint_media_writes{0};
  EnergyLedger energy;
  std::vector<BerEstimate> ber;
  CostBreakdown cost;
};

inline double percentile(std::vector<double> sorted_or_not, double q) {
  if (sorted_or_not.empty()) return 0;
  std::sort(sorted_or_not.begin(), sorted_or_not.end());
  const double pos = q * static_cast<double>(sorted_or_not.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  const std::size_t j = std::min(i + 1, sorted_or_not.size() - 1);
  return sorted_or_not[i] + (sorted_or_not[j] - sorted_or_not[i]) * (pos - static_cast<double>(i));
}

inline LatencySummary summarize_latency(const std::vector<double>& ns) {
  LatencySummary s;
  s.samples = ns.size();
  if (ns.empty()) return s;
  double sum = 0;
  for (double v : ns) sum += v;
  s.mean_ns = sum / static_cast<double>(ns.size());
  s.p50_ns = percentile(ns, 0.50);
  s.p95_ns = percentile(ns, 0.95);
  s.p99_ns = percentile(ns, 0.99);
  s.max_ns = *std::max_element(ns.begin(), ns.end());
  return s;
}

/// Per-VC occupancy of a finished run. The memory route and the dedicated
/// migration channel use other wavelengths or run concurrently, so they are
/// reported beside the data-route split rather than inside it.
inline std::vector<VcUsage> vc_usage(const MemorySystem& sys) {
  const std::uint64_t runtime = sys.stats().runtime.ps;
  std::vector<VcUsage> out;
  for (const auto& l : sys.links()) {
    if (l.name == "data") {
      VcUsage u;
      u.vc = l.controller;
      u.effective_ps = l.stats.busy_demand.ps;
      u.wasted_ps = l.stats.busy_migration.ps;
      if (u.effective_ps + u.wasted_ps > runtime) throw std::logic_error("link busier than the run");
      u.idle_ps = runtime - u.effective_ps - u.wasted_ps;
      out.push_back(u);
    } else if (l.name == "memory") {
      out.back().memory_route_ps = l.stats.busy_demand.ps + l.stats.busy_migration.ps;
    } else if (l.name == "migration") {
      out.back().migration_channel_ps = l.stats.busy_demand.ps + l.stats.busy_migration.ps;
    }
  }
  return out;
}

// ---- JSON ----

using Json = nlohmann::ordered_json;

inline void to_json(Json& j, const RunMetadata& m) {
  j = Json{{"platform", m.platform}, {"mode", m.mode},         {"workload", m.workload},
           {"seed", m.seed},         {"oracle_variant", m.oracle_variant}, {"requests", m.requests},
           {"runtime_ps", m.runtime_ps}};
}
inline void from_json(const Json& j, RunMetadata& m) {
  j.at("platform").get_to(m.platform);
  j.at("mode").get_to(m.mode);
  j.at("workload").get_to(m.workload);
  j.at("seed").get_to(m.seed);
  j.at("oracle_variant").get_to(m.oracle_variant);
  j.at("requests").get_to(m.requests);
  j.at("runtime_ps").get_to(m.runtime_ps);
}

inline void to_json(Json& j, const LatencySummary& s) {
  j = Json{{"samples", s.samples}, {"mean_ns", s.mean_ns}, {"p50_ns", s.p50_ns},
           {"p95_ns", s.p95_ns},   {"p99_ns", s.p99_ns},   {"max_ns", s.max_ns}};
}
inline void from_json(const Json& j, LatencySummary& s) {
  j.at("samples").get_to(s.samples);
  j.at("mean_ns").get_to(s.mean_ns);
  j.at("p50_ns").get_to(s.p50_ns);
  j.at("p95_ns").get_to(s.p95_ns);
  j.at("p99_ns").get_to(s.p99_ns);
  j.at("max_ns").get_to(s.max_ns);
}

inline void to_json(Json& j, const VcUsage& u) {
  j = Json{{"vc", u.vc},         {"effective_ps", u.effective_ps},       {"wasted_ps", u.wasted_ps},
           {"idle_ps", u.idle_ps}, {"memory_route_ps", u.memory_route_ps}, {"migration_channel_ps", u.migration_channel_ps}};
}
inline void from_json(const Json& j, VcUsage& u) {
  j.at("vc").get_to(u.vc);
  j.at("effective_ps").get_to(u.effective_ps);
  j.at("wasted_ps").get_to(u.wasted_ps);
  j.at("idle_ps").get_to(u.idle_ps);
  j.at("memory_route_ps").get_to(u.memory_route_ps);
  j.at("migration_channel_ps").get_to(u.migration_channel_ps);
}

inline void to_json(Json& j, const MigrationSummary& m) {
  j = Json{{"kind", m.kind}, {"count", m.count}, {"data_route_bytes", m.data_route_bytes}};
}
inline void from_json(const Json& j, MigrationSummary& m) {
  j.at("kind").get_to(m.kind);
  j.at("count").get_to(m.count);
  j.at("data_route_bytes").get_to(m.data_route_bytes);
}

inline void to_json(Json& j, const EnergyLedger& e) {
  j = Json{{"dram_static_j", e.dram_static},     {"dram_dynamic_j", e.dram_dynamic},
           {"xpoint_j", e.xpoint},               {"optical_laser_j", e.optical_laser},
           {"optical_tuning_j", e.optical_tuning}, {"electrical_dma_j", e.electrical_dma},
           {"total_j", e.total()}};
}
inline void from_json(const Json& j, EnergyLedger& e) {
  j.at("dram_static_j").get_to(e.dram_static);
  j.at("dram_dynamic_j").get_to(e.dram_dynamic);
  j.at("xpoint_j").get_to(e.xpoint);
  j.at("optical_laser_j").get_to(e.optical_laser);
  j.at("optical_tuning_j").get_to(e.optical_tuning);
  j.at("electrical_dma_j").get_to(e.electrical_dma);
}

inline void to_json(Json& j, const BerEstimate& b) {
  j = Json{{"function", b.function}, {"received_mw", b.received_mw}, {"ber", b.ber}};
}
inline void from_json(const Json& j, BerEstimate& b) {
  j.at("function").get_to(b.function);
  j.at("received_mw").get_to(b.received_mw);
  j.at("ber").get_to(b.ber);
}

inline void to_json(Json& j, const CostBreakdown& c) {
  j = Json{{"modulators", c.mrrs.modulators}, {"detectors", c.mrrs.detectors},
           {"modulators_usd", c.modulators_usd}, {"detectors_usd", c.detectors_usd},
           {"dram_usd", c.dram_usd},           {"xpoint_usd", c.xpoint_usd},
           {"vcsel_usd", c.vcsel_usd},         {"total_usd", c.total()}};
}
inline void from_json(const Json& j, CostBreakdown& c) {
  j.at("modulators").get_to(c.mrrs.modulators);
  j.at("detectors").get_to(c.mrrs.detectors);
  j.at("modulators_usd").get_to(c.modulators_usd);
  j.at("detectors_usd").get_to(c.detectors_usd);
  j.at("dram_usd").get_to(c.dram_usd);
  j.at("xpoint_usd").get_to(c.xpoint_usd);
  j.at("vcsel_usd").get_to(c.vcsel_usd);
}

inline void to_json(Json& j, const MetricsReport& r) {
  j = Json{{"schema", r.schema},
           {"run", r.run},
           {"latency", r.latency},
           {"throughput_requests_per_us", r.throughput_requests_per_us},
           {"effective_bw", r.effective_bw},
           {"wasted_bw", r.wasted_bw},
           {"vcs", r.vcs},
           {"migrations", r.migrations},
           {"cache", Json{{"lookups", r.lookups}, {"hits", r.hits}, {"misses", r.misses}}},
           {"reverse_writes", r.reverse_writes},
           {"snarfed", r.snarfed},
           {"xpoint_media_writes", r.xpoint_media_writes},
           {"energy", r.energy},
           {"ber", r.ber},
           {"cost", r.cost}};
}
inline void from_json(const Json& j, MetricsReport& r) {
  j.at("schema").get_to(r.schema);
  if (r.schema != kSchemaVersion) throw std::runtime_error("unsupported report schema " + r.schema);
  j.at("run").get_to(r.run);
  j.at("latency").get_to(r.latency);
  j.at("throughput_requests_per_us").get_to(r.throughput_requests_per_us);
  j.at("effective_bw").get_to(r.effective_bw);
  j.at("wasted_bw").get_to(r.wasted_bw);
  j.at("vcs").get_to(r.vcs);
  j.at("migrations").get_to(r.migrations);
  j.at("cache").at("lookups").get_to(r.lookups);
  j.at("cache").at("hits").get_to(r.hits);
  j.at("cache").at("misses").get_to(r.misses);
  j.at("reverse_writes").get_to(r.reverse_writes);
  j.at("snarfed").get_to(r.snarfed);
  j.at("xpoint_media_writes").get_to(r.xpoint_media_writes);
  j.at("energy").get_to(r.energy);
  j.at("ber").get_to(r.ber);
  j.at("cost").get_to(r.cost);
}

inline bool operator==(const EnergyLedger& a, const EnergyLedger& b) {
  return a.dram_static == b.dram_static && a.dram_dynamic == b.dram_dynamic && a.xpoint == b.xpoint &&
         a.optical_laser == b.optical_laser && a.optical_tuning == b.optical_tuning &&
         a.electrical_dma == b.electrical_dma;
}
inline bool operator==(const BerEstimate& a, const BerEstimate& b) {
  return a.function == b.function && a.received_mw == b.received_mw && a.ber == b.ber;
}
inline bool operator==(const CostBreakdown& a, const CostBreakdown& b) {
  return a.mrrs == b.mrrs && a.modulators_usd == b.modulators_usd && a.detectors_usd == b.detectors_usd &&
         a.dram_usd == b.dram_usd && a.xpoint_usd == b.xpoint_usd && a.vcsel_usd == b.vcsel_usd;
}
inline bool operator==(const MetricsReport& a, const MetricsReport& b) {
  return a.schema == b.schema && a.run == b.run && a.latency == b.latency &&
         a.throughput_requests_per_us == b.throughput_requests_per_us && a.effective_bw == b.effective_bw &&
         a.wasted_bw == b.wasted_bw && a.vcs == b.vcs && a.migrations == b.migrations && a.lookups == b.lookups &&
         a.hits == b.hits && a.misses == b.misses && a.reverse_writes == b.reverse_writes && a.snarfed == b.snarfed &&
         a.xpoint_media_writes == b.xpoint_media_writes && a.energy == b.energy && a.ber == b.ber && a.cost == b.cost;
}

// ---- emission ----

enum class ReportFormat : std::uint8_t { Json, Csv };

inline ReportFormat parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  throw std::invalid_argument("unknown report format: " + s);
}

inline constexpr const char* kCsvHeader = "metric,value";

namespace detail {
inline void flatten(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), os);
  } else if (j.is_string()) {
    os << prefix << ',' << j.get<std::string>() << '\n';
  } else {
    os << prefix << ',' << j.dump() << '\n';
  }
}
}  // namespace detail

/// JSON keeps the field order above. CSV has the fixed header
/// `metric,value` and one row per leaf, keyed by its dotted JSON path.
inline void write_report(const MetricsReport& r, ReportFormat f, std::ostream& os) {
  const Json j = r;
  if (f == ReportFormat::Json) {
    os << j.dump(2) << '\n';
  } else {
    os << kCsvHeader << '\n';
    detail::flatten(j, "", os);
  }
}

inline std::string report_string(const MetricsReport& r, ReportFormat f) {
  std::ostringstream os;
  write_report(r, f, os);
  return os.str();
}

inline void emit_report(const MetricsReport& r, ReportFormat f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open report destination " + path);
  write_report(r, f, out);
  if (!out) throw std::runtime_error("failed writing report to " + path);
}

inline MetricsReport parse_report_json(const std::string& text) { return Json::parse(text).get<MetricsReport>(); }

}  // namespace ohmsim::metrics
