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
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ohmsim/workload/request.hpp"

namespace ohmsim::workload {

/// Parameters of a synthetic workload. APKI is a relative intensity knob:
/// requests arrive at apki/1000 per abstract instruction, at
/// `instructions_per_ns` instructions per nanosecond.
struct SyntheticWorkloadSpec {
  std::string name{"custom"};
  double apki{100.0};
  double read_ratio{0.9};
  std::uint64_t footprint_bytes{2ull << 20};
  double zipf{0.8};
  std::uint64_t requests{50000};
  std::uint32_t request_bytes{128};
  std::uint64_t page_bytes{4096};
  // The hot set is re-drawn this many times over the run (1 = static).
  std::uint32_t phases{4};
  double instructions_per_ns{19.2};
  std::uint64_t seed{1};

  void validate() const {
    if (!(read_ratio >= 0.0 && read_ratio <= 1.0)) throw std::invalid_argument("read_ratio must lie in [0, 1]");
    if (!(apki > 0.0)) throw std::invalid_argument("apki must be positive");
    if (request_bytes == 0 || page_bytes % request_bytes != 0) {
      throw std::invalid_argument("request size must divide the page size");
    }
    if (footprint_bytes < page_bytes) throw std::invalid_argument("footprint smaller than a page");
    if (zipf < 0.0) throw std::invalid_argument("zipf exponent must be non-negative");
    if (phases == 0) throw std::invalid_argument("phases must be positive");
  }
};

struct WorkloadProfile {
  const char* name;
  double apki;
  double read_ratio;
};

/// Workload characteristics of the evaluated applications.
inline constexpr WorkloadProfile kWorkloadProfiles[] = {
    {"backp", 30, 0.53},   {"lud", 20, 0.52},      {"grams", 266, 0.70},  {"fdtd", 86, 0.70},
    {"betw", 193, 0.99},   {"bfsdata", 84, 0.95},  {"bfstopo", 25, 0.97}, {"gctopo", 93, 0.99},
    {"pagerank", 599, 0.99}, {"sssp", 103, 0.98},
};

inline SyntheticWorkloadSpec preset(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "migration-heavy") {
    SyntheticWorkloadSpec s;
    s.name = lower;
    s.apki = 300;
    s.read_ratio = 0.9;
    s.phases = 16;
    return s;
  }
  for (const auto& row : kWorkloadProfiles) {
    if (lower == row.name) {
      SyntheticWorkloadSpec s;
      s.name = row.name;
      s.apki = row.apki;
      s.read_ratio = row.read_ratio;
      return s;
    }
  }
  throw std::invalid_argument("unknown workload preset: " + name);
}

/// The five bundled workloads used for platform comparisons, plus the
/// migration-heavy one.
inline std::vector<std::string> bundled_workloads() { return {"backp", "fdtd", "grams", "betw", "pagerank"}; }

/// Either a preset name, optionally followed by overrides
/// ("pagerank,n=20000"), or a bare override list
/// ("read_ratio=0.9,apki=100,zipf=0.8,footprint=8388608,seed=7").
inline SyntheticWorkloadSpec parse_synthetic(const std::string& text) {
  SyntheticWorkloadSpec s;
  std::stringstream ss(text);
  std::string item;
  bool first = true;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      if (!first) throw std::invalid_argument("preset name must come first: " + item);
      s = preset(item);
      first = false;
      continue;
    }
    first = false;
    const std::string k = item.substr(0, eq);
    const std::string v = item.substr(eq + 1);
    try {
      if (k == "read_ratio") s.read_ratio = std::stod(v);
      else if (k == "apki") s.apki = std::stod(v);
      else if (k == "n" || k == "requests") s.requests = std::stoull(v);
      else if (k == "zipf") s.zipf = std::stod(v);
      else if (k == "footprint") s.footprint_bytes = std::stoull(v);
      else if (k == "size") s.request_bytes = static_cast<std::uint32_t>(std::stoul(v));
      else if (k == "phases") s.phases = static_cast<std::uint32_t>(std::stoul(v));
      else if (k == "seed") s.seed = std::stoull(v);
      else if (k == "name") s.name = v;
      else throw std::invalid_argument("unknown synthetic key: " + k);
    } catch (const std::logic_error& e) {
      if (std::string(e.what()).starts_with("unknown")) throw;
      throw std::invalid_argument("bad value for " + k + ": " + v);
    }
  }
  s.validate();
  return s;
}

/// Zipf-distributed page popularity (rank r has weight r^-s); ranks map to
/// pages through a seeded permutation, re-drawn at every phase boundary.
/// The line within a page is uniform.
inline std::vector<MemRequest> gen_synthetic(const SyntheticWorkloadSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  const std::uint64_t pages = spec.footprint_bytes / spec.page_bytes;
  const std::uint64_t per_page = spec.page_bytes / spec.request_bytes;

  std::vector<double> cdf(pages);
  double acc = 0.0;
  for (std::uint64_t r = 0; r < pages; ++r) {
    acc += std::pow(static_cast<double>(r + 1), -spec.zipf);
    cdf[r] = acc;
  }
  std::vector<std::uint64_t> perm(pages);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> gap(spec.apki / 1000.0 * spec.instructions_per_ns);
  const std::uint64_t phase_len = std::max<std::uint64_t>(1, spec.requests / spec.phases);

  std::vector<MemRequest> out;
  out.reserve(spec.requests);
  double t_ns = 0.0;
  for (std::uint64_t i = 0; i < spec.requests; ++i) {
    if (i > 0 && i % phase_len == 0) std::shuffle(perm.begin(), perm.end(), rng);
    const double u = unit(rng) * acc;
    const auto rank = static_cast<std::uint64_t>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    const std::uint64_t page = perm[std::min(rank, pages - 1)];
    const std::uint64_t line = std::uniform_int_distribution<std::uint64_t>(0, per_page - 1)(rng);
    MemRequest r;
    r.id = i;
    r.kind = unit(rng) < spec.read_ratio ? RequestKind::Read : RequestKind::Write;
    r.address = page * spec.page_bytes + line * spec.request_bytes;
    r.size = spec.request_bytes;
    r.issue_time = nanoseconds(static_cast<std::uint64_t>(t_ns));
    out.push_back(r);
    t_ns += gap(rng);
  }
  return out;
}

}  // namespace ohmsim::workload
