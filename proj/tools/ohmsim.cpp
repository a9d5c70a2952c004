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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ohmsim/ohmsim.hpp"

namespace {

using namespace ohmsim;

constexpr int kExitConfig = 2;
constexpr int kExitProtocol = 3;

Config config_from(const std::string& path) { return path.empty() ? Config{} : load_config(path); }

int do_simulate(const std::string& config_path, const std::string& trace, const std::string& synthetic,
                const std::string& platform, const std::string& mode, const std::string& out,
                const std::string& format, const std::optional<std::uint64_t>& seed) {
  experiment::ExperimentConfig ec;
  ec.config = config_from(config_path);
  ec.platform = parse_platform(platform);
  ec.mode = parse_mode(mode);
  if (!trace.empty()) ec.trace_path = trace;
  if (!synthetic.empty()) ec.synthetic = synthetic;
  ec.seed = seed;
  const auto fmt = metrics::parse_format(format);
  const auto report = experiment::run_experiment(ec);
  if (out.empty() || out == "-") {
    metrics::write_report(report, fmt, std::cout);
  } else {
    metrics::emit_report(report, fmt, out);
  }
  return 0;
}

int do_sweep(const std::string& matrix_path, const std::string& out, const std::string& reports_dir) {
  std::ifstream in(matrix_path);
  if (!in) throw ConfigError("cannot open matrix " + matrix_path);
  const auto dir = std::filesystem::path(matrix_path).parent_path().string();
  const auto m = experiment::parse_matrix(in, dir.empty() ? "." : dir);
  const auto reports = experiment::run_sweep(m.runs, m.jobs);
  if (!reports_dir.empty()) {
    std::filesystem::create_directories(reports_dir);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i].run;
      const auto name = std::to_string(i) + "_" + r.workload + "_" + r.mode + "_" + r.platform + ".json";
      metrics::emit_report(reports[i], metrics::ReportFormat::Json, (std::filesystem::path(reports_dir) / name).string());
    }
  }
  if (out.empty() || out == "-") {
    experiment::write_sweep_csv(reports, std::cout);
  } else {
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot open " + out);
    experiment::write_sweep_csv(reports, os);
  }
  return 0;
}

int do_cost(const std::string& config_path, const std::string& platform, const std::string& mode,
            std::uint64_t devices) {
  const Config cfg = config_from(config_path);
  const auto p = parse_platform(platform);
  const auto c = metrics::cost_estimate(cfg, p, parse_mode(mode), devices,
                                        cfg.oracle_variant == OracleVariant::DedicatedChannel);
  std::cout << std::fixed << std::setprecision(2);
  std::cout << "platform    " << platform << " (" << mode << ", " << devices << " devices)\n";
  std::cout << "modulators  " << c.mrrs.modulators << "  $" << c.modulators_usd << '\n';
  std::cout << "detectors   " << c.mrrs.detectors << "  $" << c.detectors_usd << '\n';
  std::cout << "dram        $" << c.dram_usd << '\n';
  std::cout << "xpoint      $" << c.xpoint_usd << '\n';
  std::cout << "vcsel       $" << c.vcsel_usd << '\n';
  std::cout << "total       $" << c.total() << '\n';
  return 0;
}

int do_calibrate(const std::string& config_path) {
  const Config cfg = config_from(config_path);
  const auto points = optical::default_calibration_points();
  const auto model = optical::calibrate_ber(points, cfg.power);
  std::cout << std::setprecision(6) << "BER(P) = " << model.a() << " * exp(-" << model.k() << " * P_mW)\n";
  std::cout << std::left << std::setw(18) << "point" << std::setw(14) << "rx_mW" << std::setw(14) << "target"
            << std::setw(14) << "model" << "rel_err\n";
  for (const auto& p : points) {
    const double rx = p.received_mw(cfg.power);
    const double b = model.ber(rx);
    std::cout << std::setw(18) << p.name << std::setw(14) << rx << std::setw(14) << p.target_ber << std::setw(14) << b
              << std::abs(b - p.target_ber) / p.target_ber << '\n';
  }
  std::cout << "\nworst BER per platform\n";
  for (auto pl : kAllPlatforms) {
    const auto est = metrics::ber_estimates(capabilities(pl), model, cfg.power);
    if (est.empty()) continue;
    double worst = 0;
    for (const auto& e : est) worst = std::max(worst, e.ber);
    std::cout << std::setw(18) << to_string(pl) << worst << (worst < 1e-15 ? "  ok" : "  above 1e-15") << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ohmsim: optical heterogeneous GPU memory simulator"};
  app.require_subcommand(1);

  std::string config_path, trace, synthetic, platform = "ohm-base", mode = "planar", out, format = "json";
  std::uint64_t seed_value = 0;
  auto* sim = app.add_subcommand("simulate", "run one platform/mode/workload");
  sim->add_option("--config", config_path, "key = value configuration file");
  auto* trace_opt = sim->add_option("--trace", trace, "trace file: <ns> <R|W> <hex addr> <bytes> per line");
  sim->add_option("--synthetic", synthetic, "synthetic spec, e.g. pagerank,n=20000")->excludes(trace_opt);
  sim->add_option("--platform", platform, "origin|hetero|ohm-base|auto-rw|ohm-wom|ohm-bw|oracle");
  sim->add_option("--mode", mode, "planar|two-level");
  sim->add_option("--out", out, "report path (stdout when omitted)");
  sim->add_option("--format", format, "json|csv");
  auto* seed_opt = sim->add_option("--seed", seed_value, "synthetic workload seed");

  std::string matrix, sweep_out, reports_dir;
  auto* sweep = app.add_subcommand("sweep", "run a platform x mode x workload matrix");
  sweep->add_option("--matrix", matrix, "matrix file")->required();
  sweep->add_option("--out", sweep_out, "summary CSV path (stdout when omitted)");
  sweep->add_option("--reports", reports_dir, "directory for per-run JSON reports");

  std::uint64_t devices = metrics::kReferenceDevices;
  auto* cost = app.add_subcommand("cost", "itemized hardware cost");
  cost->add_option("--config", config_path, "configuration file");
  cost->add_option("--platform", platform)->required();
  cost->add_option("--mode", mode)->required();
  cost->add_option("--devices", devices, "memory devices (reference 24)");

  auto* cal = app.add_subcommand("calibrate-ber", "fit the BER model and report per-platform BER");
  cal->add_option("--config", config_path, "configuration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sim) {
      std::optional<std::uint64_t> seed;
      if (*seed_opt) seed = seed_value;
      return do_simulate(config_path, trace, synthetic, platform, mode, out, format, seed);
    }
    if (*sweep) return do_sweep(matrix, sweep_out, reports_dir);
    if (*cost) return do_cost(config_path, platform, mode, devices);
    if (*cal) return do_calibrate(config_path);
  } catch (const devices::ProtocolViolation& e) {
    std::cerr << "protocol violation: " << e.what() << '\n';
    return kExitProtocol;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const CapabilityError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const workload::TraceError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
