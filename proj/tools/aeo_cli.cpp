/*
 * Copyright 2026 The AEO Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <CLI11.hpp>

#include <csignal>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "aeo/driver.hpp"
#include "aeo/error.hpp"
#include "aeo/polyfit.hpp"
#include "aeo/serialization.hpp"
#include "aeo/service.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitUnknownProcess = 2;
constexpr int kExitNumerical = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw aeo::ArgumentError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw aeo::ArgumentError("cannot write " + path);
}

// Accepts a built-in name or a path to a process JSON file.
aeo::SyntheticProcess load_process(const std::string& spec) {
  for (const std::string& name : aeo::builtin_process_names())
    if (spec == name) return aeo::builtin_process(name);
  std::ifstream probe(spec);
  if (!probe) throw aeo::ArgumentError("unknown process '" + spec + "'");
  return aeo::process_from_json(aeo::json::parse(read_file(spec)));
}

struct CampaignOptions {
  std::string process = "target1_achievable";
  std::optional<std::string> config_file;
  std::optional<double> target_length;
  std::optional<double> target_diameter;
  std::optional<std::size_t> budget;
  std::optional<std::string> mode;
  std::uint64_t seed = 1;
};

void add_campaign_options(CLI::App* cmd, CampaignOptions& opt) {
  cmd->add_option("-p,--process", opt.process, "Built-in process name or process JSON file")->capture_default_str();
  cmd->add_option("-c,--config", opt.config_file, "Campaign config JSON (defaults from the process)");
  cmd->add_option("--target-length", opt.target_length, "Target fiber length (um)");
  cmd->add_option("--target-diameter", opt.target_diameter, "Target fiber diameter (um)");
  cmd->add_option("-b,--budget", opt.budget, "Iteration budget after the seed batch");
  cmd->add_option("-m,--mode", opt.mode, "Acquisition maximizer")->check(CLI::IsMember({"auto", "exhaustive", "direct"}));
  cmd->add_option("-s,--seed", opt.seed, "Random seed")->capture_default_str();
}

struct Setup {
  aeo::SyntheticProcess process;
  aeo::CampaignConfig config;
};

Setup resolve(const CampaignOptions& opt, bool& unknown_process) {
  Setup s;
  try {
    s.process = load_process(opt.process);
  } catch (const aeo::ArgumentError&) {
    unknown_process = true;
    throw;
  }
  if (opt.target_length || opt.target_diameter)
    s.process.targets = aeo::Targets::with_default_bounds(opt.target_length.value_or(s.process.targets.target_length),
                                                          opt.target_diameter.value_or(s.process.targets.target_diameter));
  s.config = aeo::simulation_config(s.process);
  if (opt.config_file) {
    s.config = aeo::config_from_json(aeo::json::parse(read_file(*opt.config_file)));
    if (opt.target_length || opt.target_diameter) s.config.targets = s.process.targets;
  }
  if (opt.budget) s.config.iteration_budget = *opt.budget;
  if (opt.mode) {
    if (*opt.mode == "exhaustive")
      s.config.acquisition.mode = aeo::AcquisitionMode::Exhaustive;
    else if (*opt.mode == "direct")
      s.config.acquisition.mode = aeo::AcquisitionMode::Direct;
    else
      s.config.acquisition.mode = aeo::AcquisitionMode::Auto;
  }
  s.config.validate();
  return s;
}

std::string format_median(const std::optional<double>& m) {
  if (!m) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", *m);
  return buf;
}

aeo::Service* g_service = nullptr;

void handle_signal(int) {
  if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive experimental optimization of fiber spinning"};
  app.require_subcommand(1);

  CampaignOptions sim_opt;
  std::string trace_path = "trace.csv";
  std::optional<std::string> summary_path;
  auto* simulate = app.add_subcommand("simulate", "Run one simulated campaign");
  add_campaign_options(simulate, sim_opt);
  simulate->add_option("-o,--trace", trace_path, "Output CSV trace ('-' for stdout)")->capture_default_str();
  simulate->add_option("--summary", summary_path, "Output JSON summary (default: stdout)");

  CampaignOptions bench_opt;
  std::size_t repeats = 20;
  std::optional<std::size_t> random_budget;
  std::optional<std::string> report_path;
  auto* benchmark = app.add_subcommand("benchmark", "Compare against random search with paired seeds");
  add_campaign_options(benchmark, bench_opt);
  benchmark->add_option("-r,--repeats", repeats, "Number of paired runs")->check(CLI::PositiveNumber)->capture_default_str();
  benchmark->add_option("--random-budget", random_budget, "Random baseline iterations after its seeds");
  benchmark->add_option("--report", report_path, "Also write the report as JSON");

  std::string analyze_trace;
  auto* analyze = app.add_subcommand("analyze", "Polynomial-fit R of each parameter in a trace");
  analyze->add_option("trace", analyze_trace, "CSV trace file")->required()->check(CLI::ExistingFile);

  std::string process_name;
  auto* show_process = app.add_subcommand("process", "Print a process definition as JSON");
  show_process->add_option("name", process_name, "Built-in name or JSON file")->required();

  std::string bind_address = "127.0.0.1:8080";
  std::string state_dir = "aeo-state";
  auto* serve = app.add_subcommand("serve", "Serve live campaigns over HTTP");
  serve->add_option("-a,--bind", bind_address, "host:port to listen on")->capture_default_str();
  serve->add_option("-d,--state-dir", state_dir, "Campaign state directory (env AEO_STATE_DIR overrides)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  bool unknown_process = false;
  try {
    if (*simulate) {
      const Setup s = resolve(sim_opt, unknown_process);
      const aeo::SimulationRun run = aeo::run_simulated_campaign(s.process, s.config, sim_opt.seed);
      write_file(trace_path, aeo::trace_to_csv(run.trace));
      const std::string summary = aeo::summary_to_json(run.summary).dump(2) + "\n";
      if (summary_path)
        write_file(*summary_path, summary);
      else if (trace_path != "-")
        std::cout << summary;
      return 0;
    }

    if (*benchmark) {
      const Setup s = resolve(bench_opt, unknown_process);
      const aeo::BenchmarkReport report = aeo::run_benchmark(s.process, s.config, repeats, bench_opt.seed, random_budget);
      std::printf("%-8s %6s %10s %8s %14s\n", "method", "runs", "successes", "rate", "median_iters");
      aeo::json rows = aeo::json::array();
      for (const aeo::BenchmarkRow* row : {&report.aeo, &report.random}) {
        std::printf("%-8s %6zu %10zu %8.3f %14s\n", row->method.c_str(), row->runs, row->successes,
                    row->success_rate(), format_median(row->median_iterations).c_str());
        aeo::json iters = aeo::json::array();
        for (const auto& it : row->iterations) iters.push_back(it ? aeo::json(*it) : aeo::json(nullptr));
        rows.push_back({{"method", row->method},
                        {"runs", row->runs},
                        {"successes", row->successes},
                        {"success_rate", row->success_rate()},
                        {"budget", row->budget},
                        {"median_iterations", row->median_iterations ? aeo::json(*row->median_iterations)
                                                                     : aeo::json(nullptr)},
                        {"iterations", iters}});
      }
      if (report_path) write_file(*report_path, aeo::json{{"rows", rows}}.dump(2) + "\n");
      return 0;
    }

    if (*analyze) {
      const aeo::TraceTable trace = aeo::trace_from_csv(read_file(analyze_trace));
      const auto reports = aeo::sensitivity_analysis(trace);
      std::printf("%-20s %-10s %6s %8s\n", "parameter", "response", "degree", "R");
      for (const aeo::FitReport& r : reports)
        std::printf("%-20s %-10s %6d %8.4f\n", r.parameter.c_str(), r.response.c_str(), r.degree, r.r);
      std::printf("\nranking (mean R)\n");
      for (const auto& [name, r] : aeo::rank_parameters(reports)) std::printf("%-20s %8.4f\n", name.c_str(), r);
      return 0;
    }

    if (*show_process) {
      CampaignOptions opt;
      opt.process = process_name;
      std::cout << aeo::process_to_json(resolve(opt, unknown_process).process).dump(2) << "\n";
      return 0;
    }

    if (*serve) {
      if (const char* env = std::getenv(aeo::kStateDirEnv); env && *env) state_dir = env;
      const auto colon = bind_address.rfind(':');
      if (colon == std::string::npos) throw aeo::ArgumentError("bind address must be host:port");
      const std::string host = bind_address.substr(0, colon);
      int port = std::stoi(bind_address.substr(colon + 1));
      aeo::Service service(state_dir);
      for (const auto& [id, why] : service.broken()) std::fprintf(stderr, "corrupt campaign %s: %s\n", id.c_str(), why.c_str());
      // Port 0 picks a free port; the chosen one is reported below.
      const bool bound = port == 0 ? (port = service.bind_any_port(host)) > 0 : service.bind(host, port);
      if (!bound) {
        std::fprintf(stderr, "aeo: cannot bind %s\n", bind_address.c_str());
        return kExitUsage;
      }
      g_service = &service;
      std::signal(SIGINT, handle_signal);
      std::signal(SIGTERM, handle_signal);
      std::fprintf(stderr, "aeo: serving %s on %s:%d\n", state_dir.c_str(), host.c_str(), port);
      service.run();
      g_service = nullptr;
      return 0;
    }
  } catch (const aeo::NumericalError& e) {
    std::fprintf(stderr, "aeo: numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "aeo: %s\n", e.what());
    return unknown_process ? kExitUnknownProcess : kExitUsage;
  }
  return kExitUsage;
}
