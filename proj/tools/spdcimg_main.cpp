// spdcimg command-line front end.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "spdcimg/coincidence.hpp"
#include "spdcimg/error.hpp"
#include "spdcimg/experiment.hpp"
#include "spdcimg/scan_file.hpp"
#include "spdcimg/verification.hpp"

namespace fs = std::filesystem;
using namespace spdcimg;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kVerifyFailed = 2;

struct Options {
  std::string config;
  std::string out = ".";
  std::string mode;
  std::optional<std::uint64_t> seed;
  bool full_map = false;
};

void print_grids(const ExperimentConfig& cfg, bool pump, bool coincidence) {
  if (pump) {
    const auto g = choose_pump_grid(cfg);
    std::printf("pump grid: n = %zu, dx = %.4g um (%s, sampling margin %.2f)\n", g.grid.size(), g.grid.dx() * 1e6,
                g.note.c_str(), g.margin);
  }
  if (coincidence) {
    const auto g = choose_coincidence_grid(cfg);
    std::printf("coincidence grid: n = %zu, dx = %.4g um (%s, sampling margin %.2f)\n", g.grid.size(),
                g.grid.dx() * 1e6, g.note.c_str(), g.margin);
  }
}

fs::path output_path(const Options& o, const std::string& name) {
  fs::create_directories(o.out);
  return fs::path(o.out) / name;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << text;
}

void write_map(const Options& o, const ExperimentConfig& cfg) {
  const auto model = build_coincidence_model(cfg);
  const auto rho = linspace(-cfg.detection.range, cfg.detection.range, cfg.detection.steps);
  const auto c = coincidence_map(model, rho, rho);
  std::string text = "# rho_i_mm rho_s_mm rate (unnormalised, point detectors)\n";
  char buf[96];
  for (std::size_t i = 0; i < rho.size(); ++i) {
    for (std::size_t j = 0; j < rho.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.9f %.9f %.12e\n", rho[i] * 1e3, rho[j] * 1e3, c[i * rho.size() + j]);
      text += buf;
    }
  }
  const auto path = output_path(o, "coincidence_map.txt");
  write_text(path, text);
  std::printf("wrote %s\n", path.string().c_str());
}

int run(const std::string& command, const Options& o) {
  ExperimentConfig cfg = load_config(o.config);
  if (o.seed) {
    cfg.noise.seed = *o.seed;
  }
  if (!o.mode.empty()) {
    auto m = parse_scan_mode(o.mode);
    if (!m || *m == ScanMode::pump_intensity) throw InvalidArgument("--mode must be fixed, fixed-idler, same or opposite");
    cfg.detection.mode = *m;
  }

  if (command == "pump-scan") {
    print_grids(cfg, true, false);
    const auto path = output_path(o, "pump.scan");
    write_scan_file(path, run_pump_scan(cfg), cfg);
    std::printf("wrote %s\n", path.string().c_str());
    return kOk;
  }
  if (command == "coincidence-scan") {
    print_grids(cfg, false, true);
    const auto path = output_path(o, std::string("coincidence_") + to_string(cfg.detection.mode) + ".scan");
    write_scan_file(path, run_coincidence_scan(cfg, cfg.detection.mode), cfg);
    std::printf("wrote %s\n", path.string().c_str());
    if (o.full_map) write_map(o, cfg);
    return kOk;
  }
  if (command == "verify") {
    print_grids(cfg, true, true);
    const auto report = run_verification(cfg);
    const std::string text = report.to_text();
    std::fputs(text.c_str(), stdout);
    write_text(output_path(o, "verify.txt"), text);
    return report.all_passed() ? kOk : kVerifyFailed;
  }
  if (command == "reproduce-fig2" || command == "reproduce-fig3") {
    print_grids(cfg, true, true);
    const FigureReport rep = command == "reproduce-fig2" ? reproduce_fig2(cfg) : reproduce_fig3(cfg);
    for (const auto& [stem, scan] : rep.scans) {
      const auto path = output_path(o, stem + ".scan");
      write_scan_file(path, scan, cfg);
      std::printf("wrote %s\n", path.string().c_str());
    }
    const std::string summary = rep.summary();
    write_text(output_path(o, command.substr(10) + "_summary.txt"), summary);
    std::fputs(summary.c_str(), stdout);
    return rep.pass() ? kOk : kVerifyFailed;
  }
  throw InvalidArgument("unknown command " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SPDC coincidence imaging simulator"};
  app.require_subcommand(1);
  Options o;
  const char* commands[][2] = {
      {"pump-scan", "D3 pump intensity scan"},
      {"coincidence-scan", "coincidence scan in the configured (or --mode) scan mode"},
      {"verify", "run the invariant suite and write a pass/fail report"},
      {"reproduce-fig2", "angular spectrum transfer: pump, fixed and same scans plus fringe periods"},
      {"reproduce-fig3", "imaging: pump, fixed and same scans plus peak separations"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", o.config, "experiment config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    sub->add_option("--mode", o.mode, "scan mode: fixed, fixed-idler, same, opposite");
    sub->add_option("--seed", o.seed, "noise seed (overrides the config)");
    sub->add_flag("--full-map", o.full_map, "also write C(rho_i, rho_s) on the scan positions (small grids)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }
  try {
    return run(app.get_subcommands().front()->get_name(), o);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInvalid;
  }
}
