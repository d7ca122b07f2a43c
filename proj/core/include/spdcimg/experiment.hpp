#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spdcimg/coincidence.hpp"
#include "spdcimg/config.hpp"
#include "spdcimg/scan.hpp"

namespace spdcimg {

/// A grid together with how it was chosen. margin = n dx^2 over the smallest
/// value the free-space steps allow (must exceed 1).
struct GridChoice {
  Grid grid;
  bool automatic = false;
  double margin = 0.0;
  std::string note;
};

/// Pump grid. Auto dx is a/8 for a double slit (8 samples per slit) provided
/// every pump free-space step keeps a margin of 2; otherwise ConfigError
/// naming the n that would work.
GridChoice choose_pump_grid(const ExperimentConfig& config);

/// Coincidence grid. Auto dx makes n dx^2 = 1.25 times the largest of
/// lambda_s |d| over the arm envelope steps and lambda_p z1 / 2 for the
/// pump's half-band propagation to the crystal.
GridChoice choose_coincidence_grid(const ExperimentConfig& config);

/// [-range, range] for pump, same and opposite scans; twice that for fixed scans.
std::vector<double> scan_positions(const ExperimentConfig& config, ScanMode mode);

ScanResult run_pump_scan(const ExperimentConfig& config);
CoincidenceModel build_coincidence_model(const ExperimentConfig& config);
ScanConfig make_scan_config(const ExperimentConfig& config, ScanMode mode);
ScanResult run_coincidence_scan(const ExperimentConfig& config, ScanMode mode, Method method = Method::fast);

struct RatioCheck {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;  // relative
  bool pass() const;
};

struct FigureReport {
  std::string name;
  std::vector<std::pair<std::string, ScanResult>> scans;  // file stem, scan
  std::vector<std::pair<std::string, double>> measurements;
  std::vector<RatioCheck> checks;
  bool pass() const;
  std::string summary() const;
};

/// No-lens angular spectrum transfer: pump, fixed and same scans with fringe periods.
FigureReport reproduce_fig2(const ExperimentConfig& config);
/// Imaging: pump, fixed and same scans with peak separations.
FigureReport reproduce_fig3(const ExperimentConfig& config);

}  // namespace spdcimg
