#pragma once

#include "spdcimg/scan.hpp"

namespace spdcimg {

/// Dominant fringe period of a uniformly sampled scan: spectrum peak of the
/// mean-subtracted rates (16x zero padding), refined by a parabola through
/// the peak bin and its neighbours. Throws DomainError for flat scans or
/// fewer than 3 fringes inside the scan.
double fringe_period(const ScanResult& scan);

/// Distance between the centroids of the two peaks of a scan. Each centroid
/// is rate-weighted over the peak's half-maximum support, found after a
/// light [1 2 1] smoothing. Throws DomainError unless exactly two peaks remain.
double peak_separation(const ScanResult& scan);

/// (max - min) / (max + min) of the rates.
double visibility(const ScanResult& scan);

}  // namespace spdcimg
