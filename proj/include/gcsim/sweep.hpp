#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gcsim/config.hpp"
#include "gcsim/metrics.hpp"

namespace gcsim {

struct SweepPoint {
  double ber = 0;
  TrafficPattern traffic = TrafficPattern::Random;
  FabricKind topology = FabricKind::Direct;
  std::uint64_t seed = 0;
  NetworkConfig config;
};

/// One CSV line. Seed-averaged rows have no seed.
struct SweepRow {
  double ber = 0;
  TrafficPattern traffic = TrafficPattern::Random;
  FabricKind topology = FabricKind::Direct;
  std::optional<std::uint64_t> seed;
  std::string config_hash;
  double gat = 0;
  double throughput_per_ip = 0;
  std::optional<double> gad;
  double energy_total = 0;
  double retx_count = 0;
  double alarms = 0;
  std::optional<double> detection_window;
};

struct SweepResult {
  std::vector<SweepRow> rows;            // per-seed rows then averages, sorted by key
  std::vector<SweepPoint> points;        // in row order of the per-seed rows
  std::vector<MetricsReport> reports;    // parallel to points
};

/// Cartesian product ber x traffic x topology x seed, in key order.
std::vector<SweepPoint> expand_sweep(const ExperimentConfig& experiment);

/// Runs every point on up to `jobs` worker threads. The result does not
/// depend on `jobs` or on completion order.
SweepResult run_sweep(const ExperimentConfig& experiment, unsigned jobs);

/// Runs exactly the given points.
SweepResult run_points(std::vector<SweepPoint> points, unsigned jobs, bool with_averages);

SweepRow make_row(const SweepPoint& point, const MetricsReport& report);

/// Arithmetic mean over rows sharing (ber, traffic, topology).
std::vector<SweepRow> average_rows(const std::vector<SweepRow>& rows);

inline constexpr const char* kCsvHeader =
    "ber,traffic,topology,seed,config_hash,gat,throughput_per_ip,gad,energy_total,retx_count,"
    "alarms,detection_window";

std::string to_csv(const std::vector<SweepRow>& rows);
std::string alarms_csv(const SweepResult& result);
std::string to_json(const SweepResult& result, const ExperimentConfig& experiment);

}  // namespace gcsim
