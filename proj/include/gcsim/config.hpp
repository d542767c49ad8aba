#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcsim/defense.hpp"
#include "gcsim/metrics.hpp"
#include "gcsim/optical.hpp"
#include "gcsim/topology.hpp"
#include "gcsim/traffic.hpp"

namespace gcsim {

std::string_view to_string(FabricKind k);
std::optional<FabricKind> parse_fabric(std::string_view name);

/// Sweep-facing topology names: "mesh" is the direct hub fabric.
std::string_view topology_name(FabricKind k);
std::optional<FabricKind> parse_topology_name(std::string_view name);

struct TopologyConfig {
  std::uint32_t width = 4;
  std::uint32_t height = 4;
  std::optional<ClusterLayout> layout;  // defaults by size when absent

  ClusterLayout resolved_layout() const;

  friend bool operator==(const TopologyConfig&, const TopologyConfig&) = default;
};

/// Complete description of one simulation run.
struct NetworkConfig {
  TopologyConfig topology;
  FabricKind fabric = FabricKind::Direct;
  TrafficSpec traffic;
  AttackSpec attack;
  DetectorSpec detector;
  MitigationSpec mitigation;
  Timing timing;
  EnergyConstants energy;

  std::uint32_t flit_bits = 32;
  std::uint32_t packet_flits = 8;
  std::uint32_t buffer_depth = 4;
  std::uint32_t hub_queue_packets = 4;
  std::uint32_t channels = 8;
  bool electrical_fallback = true;

  Cycle cycles = 100'000;
  Cycle warmup = 5'000;
  Cycle drain = 20'000;  // extra cycles without injection to empty the network
  std::uint64_t seed = 1;

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

struct SweepSpec {
  std::vector<double> bers{1e-9, 1e-6, 1e-5, 1e-4, 1e-3, 2e-3, 3e-3, 3.5e-3};
  std::vector<TrafficPattern> traffics{TrafficPattern::Random, TrafficPattern::BitReversal,
                                       TrafficPattern::Shuffle, TrafficPattern::HotSpot};
  std::vector<FabricKind> topologies{FabricKind::Direct};
  std::uint32_t seeds = 5;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct ExperimentConfig {
  NetworkConfig network;
  SweepSpec sweep;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses the flat `key: value` config format. Unknown keys, malformed
/// values and range violations throw ConfigError naming the key and line.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Every key with its resolved value, in a form parse_config() accepts.
std::string serialize_config(const ExperimentConfig& config);

/// Shortest decimal form that reads back to the same double.
std::string format_number(double value);

/// FNV-1a over the serialized network config, as 16 hex digits.
std::string config_hash(const NetworkConfig& config);

}  // namespace gcsim
