#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gcsim/types.hpp"

namespace gcsim {

struct NetworkConfig;

/// Energy per flit event, in picojoules.
struct EnergyConstants {
  double router = 1.0;
  double electrical_link = 0.5;
  double conversion = 2.0;
  double optical_link = 0.1;

  friend bool operator==(const EnergyConstants&, const EnergyConstants&) = default;
};

/// Flit-granularity event counts feeding the energy model.
struct EnergyCounts {
  std::uint64_t router = 0;
  std::uint64_t electrical_link = 0;
  std::uint64_t conversion = 0;
  std::uint64_t optical_link = 0;

  friend bool operator==(const EnergyCounts&, const EnergyCounts&) = default;
};

/// Microjoules, broken down by event class.
struct EnergyBreakdown {
  double router = 0;
  double electrical_link = 0;
  double conversion = 0;
  double optical_link = 0;
  double total = 0;
};

EnergyBreakdown energy(const EnergyCounts& counts, const EnergyConstants& constants);

struct Alarm {
  LinkId link;
  std::uint64_t window = 0;  // 1-based
  double estimated_ber = 0;
  Cycle raised_cycle = 0;
};

/// Raw material collected by a run; finalize() reduces it to a report.
struct EventLog {
  struct Delivery {
    NodeId destination = 0;
    Cycle created = 0;
    Cycle delivered = 0;
    std::uint32_t retransmissions = 0;
  };
  struct LinkTally {
    LinkId link;
    std::uint64_t crossings = 0;
    std::uint64_t failures = 0;
  };

  Cycle measured_cycles = 0;
  std::uint32_t node_count = 0;
  std::uint64_t flits_received = 0;              // global counter
  std::vector<std::uint64_t> flits_per_node;     // per-destination counters
  std::vector<Delivery> deliveries;              // packets whose tail arrived
  std::vector<LinkTally> links;
  EnergyCounts energy;
  std::uint64_t injected = 0;
  std::uint64_t retransmissions = 0;
  std::vector<Alarm> alarms;
  std::uint64_t mitigation_failures = 0;
  // Flits received after the first alarm, and the cycles they span.
  std::optional<Cycle> first_alarm;
  std::uint64_t flits_after_alarm = 0;
  Cycle cycles_after_alarm = 0;
};

struct LinkReport {
  LinkId link;
  std::uint64_t crossings = 0;
  std::uint64_t failures = 0;
  double retransmission_fraction = 0;
};

/// Whole-run packet accounting taken at the end of the run.
struct Conservation {
  std::uint64_t injected = 0;
  std::uint64_t delivered = 0;
  std::uint64_t in_flight = 0;
  std::uint64_t retained = 0;
  bool holds() const { return injected == delivered + in_flight + retained; }
};

struct MetricsReport {
  double gat = 0;                  // flits/cycle, network-wide
  double gat_per_node_sum = 0;     // same quantity from per-node counters
  double throughput_per_ip = 0;    // flits/cycle/IP
  std::optional<double> gad;       // cycles; absent when nothing was delivered
  EnergyBreakdown energy;
  std::vector<LinkReport> links;
  std::uint64_t injected = 0;
  std::uint64_t delivered = 0;
  std::uint64_t retransmissions = 0;
  std::vector<Alarm> alarms;
  std::optional<std::uint64_t> detection_window;
  std::optional<double> gat_after_alarm;
  std::uint64_t mitigation_failures = 0;
  Conservation conservation;
};

/// Pure reduction of a post-warmup event log.
MetricsReport finalize(const EventLog& log, const NetworkConfig& config);

}  // namespace gcsim
