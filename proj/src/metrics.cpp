#include "gcsim/metrics.hpp"

#include <numeric>

#include "gcsim/config.hpp"

namespace gcsim {

EnergyBreakdown energy(const EnergyCounts& counts, const EnergyConstants& constants) {
  constexpr double kPicoToMicro = 1e-6;
  EnergyBreakdown e;
  e.router = static_cast<double>(counts.router) * constants.router * kPicoToMicro;
  e.electrical_link =
      static_cast<double>(counts.electrical_link) * constants.electrical_link * kPicoToMicro;
  e.conversion = static_cast<double>(counts.conversion) * constants.conversion * kPicoToMicro;
  e.optical_link = static_cast<double>(counts.optical_link) * constants.optical_link * kPicoToMicro;
  e.total = e.router + e.electrical_link + e.conversion + e.optical_link;
  return e;
}

MetricsReport finalize(const EventLog& log, const NetworkConfig& config) {
  MetricsReport r;
  const double cycles = static_cast<double>(log.measured_cycles);
  if (log.measured_cycles > 0) {
    r.gat = static_cast<double>(log.flits_received) / cycles;
    const std::uint64_t per_node =
        std::accumulate(log.flits_per_node.begin(), log.flits_per_node.end(), std::uint64_t{0});
    r.gat_per_node_sum = static_cast<double>(per_node) / cycles;
  }
  if (log.node_count > 0) r.throughput_per_ip = r.gat / log.node_count;

  if (!log.deliveries.empty()) {
    double total = 0;
    for (const auto& d : log.deliveries) total += static_cast<double>(d.delivered - d.created);
    r.gad = total / static_cast<double>(log.deliveries.size());
  }

  r.energy = energy(log.energy, config.energy);

  for (const auto& l : log.links) {
    LinkReport lr{l.link, l.crossings, l.failures, 0};
    if (l.crossings > 0)
      lr.retransmission_fraction = static_cast<double>(l.failures) / static_cast<double>(l.crossings);
    r.links.push_back(lr);
  }

  r.injected = log.injected;
  r.delivered = log.deliveries.size();
  r.retransmissions = log.retransmissions;
  r.alarms = log.alarms;
  if (!log.alarms.empty()) r.detection_window = log.alarms.front().window;
  if (log.first_alarm && log.cycles_after_alarm > 0)
    r.gat_after_alarm =
        static_cast<double>(log.flits_after_alarm) / static_cast<double>(log.cycles_after_alarm);
  r.mitigation_failures = log.mitigation_failures;
  return r;
}

}  // namespace gcsim
