#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "gcsim/config.hpp"
#include "gcsim/metrics.hpp"
#include "gcsim/routing.hpp"
#include "gcsim/topology.hpp"

namespace gcsim {

struct PacketRecord {
  NodeId src = 0;
  NodeId dst = 0;
  Cycle created = 0;
  std::optional<Cycle> delivered;
  std::uint32_t retransmissions = 0;
  std::uint32_t flits_delivered = 0;
  bool in_order = true;  // every ejected flit carried the expected sequence number
  RoutePlan plan;
  Leg leg = Leg::ToSourceHub;
  Path path;  // routers, hubs and optical links actually crossed
};

/// Optical activity, recorded when tracing is enabled.
struct OpticalEvent {
  enum class Kind : std::uint8_t { Start, Delivered, Failed, Requeued };
  Kind kind;
  std::uint32_t link;
  PacketId packet;
  Cycle cycle;
};

/// Cycle-accurate hybrid electrical/optical NoC.
///
/// Each step() runs five phases in a fixed order: traffic injection, router
/// switch allocation and link traversal, optical transmission with tail-flit
/// error sampling, retransmission release, and metrics/defense bookkeeping.
class Simulator {
 public:
  explicit Simulator(const NetworkConfig& config);
  ~Simulator();
  Simulator(Simulator&&) noexcept;
  Simulator& operator=(Simulator&&) noexcept;

  void step();

  /// Runs the configured cycles, then drains without injection for at most
  /// `drain` cycles, and reduces the post-warmup events to a report.
  MetricsReport run();

  Cycle now() const;
  const NetworkConfig& config() const;
  const Network& network() const;

  /// Queues a packet at `src` as if the traffic generator had produced it
  /// this cycle. Returns its id.
  PacketId inject(NodeId src, NodeId dst);
  void set_injection_enabled(bool enabled);

  const std::vector<PacketRecord>& packets() const;
  const AvoidSet& avoid_set() const;
  std::uint32_t link_channel(std::uint32_t link) const;

  /// Walks every buffer, queue and wire and counts the packets it finds.
  Conservation census() const;
  bool idle() const;

  void set_trace(bool enabled);
  const std::vector<OpticalEvent>& trace() const;

  const EventLog& log() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Convenience: Simulator(config).run().
MetricsReport run(const NetworkConfig& config);

}  // namespace gcsim
