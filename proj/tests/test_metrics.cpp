#include <gtest/gtest.h>

#include "gcsim/config.hpp"
#include "gcsim/engine.hpp"
#include "gcsim/metrics.hpp"

using namespace gcsim;

TEST(Finalize, ThroughputArithmetic) {
  EventLog log;
  log.measured_cycles = 10'000;
  log.node_count = 16;
  log.flits_received = 800;
  log.flits_per_node.assign(16, 50);
  MetricsReport r = finalize(log, NetworkConfig{});
  EXPECT_DOUBLE_EQ(r.gat, 0.08);
  EXPECT_DOUBLE_EQ(r.throughput_per_ip, 0.005);
  EXPECT_EQ(r.gat, r.gat_per_node_sum);
  EXPECT_EQ(r.throughput_per_ip * 16, r.gat);
}

TEST(Finalize, AverageDelay) {
  EventLog log;
  log.measured_cycles = 100;
  log.node_count = 4;
  log.deliveries = {{1, 0, 10, 0}, {2, 5, 35, 0}};
  EXPECT_DOUBLE_EQ(*finalize(log, NetworkConfig{}).gad, 20.0);
}

TEST(Finalize, NoDeliveriesMeansNoDelay) {
  EventLog log;
  log.measured_cycles = 100;
  log.node_count = 4;
  EXPECT_FALSE(finalize(log, NetworkConfig{}).gad.has_value());
}

TEST(Finalize, LinkFraction) {
  EventLog log;
  log.links = {{LinkId::hub_pair(1, 2), 80, 20}, {LinkId::hub_pair(2, 1), 0, 0}};
  MetricsReport r = finalize(log, NetworkConfig{});
  EXPECT_DOUBLE_EQ(r.links[0].retransmission_fraction, 0.25);
  EXPECT_EQ(r.links[1].retransmission_fraction, 0.0);
}

TEST(Finalize, ForcedFailuresCountedPerCrossing) {
  // 50 packets each fail once on a prob-1 link and then succeed: every
  // packet crosses twice.
  EventLog log;
  log.links = {{LinkId::hub_pair(1, 2), 0, 0}};
  for (int packet = 0; packet < 50; ++packet) {
    for (bool failed : {true, false}) {
      ++log.links[0].crossings;
      log.links[0].failures += failed;
    }
  }
  const MetricsReport r = finalize(log, NetworkConfig{});
  EXPECT_EQ(r.links[0].failures, 50u);
  EXPECT_EQ(r.links[0].crossings, 100u);
  EXPECT_DOUBLE_EQ(r.links[0].retransmission_fraction, 0.5);
}

TEST(Finalize, EngineTalliesMatchTrace) {
  NetworkConfig c;
  c.traffic.injection_rate = 0;
  c.warmup = 0;
  c.cycles = 20'000;
  c.attack.ber = 1.0;
  Simulator sim(c);
  sim.set_trace(true);
  const auto li = *sim.network().fabric.find(LinkId::hub_pair(1, 2));
  for (int i = 0; i < 50; ++i) sim.inject(2, 8);
  for (int i = 0; i < 3000; ++i) sim.step();
  std::uint64_t failures = 0;
  for (const auto& e : sim.trace())
    if (e.kind == OpticalEvent::Kind::Failed && e.link == li) ++failures;
  const MetricsReport r = finalize(sim.log(), c);
  EXPECT_GT(failures, 50u);
  EXPECT_EQ(r.links[li].failures, failures);
  EXPECT_EQ(r.links[li].crossings, failures);
  EXPECT_DOUBLE_EQ(r.links[li].retransmission_fraction, 1.0);
}

TEST(Energy, ZeroAndLinear) {
  EXPECT_EQ(energy({}, {}).total, 0.0);
  EnergyCounts c{100, 200, 30, 40};
  EnergyCounts d{200, 400, 60, 80};
  EXPECT_DOUBLE_EQ(energy(d, {}).total, 2 * energy(c, {}).total);
  // 100 + 100 + 60 + 4 pJ
  EXPECT_DOUBLE_EQ(energy(c, {}).total, 264e-6);
}

TEST(Energy, StrictlyIncreasingInRetransmissionEvents) {
  EnergyCounts base{100, 200, 30, 40};
  EnergyCounts more = base;
  more.conversion += 16;
  more.optical_link += 8;
  EXPECT_GT(energy(more, {}).total, energy(base, {}).total);
}
