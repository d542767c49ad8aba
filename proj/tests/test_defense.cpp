#include <gtest/gtest.h>

#include "gcsim/defense.hpp"
#include "gcsim/optical.hpp"
#include "oracles.hpp"

using namespace gcsim;

TEST(Estimate, InvertsReferenceValue) {
  EXPECT_DOUBLE_EQ(estimate_ber(256, 1000, 32, 8), 1e-3);
  EXPECT_EQ(estimate_ber(0, 1000, 32, 8), 0.0);
}

TEST(Estimate, WithinBinomialBoundOnSimulatedWindow) {
  // One window of 1000 crossings at BER 1e-3; the estimate is k / 256000.
  const double q = retransmit_probability(1e-3, 32, 8);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng = Rng::substream(seed, Rng::Domain::Test, 4);
    std::uint64_t k = 0;
    for (int i = 0; i < 1000; ++i) k += sample_transmission(q, rng) == TxOutcome::Failed;
    const double sd = std::sqrt(1000 * q * (1 - q)) / 256000;
    EXPECT_NEAR(estimate_ber(k, 1000, 32, 8), 1e-3, 3 * sd) << "seed " << seed;
  }
}

TEST(Detector, ForcedLinkAlarmsAtFirstBoundary) {
  Detector d({DetectorMode::RetxThreshold}, 1, 32, 8);
  const LinkId id = LinkId::hub_pair(1, 2);
  for (int i = 0; i < 999; ++i) EXPECT_FALSE(d.observe(0, id, true, i));
  auto alarm = d.observe(0, id, true, 999);
  ASSERT_TRUE(alarm.has_value());
  EXPECT_EQ(alarm->window, 1u);
  EXPECT_EQ(alarm->raised_cycle, 999u);
  EXPECT_DOUBLE_EQ(alarm->estimated_ber, 1.0 / 256);
}

TEST(Detector, QuietLinkNeverAlarms) {
  Detector d({DetectorMode::RetxThreshold}, 1, 32, 8);
  // Threshold 5e-4 needs more than 128 failures in 1000.
  for (int w = 0; w < 5; ++w)
    for (int i = 0; i < 1000; ++i) EXPECT_FALSE(d.observe(0, LinkId::hub_pair(1, 2), i < 128, i));
  EXPECT_EQ(d.windows_closed(0), 5u);
}

TEST(Detector, OffNeverAlarms) {
  Detector d({DetectorMode::Off}, 1, 32, 8);
  for (int i = 0; i < 5000; ++i) EXPECT_FALSE(d.observe(0, LinkId::hub_pair(1, 2), true, i));
}

TEST(Detector, AlarmWithinTwoWindowsAtAttackBer) {
  const double q = retransmit_probability(1e-3, 32, 8);
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Detector d({DetectorMode::RetxThreshold}, 1, 32, 8);
    Rng rng = Rng::substream(seed, Rng::Domain::Test, 5);
    for (int i = 0; i < 2000; ++i) {
      if (auto a = d.observe(0, LinkId::hub_pair(1, 2),
                             sample_transmission(q, rng) == TxOutcome::Failed, i)) {
        hits += a->window <= 2;
        break;
      }
    }
  }
  EXPECT_GE(hits, 19);
}

TEST(Mitigate, ChannelSelection) {
  EXPECT_EQ(select_channel(8, 0), 7u);
  EXPECT_EQ(select_channel(8, 7), 0u);
  EXPECT_EQ(select_channel(8, 4), 0u);
  EXPECT_EQ(select_channel(1, 0), 0u);
}

TEST(Mitigate, Actions) {
  Alarm alarm{LinkId::hub_pair(1, 2), 1, 1e-3, 10};
  auto fraction = [](std::uint32_t c) { return c == 0 ? 0.9 : 0.01; };
  auto e = mitigate({MitigationAction::RerouteElectrical}, alarm, 8, fraction);
  EXPECT_EQ(e.avoid, LinkId::hub_pair(1, 2));
  EXPECT_FALSE(e.allow_relay);
  auto f = mitigate({MitigationAction::RerouteFabric}, alarm, 8, fraction);
  EXPECT_TRUE(f.allow_relay);
  auto w = mitigate({MitigationAction::WavelengthShift}, alarm, 8, fraction);
  EXPECT_EQ(w.channel, 7u);
  EXPECT_FALSE(w.avoid);
  auto n = mitigate({MitigationAction::None}, alarm, 8, fraction);
  EXPECT_FALSE(n.avoid || n.channel);
}

TEST(Mitigate, WavelengthShiftNeverWorsensBer) {
  AttackSpec a;
  for (std::uint32_t attacker = 0; attacker < 8; ++attacker) {
    a.channel = attacker;
    a.ber = 3.5e-3;
    const std::uint32_t chosen = select_channel(8, attacker);
    for (std::uint32_t c = 0; c < 8; ++c)
      EXPECT_LE(channel_ber(a, LinkId::hub_pair(1, 2), chosen),
                channel_ber(a, LinkId::hub_pair(1, 2), c));
  }
}

TEST(Mitigate, NamesRoundTrip) {
  for (auto a : {MitigationAction::None, MitigationAction::RerouteElectrical,
                 MitigationAction::RerouteFabric, MitigationAction::WavelengthShift})
    EXPECT_EQ(parse_mitigation(to_string(a)), a);
  for (auto m : {DetectorMode::Off, DetectorMode::RetxThreshold, DetectorMode::PilotTone})
    EXPECT_EQ(parse_detector(to_string(m)), m);
}
