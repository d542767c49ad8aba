#pragma once

#include <cstdint>
#include <vector>

#include "gcsim/rng.hpp"
#include "gcsim/types.hpp"

namespace gcsim {

/// A gain-competition attacker: a hub that jams one wavelength channel and
/// degrades the BER of the optical links it sits on.
struct AttackSpec {
  bool enabled = true;
  HubId malicious_hub = 1;
  std::vector<LinkId> links{LinkId::hub_pair(1, 2)};
  double ber = 1e-3;
  std::uint32_t channel = 0;
  double decay = 0.5;  // decades of BER lost per channel of separation
  double floor_ber = 1e-9;

  bool attacks(const LinkId& link) const;

  friend bool operator==(const AttackSpec&, const AttackSpec&) = default;
};

/// Timing constants, all in cycles.
struct Timing {
  std::uint32_t router_latency = 1;
  std::uint32_t link_latency = 1;
  std::uint32_t optical_latency = 1;
  std::uint32_t ack_latency = 2;

  friend bool operator==(const Timing&, const Timing&) = default;
};

/// Probability that a packet of `packet_flits` flits of `flit_bits` bits
/// carries at least one bit error, linearised as ber * f * p and clamped to 1.
double retransmit_probability(double ber, std::uint32_t flit_bits, std::uint32_t packet_flits);

/// Effective BER on `link` for traffic carried on wavelength `channel`.
double channel_ber(const AttackSpec& attack, const LinkId& link, std::uint32_t channel);

enum class TxOutcome : std::uint8_t { Delivered, Failed };

TxOutcome sample_transmission(double probability, Rng& rng);

/// Failed-acknowledgement turnaround before a retransmission may start.
std::uint32_t round_trip_delay(const LinkId& link, const Timing& timing);

}  // namespace gcsim
