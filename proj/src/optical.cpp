#include "gcsim/optical.hpp"

#include <algorithm>
#include <cmath>

namespace gcsim {

bool AttackSpec::attacks(const LinkId& link) const {
  return enabled && std::find(links.begin(), links.end(), link) != links.end();
}

double retransmit_probability(double ber, std::uint32_t flit_bits, std::uint32_t packet_flits) {
  const double p = ber * static_cast<double>(flit_bits) * static_cast<double>(packet_flits);
  return std::clamp(p, 0.0, 1.0);
}

double channel_ber(const AttackSpec& attack, const LinkId& link, std::uint32_t channel) {
  if (!attack.attacks(link)) return attack.floor_ber;
  const double distance =
      channel > attack.channel ? channel - attack.channel : attack.channel - channel;
  if (distance == 0) return std::max(attack.floor_ber, attack.ber);
  return std::max(attack.floor_ber, attack.ber * std::pow(10.0, -attack.decay * distance));
}

TxOutcome sample_transmission(double probability, Rng& rng) {
  // One draw per crossing, whatever the probability, keeps every link's
  // stream aligned across BER settings.
  const double u = rng.uniform();
  return u < probability ? TxOutcome::Failed : TxOutcome::Delivered;
}

std::uint32_t round_trip_delay(const LinkId& /*link*/, const Timing& timing) {
  return 2 * timing.optical_latency + timing.ack_latency;
}

}  // namespace gcsim
