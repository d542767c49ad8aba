#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "gcsim/rng.hpp"
#include "gcsim/types.hpp"

namespace gcsim {

enum class TrafficPattern : std::uint8_t { Random, BitReversal, Shuffle, HotSpot };

std::string_view to_string(TrafficPattern p);
std::optional<TrafficPattern> parse_traffic(std::string_view name);

struct TrafficSpec {
  TrafficPattern pattern = TrafficPattern::Random;
  double injection_rate = 0.005;  // flits/cycle/node
  NodeId hotspot_node = 3;
  double hotspot_fraction = 0.2;

  friend bool operator==(const TrafficSpec&, const TrafficSpec&) = default;
};

bool is_power_of_two(std::uint32_t n);

/// Reverses the low `bits` bits of `index`.
std::uint32_t reverse_bits(std::uint32_t index, std::uint32_t bits);

/// Destination for a packet from `source`. Bit permutations may map a node
/// onto itself; the caller drops such packets. Throws ConfigError when a bit
/// permutation is asked for on a non-power-of-two node count.
NodeId pick_destination(const TrafficSpec& spec, NodeId source, std::uint32_t node_count,
                        Rng& rng);

/// Per-cycle packet start probability for a flit-level injection rate.
double packet_probability(const TrafficSpec& spec, std::uint32_t packet_flits);

/// One Bernoulli draw per node per cycle.
bool maybe_inject(const TrafficSpec& spec, std::uint32_t packet_flits, Rng& rng);

}  // namespace gcsim
