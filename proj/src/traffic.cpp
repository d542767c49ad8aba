#include "gcsim/traffic.hpp"

#include <array>
#include <string>

namespace gcsim {

namespace {

constexpr std::array<std::string_view, 4> kNames = {"random", "bitreversal", "shuffle", "hotspot"};

std::uint32_t index_bits(std::uint32_t node_count) {
  std::uint32_t bits = 0;
  while ((1u << bits) < node_count) ++bits;
  return bits;
}

NodeId uniform_other(NodeId source, std::uint32_t node_count, Rng& rng) {
  NodeId d;
  do {
    d = static_cast<NodeId>(rng.below(node_count));
  } while (d == source);
  return d;
}

}  // namespace

std::string_view to_string(TrafficPattern p) { return kNames[static_cast<std::size_t>(p)]; }

std::optional<TrafficPattern> parse_traffic(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (name == kNames[i]) return static_cast<TrafficPattern>(i);
  return std::nullopt;
}

bool is_power_of_two(std::uint32_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::uint32_t reverse_bits(std::uint32_t index, std::uint32_t bits) {
  std::uint32_t out = 0;
  for (std::uint32_t i = 0; i < bits; ++i) out |= ((index >> i) & 1u) << (bits - 1 - i);
  return out;
}

NodeId pick_destination(const TrafficSpec& spec, NodeId source, std::uint32_t node_count,
                        Rng& rng) {
  if (node_count < 2) throw ConfigError("traffic needs at least two nodes");
  switch (spec.pattern) {
    case TrafficPattern::Random:
      return uniform_other(source, node_count, rng);
    case TrafficPattern::BitReversal:
    case TrafficPattern::Shuffle: {
      if (!is_power_of_two(node_count))
        throw ConfigError("traffic pattern " + std::string(to_string(spec.pattern)) +
                          " needs a power-of-two node count, got " + std::to_string(node_count));
      const std::uint32_t bits = index_bits(node_count);
      if (spec.pattern == TrafficPattern::BitReversal) return reverse_bits(source, bits);
      const std::uint32_t mask = node_count - 1;
      return ((source << 1) | (source >> (bits - 1))) & mask;
    }
    case TrafficPattern::HotSpot:
      if (rng.uniform() < spec.hotspot_fraction) return spec.hotspot_node;
      return uniform_other(source, node_count, rng);
  }
  return source;
}

double packet_probability(const TrafficSpec& spec, std::uint32_t packet_flits) {
  return spec.injection_rate / static_cast<double>(packet_flits);
}

bool maybe_inject(const TrafficSpec& spec, std::uint32_t packet_flits, Rng& rng) {
  const double p = packet_probability(spec, packet_flits);
  if (p <= 0) return false;
  return rng.bernoulli(p);
}

}  // namespace gcsim
