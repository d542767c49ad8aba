#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gcsim {

using NodeId = std::uint32_t;
using HubId = std::uint32_t;
using PacketId = std::uint32_t;
using Cycle = std::uint64_t;

enum class Port : std::uint8_t { North, South, East, West, Local, HubLink };
inline constexpr int kPortCount = 6;

constexpr int port_index(Port p) { return static_cast<int>(p); }

std::string_view to_string(Port p);

/// Raised for any inconsistent or out-of-range experiment description.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Identity of a directed link in the hybrid network.
///
/// Electrical links are named by the sending router and its output port.
/// Optical links are either a hub pair (direct fabric) or a stage output
/// line of a multistage fabric.
struct LinkId {
  enum class Kind : std::uint8_t { Electrical, HubPair, StageLine };

  Kind kind = Kind::HubPair;
  std::uint32_t a = 0;  // node | source hub | stage
  std::uint32_t b = 0;  // port | destination hub | line

  static LinkId electrical(NodeId node, Port port) {
    return {Kind::Electrical, node, static_cast<std::uint32_t>(port)};
  }
  static LinkId hub_pair(HubId from, HubId to) { return {Kind::HubPair, from, to}; }
  static LinkId stage_line(std::uint32_t stage, std::uint32_t line) {
    return {Kind::StageLine, stage, line};
  }

  bool optical() const { return kind != Kind::Electrical; }

  friend bool operator==(const LinkId&, const LinkId&) = default;
  friend auto operator<=>(const LinkId&, const LinkId&) = default;
};

/// "H1->H2", "S0.3" or "N5.East".
std::string to_string(const LinkId& id);

/// Parses the textual forms produced by to_string(LinkId).
std::optional<LinkId> parse_link_id(std::string_view text);

}  // namespace gcsim
