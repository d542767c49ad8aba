#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gcsim/topology.hpp"

namespace gcsim {

struct RoutingPolicy {
  bool allow_relay = false;          // fabric detours through other hubs
  bool electrical_fallback = true;   // all-electrical XY when no fabric path
};

/// Decision taken once, when a packet is created.
struct RoutePlan {
  bool optical = false;
  HubId src_hub = 0;
  HubId dst_hub = 0;
  std::vector<std::uint32_t> links;  // fabric link indices, in order

  friend bool operator==(const RoutePlan&, const RoutePlan&) = default;
};

/// Which part of a hierarchical route a packet is on.
enum class Leg : std::uint8_t { ToSourceHub, ToDestination };

/// Hierarchical route for src -> dst. Same-cluster traffic is pure XY;
/// inter-cluster traffic goes XY to the local hub, across the fabric, then XY
/// from the remote attach node. Returns nullopt when the avoid set removes
/// every fabric path and electrical fallback is disabled.
std::optional<RoutePlan> plan_route(const Network& net, NodeId src, NodeId dst,
                                    const AvoidSet& avoid, const RoutingPolicy& policy);

/// Dimension-ordered (X then Y) output port from `current` toward `target`;
/// Local when they coincide.
Port xy_port(const Mesh& mesh, NodeId current, NodeId target);

/// Output port a head flit takes at router `current`.
Port next_port(const Mesh& mesh, NodeId current, NodeId dst, const RoutePlan& plan, Leg leg);

struct PathHop {
  enum class Kind : std::uint8_t { Node, Hub, Link };
  Kind kind = Kind::Node;
  std::uint32_t id = 0;

  static PathHop node(NodeId n) { return {Kind::Node, n}; }
  static PathHop hub(HubId h) { return {Kind::Hub, h}; }
  static PathHop link(std::uint32_t l) { return {Kind::Link, l}; }

  friend bool operator==(const PathHop&, const PathHop&) = default;
};

using Path = std::vector<PathHop>;

/// Every router, hub and optical link a packet following `plan` visits.
Path predict_path(const Network& net, NodeId src, NodeId dst, const RoutePlan& plan);

/// "N1 N9 H0 H0->H2 H2 N54 N55".
std::string format_path(const Network& net, const Path& path);

/// Next step from a router or hub: an output port, or a fabric link index.
using NextHop = std::variant<Port, std::uint32_t>;

struct RouterAt {
  NodeId node;
};
struct HubAt {
  HubId hub;
};

/// Single-step form of plan_route for callers that do not keep a plan.
std::optional<NextHop> route(const Network& net, std::variant<RouterAt, HubAt> current, NodeId src,
                             NodeId dst, const AvoidSet& avoid, const RoutingPolicy& policy);

}  // namespace gcsim
