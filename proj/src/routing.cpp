#include "gcsim/routing.hpp"

namespace gcsim {

std::optional<RoutePlan> plan_route(const Network& net, NodeId src, NodeId dst,
                                    const AvoidSet& avoid, const RoutingPolicy& policy) {
  const Mesh& mesh = net.mesh;
  const HubId src_hub = mesh.cluster_of(src);
  const HubId dst_hub = mesh.cluster_of(dst);
  RoutePlan plan;
  if (src_hub == dst_hub) return plan;

  if (auto links = net.fabric.path(src_hub, dst_hub, avoid, policy.allow_relay)) {
    plan.optical = true;
    plan.src_hub = src_hub;
    plan.dst_hub = dst_hub;
    plan.links = std::move(*links);
    return plan;
  }
  if (policy.electrical_fallback) return plan;
  return std::nullopt;
}

Port xy_port(const Mesh& mesh, NodeId current, NodeId target) {
  const Coord c = mesh.coord(current);
  const Coord t = mesh.coord(target);
  if (c.x < t.x) return Port::East;
  if (c.x > t.x) return Port::West;
  if (c.y < t.y) return Port::South;
  if (c.y > t.y) return Port::North;
  return Port::Local;
}

Port next_port(const Mesh& mesh, NodeId current, NodeId dst, const RoutePlan& plan, Leg leg) {
  if (plan.optical && leg == Leg::ToSourceHub) {
    const NodeId attach = mesh.attach_node(plan.src_hub);
    return current == attach ? Port::HubLink : xy_port(mesh, current, attach);
  }
  return xy_port(mesh, current, dst);
}

namespace {

void append_xy(const Mesh& mesh, NodeId from, NodeId to, Path& path) {
  NodeId cur = from;
  while (cur != to) {
    cur = *mesh.neighbor(cur, xy_port(mesh, cur, to));
    path.push_back(PathHop::node(cur));
  }
}

}  // namespace

Path predict_path(const Network& net, NodeId src, NodeId dst, const RoutePlan& plan) {
  const Mesh& mesh = net.mesh;
  Path path{PathHop::node(src)};
  if (!plan.optical) {
    append_xy(mesh, src, dst, path);
    return path;
  }
  append_xy(mesh, src, mesh.attach_node(plan.src_hub), path);
  path.push_back(PathHop::hub(plan.src_hub));
  for (std::uint32_t li : plan.links) {
    path.push_back(PathHop::link(li));
    const auto& link = net.fabric.links()[li];
    if (net.fabric.is_hub(link.to)) path.push_back(PathHop::hub(link.to));
  }
  const NodeId attach = mesh.attach_node(plan.dst_hub);
  path.push_back(PathHop::node(attach));
  append_xy(mesh, attach, dst, path);
  return path;
}

std::string format_path(const Network& net, const Path& path) {
  std::string out;
  for (const PathHop& hop : path) {
    if (!out.empty()) out += ' ';
    switch (hop.kind) {
      case PathHop::Kind::Node:
        out += "N" + std::to_string(hop.id);
        break;
      case PathHop::Kind::Hub:
        out += "H" + std::to_string(hop.id);
        break;
      case PathHop::Kind::Link:
        out += to_string(net.fabric.links()[hop.id].id);
        break;
    }
  }
  return out;
}

std::optional<NextHop> route(const Network& net, std::variant<RouterAt, HubAt> current, NodeId src,
                             NodeId dst, const AvoidSet& avoid, const RoutingPolicy& policy) {
  auto plan = plan_route(net, src, dst, avoid, policy);
  if (!plan) return std::nullopt;

  if (const auto* at = std::get_if<RouterAt>(&current)) {
    const Leg leg = plan->optical && net.mesh.cluster_of(at->node) == plan->src_hub
                        ? Leg::ToSourceHub
                        : Leg::ToDestination;
    return NextHop{next_port(net.mesh, at->node, dst, *plan, leg)};
  }

  const HubId h = std::get<HubAt>(current).hub;
  if (!plan->optical) return std::nullopt;
  if (h == plan->dst_hub) return NextHop{Port::HubLink};
  if (h == plan->src_hub) return NextHop{plan->links.front()};
  for (std::size_t i = 0; i + 1 < plan->links.size(); ++i)
    if (net.fabric.links()[plan->links[i]].to == h) return NextHop{plan->links[i + 1]};
  return std::nullopt;
}

}  // namespace gcsim
