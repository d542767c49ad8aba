#include "gcsim/topology.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "gcsim/config.hpp"

namespace gcsim {

namespace {

std::uint32_t log2_exact(std::uint32_t n) {
  std::uint32_t bits = 0;
  while ((1u << bits) < n) ++bits;
  return bits;
}

}  // namespace

ClusterLayout default_cluster_layout(std::uint32_t width, std::uint32_t height) {
  if (width < 2 || height < 2 || width % 2 != 0 || height % 2 != 0) {
    throw ConfigError("no default cluster layout for a " + std::to_string(width) + "x" +
                      std::to_string(height) +
                      " mesh; set topology.clusters and topology.hub_attach");
  }
  const std::uint32_t qw = width / 2;
  const std::uint32_t qh = height / 2;
  auto quadrant = [&](std::uint32_t qx, std::uint32_t qy) {
    std::vector<NodeId> nodes;
    for (std::uint32_t y = qy * qh; y < (qy + 1) * qh; ++y)
      for (std::uint32_t x = qx * qw; x < (qx + 1) * qw; ++x) nodes.push_back(y * width + x);
    return nodes;
  };

  ClusterLayout layout;
  if (width == 8 && height == 8) {
    // Hubs numbered clockwise from the top-left quadrant.
    layout.clusters = {quadrant(0, 0), quadrant(1, 0), quadrant(1, 1), quadrant(0, 1)};
    layout.hub_attach = {9, 14, 54, 49};
    return layout;
  }
  // Row-major quadrants; each hub sits on the quadrant router closest to the
  // chip centre.
  layout.clusters = {quadrant(0, 0), quadrant(1, 0), quadrant(0, 1), quadrant(1, 1)};
  for (std::uint32_t qy = 0; qy < 2; ++qy) {
    for (std::uint32_t qx = 0; qx < 2; ++qx) {
      const std::uint32_t x = qx == 0 ? qw / 2 : qw + (qw - 1) / 2;
      const std::uint32_t y = qy == 0 ? qh / 2 : qh + (qh - 1) / 2;
      layout.hub_attach.push_back(y * width + std::min(x, width - 1));
    }
  }
  return layout;
}

std::vector<std::string> cluster_violations(const ClusterLayout& layout, std::uint32_t width,
                                            std::uint32_t height) {
  std::vector<std::string> out;
  const std::uint32_t n = width * height;
  if (layout.clusters.empty()) out.push_back("no clusters defined");
  if (layout.hub_attach.size() != layout.clusters.size()) {
    out.push_back("hub_attach lists " + std::to_string(layout.hub_attach.size()) +
                  " hubs for " + std::to_string(layout.clusters.size()) + " clusters");
  }
  std::vector<int> owner(n, -1);
  for (std::size_t c = 0; c < layout.clusters.size(); ++c) {
    for (NodeId node : layout.clusters[c]) {
      if (node >= n) {
        out.push_back("node " + std::to_string(node) + " in cluster " + std::to_string(c) +
                      " is outside the " + std::to_string(width) + "x" +
                      std::to_string(height) + " mesh");
        continue;
      }
      if (owner[node] >= 0) {
        out.push_back("node " + std::to_string(node) + " assigned to clusters " +
                      std::to_string(owner[node]) + " and " + std::to_string(c));
        continue;
      }
      owner[node] = static_cast<int>(c);
    }
  }
  for (NodeId node = 0; node < n; ++node)
    if (owner[node] < 0) out.push_back("node " + std::to_string(node) + " belongs to no cluster");

  const std::size_t hubs = std::min(layout.hub_attach.size(), layout.clusters.size());
  for (std::size_t h = 0; h < hubs; ++h) {
    NodeId a = layout.hub_attach[h];
    if (a >= n || owner[a] != static_cast<int>(h)) {
      out.push_back("attach node " + std::to_string(a) + " of hub H" + std::to_string(h) +
                    " lies outside cluster " + std::to_string(h));
      continue;
    }
    // Intra-cluster reachability from the attach router.
    std::vector<char> seen(n, 0);
    std::deque<NodeId> frontier{a};
    seen[a] = 1;
    while (!frontier.empty()) {
      NodeId cur = frontier.front();
      frontier.pop_front();
      const std::uint32_t x = cur % width, y = cur / width;
      const NodeId cand[4] = {y > 0 ? cur - width : cur, y + 1 < height ? cur + width : cur,
                              x + 1 < width ? cur + 1 : cur, x > 0 ? cur - 1 : cur};
      for (NodeId nb : cand) {
        if (nb == cur || seen[nb] || owner[nb] != static_cast<int>(h)) continue;
        seen[nb] = 1;
        frontier.push_back(nb);
      }
    }
    for (NodeId node : layout.clusters[h])
      if (node < n && owner[node] == static_cast<int>(h) && !seen[node])
        out.push_back("node " + std::to_string(node) + " cannot reach attach node " +
                      std::to_string(a) + " inside cluster " + std::to_string(h));
  }
  return out;
}

ClusterMap resolve_clusters(const ClusterLayout& layout, std::uint32_t width,
                            std::uint32_t height) {
  auto problems = cluster_violations(layout, width, height);
  if (!problems.empty()) throw ConfigError(problems.front());
  ClusterMap map;
  map.cluster_of.assign(width * height, 0);
  for (std::size_t c = 0; c < layout.clusters.size(); ++c)
    for (NodeId node : layout.clusters[c]) map.cluster_of[node] = static_cast<std::uint32_t>(c);
  map.hub_attach = layout.hub_attach;
  return map;
}

Mesh::Mesh(std::uint32_t width, std::uint32_t height, ClusterMap clusters)
    : width_(width), height_(height), clusters_(std::move(clusters)) {
  hub_at_.assign(node_count(), std::nullopt);
  for (HubId h = 0; h < clusters_.hub_attach.size(); ++h) hub_at_[clusters_.hub_attach[h]] = h;
}

std::optional<NodeId> Mesh::neighbor(NodeId n, Port p) const {
  const Coord c = coord(n);
  switch (p) {
    case Port::North:
      if (c.y > 0) return n - width_;
      break;
    case Port::South:
      if (c.y + 1 < height_) return n + width_;
      break;
    case Port::East:
      if (c.x + 1 < width_) return n + 1;
      break;
    case Port::West:
      if (c.x > 0) return n - 1;
      break;
    default:
      break;
  }
  return std::nullopt;
}

std::vector<LinkId> Mesh::electrical_links() const {
  std::vector<LinkId> out;
  for (NodeId n = 0; n < node_count(); ++n)
    for (Port p : {Port::North, Port::South, Port::East, Port::West})
      if (neighbor(n, p)) out.push_back(LinkId::electrical(n, p));
  return out;
}

std::uint32_t Mesh::manhattan(NodeId a, NodeId b) const {
  const Coord ca = coord(a), cb = coord(b);
  auto d = [](std::uint32_t u, std::uint32_t v) { return u > v ? u - v : v - u; };
  return d(ca.x, cb.x) + d(ca.y, cb.y);
}

Mesh build_mesh(std::uint32_t width, std::uint32_t height, const ClusterMap& clusters) {
  if (width < 2 || height < 2)
    throw ConfigError("mesh dimensions must be at least 2x2, got " + std::to_string(width) + "x" +
                      std::to_string(height));
  const std::uint32_t n = width * height;
  if (clusters.cluster_of.size() != n)
    throw ConfigError("cluster map covers " + std::to_string(clusters.cluster_of.size()) +
                      " nodes, mesh has " + std::to_string(n));
  for (HubId h = 0; h < clusters.hub_attach.size(); ++h) {
    const NodeId a = clusters.hub_attach[h];
    if (a >= n) throw ConfigError("attach node " + std::to_string(a) + " is outside the mesh");
    if (clusters.cluster_of[a] != h)
      throw ConfigError("attach node " + std::to_string(a) + " lies outside cluster " +
                        std::to_string(h));
  }
  for (NodeId node = 0; node < n; ++node)
    if (clusters.cluster_of[node] >= clusters.hub_attach.size())
      throw ConfigError("node " + std::to_string(node) + " is in cluster " +
                        std::to_string(clusters.cluster_of[node]) + " which has no hub");
  return Mesh(width, height, clusters);
}

std::uint32_t perfect_shuffle(std::uint32_t index, std::uint32_t bits) {
  if (bits == 0) return index;
  const std::uint32_t mask = (1u << bits) - 1;
  return ((index << 1) | (index >> (bits - 1))) & mask;
}

std::uint32_t inverse_shuffle(std::uint32_t index, std::uint32_t bits) {
  if (bits == 0) return index;
  return (index >> 1) | ((index & 1u) << (bits - 1));
}

std::uint32_t exchange_bits(std::uint32_t index, std::uint32_t i, std::uint32_t j) {
  const std::uint32_t bi = (index >> i) & 1u, bj = (index >> j) & 1u;
  if (bi == bj) return index;
  return index ^ ((1u << i) | (1u << j));
}

std::uint32_t entry_permutation(FabricKind kind, std::uint32_t line, std::uint32_t stages) {
  return kind == FabricKind::Omega ? perfect_shuffle(line, stages) : line;
}

std::uint32_t stage_permutation(FabricKind kind, std::uint32_t line, std::uint32_t stage,
                                std::uint32_t stages) {
  switch (kind) {
    case FabricKind::Omega:
      return perfect_shuffle(line, stages);
    case FabricKind::Butterfly:
      return exchange_bits(line, 0, stages - 1 - stage);
    case FabricKind::Baseline: {
      // Inverse shuffle restricted to the low (stages - stage) bits.
      const std::uint32_t low_bits = stages - stage;
      const std::uint32_t mask = (1u << low_bits) - 1;
      return (line & ~mask) | inverse_shuffle(line & mask, low_bits);
    }
    case FabricKind::Direct:
      break;
  }
  return line;
}

std::optional<std::uint32_t> Fabric::find(const LinkId& id) const {
  if (kind_ != FabricKind::Direct && id.kind == LinkId::Kind::HubPair) {
    // A hub pair names the first fabric link its traffic enters.
    if (id.a >= endpoints_ || id.b >= endpoints_ || id.a == id.b) return std::nullopt;
    auto p = path(id.a, id.b, {}, false);
    if (!p || p->empty()) return std::nullopt;
    return p->front();
  }
  for (std::uint32_t i = 0; i < links_.size(); ++i)
    if (links_[i].id == id) return i;
  return std::nullopt;
}

std::optional<std::vector<std::uint32_t>> Fabric::path(HubId src, HubId dst, const AvoidSet& avoid,
                                                       bool allow_relay) const {
  if (src >= endpoints_ || dst >= endpoints_) return std::nullopt;
  if (src == dst) return std::vector<std::uint32_t>{};

  auto departures = [&](std::uint32_t node) -> const std::vector<std::uint32_t>& {
    if (is_hub(node) && injection_[node]) return out_links_[*injection_[node]];
    return out_links_[node];
  };

  constexpr std::uint32_t kNone = ~0u;
  std::vector<std::uint32_t> via(node_count(), kNone);
  std::vector<std::uint32_t> prev(node_count(), kNone);
  std::vector<char> seen(node_count(), 0);
  std::deque<std::uint32_t> frontier{src};
  seen[src] = 1;
  while (!frontier.empty()) {
    const std::uint32_t u = frontier.front();
    frontier.pop_front();
    if (u == dst) break;
    if (is_hub(u) && u != src && !allow_relay) continue;
    for (std::uint32_t li : departures(u)) {
      const Link& l = links_[li];
      if (seen[l.to] || avoid.count(l.id)) continue;
      seen[l.to] = 1;
      via[l.to] = li;
      prev[l.to] = u;
      frontier.push_back(l.to);
    }
  }
  if (!seen[dst]) return std::nullopt;
  std::vector<std::uint32_t> out;
  for (std::uint32_t node = dst; node != src; node = prev[node]) out.push_back(via[node]);
  std::reverse(out.begin(), out.end());
  return out;
}

Fabric build_fabric(const FabricSpec& spec) {
  Fabric f;
  f.kind_ = spec.kind;
  f.endpoints_ = spec.endpoints;
  const std::uint32_t n = spec.endpoints;
  if (n == 0) throw ConfigError("fabric needs at least one endpoint");

  if (spec.kind == FabricKind::Direct) {
    f.out_links_.assign(n, {});
    f.injection_.assign(n, std::nullopt);
    for (HubId a = 0; a < n; ++a) {
      for (HubId b = 0; b < n; ++b) {
        if (a == b) continue;
        f.out_links_[a].push_back(static_cast<std::uint32_t>(f.links_.size()));
        f.links_.push_back({LinkId::hub_pair(a, b), a, b});
      }
    }
    return f;
  }

  if (n < 2 || (n & (n - 1)) != 0)
    throw ConfigError("multistage fabric needs a power-of-two endpoint count, got " +
                      std::to_string(n));
  const std::uint32_t k = log2_exact(n);
  f.stages_ = k;
  f.out_links_.assign(n + k * (n / 2), {});
  f.injection_.assign(n, std::nullopt);
  for (HubId h = 0; h < n; ++h) f.injection_[h] = f.switch_node(0, entry_permutation(spec.kind, h, k) / 2);
  for (std::uint32_t s = 0; s < k; ++s) {
    for (std::uint32_t line = 0; line < n; ++line) {
      const std::uint32_t from = f.switch_node(s, line / 2);
      const std::uint32_t to =
          s + 1 < k ? f.switch_node(s + 1, stage_permutation(spec.kind, line, s, k) / 2) : line;
      f.out_links_[from].push_back(static_cast<std::uint32_t>(f.links_.size()));
      f.links_.push_back({LinkId::stage_line(s, line), from, to});
    }
  }
  return f;
}

std::vector<std::string> validate(const NetworkConfig& config) {
  // Each entry reads "<config key>: <problem>".
  std::vector<std::string> out;
  auto add = [&](const char* key, const std::string& problem) {
    out.push_back(std::string(key) + ": " + problem);
  };
  const auto& topo = config.topology;
  if (topo.width < 2 || topo.height < 2) {
    add("topology.width", "mesh dimensions must be at least 2x2");
    return out;
  }
  ClusterLayout layout;
  try {
    layout = topo.resolved_layout();
  } catch (const ConfigError& e) {
    add("topology.clusters", e.what());
    return out;
  }
  for (const auto& p : cluster_violations(layout, topo.width, topo.height)) add("topology.clusters", p);

  const auto hubs = static_cast<std::uint32_t>(layout.hub_attach.size());
  std::optional<Fabric> fabric;
  try {
    fabric = build_fabric({config.fabric, hubs});
  } catch (const ConfigError& e) {
    add("fabric.kind", e.what());
  }

  const std::uint32_t nodes = topo.width * topo.height;
  const auto& tr = config.traffic;
  if (tr.injection_rate < 0 || tr.injection_rate > 1)
    add("traffic.injection_rate", "must lie in [0,1]");
  if (config.packet_flits > 0 && tr.injection_rate / config.packet_flits > 1)
    add("traffic.injection_rate", "exceeds one packet per node per cycle");
  if (tr.hotspot_fraction < 0 || tr.hotspot_fraction > 1)
    add("traffic.hotspot_fraction", "must lie in [0,1]");
  if (tr.hotspot_node >= nodes)
    add("traffic.hotspot_node", "node " + std::to_string(tr.hotspot_node) + " is outside the mesh");
  if ((tr.pattern == TrafficPattern::BitReversal || tr.pattern == TrafficPattern::Shuffle) &&
      !is_power_of_two(nodes))
    add("traffic.pattern", std::string(to_string(tr.pattern)) +
                               " needs a power-of-two node count, got " + std::to_string(nodes));

  const auto& at = config.attack;
  if (!(at.floor_ber >= 0 && at.floor_ber <= at.ber && at.ber <= 1))
    add("attack.ber", "attack BERs must satisfy 0 <= floor_ber <= ber <= 1");
  if (at.decay < 0) add("attack.decay", "must be non-negative");
  if (at.channel >= config.channels) add("attack.channel", "is outside optical.channels");
  if (at.enabled && at.malicious_hub >= hubs)
    add("attack.hub", "H" + std::to_string(at.malicious_hub) + " does not exist");
  if (fabric) {
    for (const LinkId& l : at.links)
      if (!l.optical() || !fabric->find(l)) add("attack.links", "unknown link " + to_string(l));
  }

  if (config.packet_flits == 0) add("packet.flits", "must be at least 1");
  if (config.flit_bits == 0) add("packet.flit_bits", "must be at least 1");
  if (config.buffer_depth == 0) add("router.buffer_depth", "must be at least 1");
  if (config.hub_queue_packets == 0) add("hub.queue_packets", "must be at least 1");
  if (config.channels == 0) add("optical.channels", "must be at least 1");
  if (config.timing.optical_latency == 0) add("timing.optical_latency", "must be at least 1");
  if (config.timing.link_latency == 0) add("timing.link_latency", "must be at least 1");
  if (config.warmup >= config.cycles) add("sim.warmup", "must be below sim.cycles");

  const auto& det = config.detector;
  if (det.window == 0) add("defense.window", "must be at least 1");
  if (!(det.threshold > 0 && det.threshold < 1)) add("defense.threshold", "must lie in (0,1)");
  if (det.mode == DetectorMode::PilotTone && det.probe_period == 0)
    add("defense.probe_period", "must be at least 1");
  return out;
}

Network build_network(const NetworkConfig& config) {
  auto problems = validate(config);
  if (!problems.empty()) {
    std::ostringstream msg;
    msg << "invalid configuration:";
    for (const auto& p : problems) msg << "\n  " << p;
    throw ConfigError(msg.str());
  }
  const auto layout = config.topology.resolved_layout();
  auto clusters = resolve_clusters(layout, config.topology.width, config.topology.height);
  Mesh mesh = build_mesh(config.topology.width, config.topology.height, clusters);
  Fabric fabric = build_fabric({config.fabric, mesh.hub_count()});
  return Network{std::move(mesh), std::move(fabric)};
}

}  // namespace gcsim
