#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gcsim/types.hpp"

namespace gcsim {

struct NetworkConfig;

struct Coord {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
};

/// Cluster description as written in a config file. May be inconsistent;
/// resolve_clusters() turns it into a checked ClusterMap.
struct ClusterLayout {
  std::vector<std::vector<NodeId>> clusters;
  std::vector<NodeId> hub_attach;
  friend bool operator==(const ClusterLayout&, const ClusterLayout&) = default;
};

/// Node -> cluster assignment plus the router each hub is wired to.
/// Cluster index and hub index coincide.
struct ClusterMap {
  std::vector<std::uint32_t> cluster_of;
  std::vector<NodeId> hub_attach;
};

/// Quadrant clusters for even-sized meshes. 4x4 attaches hubs at 5,6,9,10;
/// 8x8 uses 9,14,54,49 (clockwise from the top-left quadrant).
ClusterLayout default_cluster_layout(std::uint32_t width, std::uint32_t height);

/// Human-readable problems with a layout; empty when consistent.
std::vector<std::string> cluster_violations(const ClusterLayout& layout, std::uint32_t width,
                                            std::uint32_t height);

/// Throws ConfigError naming the first offending node.
ClusterMap resolve_clusters(const ClusterLayout& layout, std::uint32_t width,
                            std::uint32_t height);

/// Electrical 2D mesh with hub attachment points.
class Mesh {
 public:
  Mesh(std::uint32_t width, std::uint32_t height, ClusterMap clusters);

  std::uint32_t width() const { return width_; }
  std::uint32_t height() const { return height_; }
  std::uint32_t node_count() const { return width_ * height_; }
  std::uint32_t hub_count() const { return static_cast<std::uint32_t>(clusters_.hub_attach.size()); }

  Coord coord(NodeId n) const { return {n % width_, n / width_}; }
  NodeId node_at(std::uint32_t x, std::uint32_t y) const { return y * width_ + x; }
  std::optional<NodeId> neighbor(NodeId n, Port p) const;

  std::uint32_t cluster_of(NodeId n) const { return clusters_.cluster_of[n]; }
  NodeId attach_node(HubId h) const { return clusters_.hub_attach[h]; }
  std::optional<HubId> hub_at(NodeId n) const { return hub_at_[n]; }
  const ClusterMap& clusters() const { return clusters_; }

  /// Directed electrical links between mesh neighbours.
  std::vector<LinkId> electrical_links() const;
  std::size_t hub_link_count() const { return clusters_.hub_attach.size(); }

  std::uint32_t manhattan(NodeId a, NodeId b) const;

 private:
  std::uint32_t width_;
  std::uint32_t height_;
  ClusterMap clusters_;
  std::vector<std::optional<HubId>> hub_at_;
};

/// Throws ConfigError when the cluster map does not fit the dimensions.
Mesh build_mesh(std::uint32_t width, std::uint32_t height, const ClusterMap& clusters);

enum class FabricKind : std::uint8_t { Direct, Butterfly, Omega, Baseline };

struct FabricSpec {
  FabricKind kind = FabricKind::Direct;
  std::uint32_t endpoints = 4;
};

// Bit permutations on `bits`-wide indices used by the multistage fabrics.
std::uint32_t perfect_shuffle(std::uint32_t index, std::uint32_t bits);
std::uint32_t inverse_shuffle(std::uint32_t index, std::uint32_t bits);
std::uint32_t exchange_bits(std::uint32_t index, std::uint32_t i, std::uint32_t j);

/// Wiring applied to a line index before stage 0 (stage == -1 style entry
/// permutation) and between stage s and s+1.
std::uint32_t entry_permutation(FabricKind kind, std::uint32_t line, std::uint32_t stages);
std::uint32_t stage_permutation(FabricKind kind, std::uint32_t line, std::uint32_t stage,
                                std::uint32_t stages);

using AvoidSet = std::set<LinkId>;

/// Inter-hub optical fabric.
///
/// Optical nodes 0..endpoints-1 are hubs; multistage fabrics add 2x2 switch
/// nodes after them. A hub feeds its stage-0 switch directly, so the links of
/// a multistage fabric are the switch output lines (stages x endpoints).
class Fabric {
 public:
  struct Link {
    LinkId id;
    std::uint32_t from = 0;  // optical node
    std::uint32_t to = 0;    // optical node
  };

  FabricKind kind() const { return kind_; }
  std::uint32_t endpoints() const { return endpoints_; }
  std::uint32_t stages() const { return stages_; }
  std::uint32_t node_count() const { return static_cast<std::uint32_t>(out_links_.size()); }
  bool is_hub(std::uint32_t node) const { return node < endpoints_; }
  std::uint32_t switch_node(std::uint32_t stage, std::uint32_t index) const {
    return endpoints_ + stage * (endpoints_ / 2) + index;
  }

  const std::vector<Link>& links() const { return links_; }
  const std::vector<std::uint32_t>& out_links(std::uint32_t node) const { return out_links_[node]; }
  /// Switch a hub injects into without crossing a link (multistage only).
  std::optional<std::uint32_t> injection_node(HubId h) const { return injection_[h]; }

  std::optional<std::uint32_t> find(const LinkId& id) const;

  /// Fewest-link path of link indices from hub `src` to hub `dst`, skipping
  /// `avoid`. With `allow_relay` a path may pass through other hubs, which
  /// re-inject the packet; otherwise only the direct/unique path qualifies.
  std::optional<std::vector<std::uint32_t>> path(HubId src, HubId dst, const AvoidSet& avoid,
                                                 bool allow_relay) const;

 private:
  friend Fabric build_fabric(const FabricSpec& spec);

  FabricKind kind_ = FabricKind::Direct;
  std::uint32_t endpoints_ = 0;
  std::uint32_t stages_ = 0;
  std::vector<Link> links_;
  std::vector<std::vector<std::uint32_t>> out_links_;
  std::vector<std::optional<std::uint32_t>> injection_;
};

/// Throws ConfigError for non-power-of-two endpoints on multistage kinds.
Fabric build_fabric(const FabricSpec& spec);

/// The full hybrid graph a run operates on.
struct Network {
  Mesh mesh;
  Fabric fabric;
};

/// Problems with a complete experiment description; empty means valid.
std::vector<std::string> validate(const NetworkConfig& config);

/// Builds mesh and fabric, throwing ConfigError listing every violation.
Network build_network(const NetworkConfig& config);

}  // namespace gcsim
