#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "gcsim/config.hpp"

namespace oracle {

/// |k - n q| <= 3 sqrt(n q (1 - q)).
inline bool within_3sigma(std::uint64_t k, std::uint64_t n, double q) {
  const double mean = static_cast<double>(n) * q;
  const double sd = std::sqrt(static_cast<double>(n) * q * (1 - q));
  return std::abs(static_cast<double>(k) - mean) <= 3 * sd;
}

/// Node sequence of an X-then-Y walk on a width-wide mesh, endpoints included.
inline std::vector<std::uint32_t> xy_walk(std::uint32_t width, std::uint32_t from, std::uint32_t to) {
  std::vector<std::uint32_t> out{from};
  std::int64_t x = from % width, y = from / width;
  const std::int64_t tx = to % width, ty = to / width;
  while (x != tx) {
    x += x < tx ? 1 : -1;
    out.push_back(static_cast<std::uint32_t>(y * width + x));
  }
  while (y != ty) {
    y += y < ty ? 1 : -1;
    out.push_back(static_cast<std::uint32_t>(y * width + x));
  }
  return out;
}

/// 2x2 mesh with every node in one cluster whose hub sits on node 0.
inline gcsim::NetworkConfig single_cluster_2x2() {
  gcsim::NetworkConfig c;
  c.topology.width = 2;
  c.topology.height = 2;
  c.topology.layout = gcsim::ClusterLayout{{{0, 1, 2, 3}}, {0}};
  c.attack.enabled = false;
  c.attack.links.clear();
  return c;
}

}  // namespace oracle
