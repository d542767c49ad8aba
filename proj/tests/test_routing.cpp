#include <gtest/gtest.h>

#include "gcsim/routing.hpp"
#include "oracles.hpp"

using namespace gcsim;

namespace {

Network mesh8() {
  NetworkConfig c;
  c.topology.width = c.topology.height = 8;
  return build_network(c);
}

}  // namespace

TEST(Routing, HubPath8x8) {
  Network net = mesh8();
  auto plan = plan_route(net, 1, 55, {}, {});
  ASSERT_TRUE(plan.has_value());
  EXPECT_TRUE(plan->optical);
  EXPECT_EQ(format_path(net, predict_path(net, 1, 55, *plan)), "N1 N9 H0 H0->H2 H2 N54 N55");
}

TEST(Routing, SameClusterIsXY) {
  Network net = build_network(NetworkConfig{});
  auto plan = plan_route(net, 0, 5, {}, {});
  ASSERT_TRUE(plan.has_value());
  EXPECT_FALSE(plan->optical);
  EXPECT_EQ(format_path(net, predict_path(net, 0, 5, *plan)), "N0 N1 N5");
}

TEST(Routing, AvoidedLinkFallsBackToElectrical) {
  Network net = mesh8();
  AvoidSet avoid{LinkId::hub_pair(0, 1)};
  auto plan = plan_route(net, 1, 6, avoid, {});
  ASSERT_TRUE(plan.has_value());
  EXPECT_FALSE(plan->optical);
  Path expected;
  for (auto n : oracle::xy_walk(8, 1, 6)) expected.push_back(PathHop::node(n));
  EXPECT_EQ(predict_path(net, 1, 6, *plan), expected);
}

TEST(Routing, NoFallbackIsFailure) {
  Network net = mesh8();
  AvoidSet avoid{LinkId::hub_pair(0, 1)};
  RoutingPolicy strict{false, false};
  EXPECT_FALSE(plan_route(net, 1, 6, avoid, strict).has_value());
}

TEST(Routing, RelayDetour) {
  Network net = build_network(NetworkConfig{});
  AvoidSet avoid{LinkId::hub_pair(1, 2)};
  // Node 2 is in cluster 1, node 8 in cluster 2.
  auto plan = plan_route(net, 2, 8, avoid, {true, true});
  ASSERT_TRUE(plan.has_value());
  ASSERT_TRUE(plan->optical);
  EXPECT_EQ(plan->links.size(), 2u);
  const std::string path = format_path(net, predict_path(net, 2, 8, *plan));
  EXPECT_EQ(path.find("H1->H2"), std::string::npos) << path;
  EXPECT_EQ(path, "N2 N6 H1 H1->H0 H0 H0->H2 H2 N9 N8");
}

TEST(Routing, XYMatchesOracleEverywhere) {
  Network net = build_network(NetworkConfig{});
  for (NodeId s = 0; s < 16; ++s)
    for (NodeId d = 0; d < 16; ++d) {
      if (net.mesh.cluster_of(s) != net.mesh.cluster_of(d)) continue;
      auto plan = plan_route(net, s, d, {}, {});
      Path expected;
      for (auto n : oracle::xy_walk(4, s, d)) expected.push_back(PathHop::node(n));
      EXPECT_EQ(predict_path(net, s, d, *plan), expected);
    }
}

TEST(Routing, SingleStepRoute) {
  Network net = mesh8();
  auto first = route(net, RouterAt{1}, 1, 55, {}, {});
  ASSERT_TRUE(first.has_value());
  EXPECT_EQ(std::get<Port>(*first), Port::South);
  auto at_hub = route(net, RouterAt{9}, 1, 55, {}, {});
  EXPECT_EQ(std::get<Port>(*at_hub), Port::HubLink);
  auto from_hub = route(net, HubAt{0}, 1, 55, {}, {});
  ASSERT_TRUE(from_hub.has_value());
  EXPECT_EQ(to_string(net.fabric.links()[std::get<std::uint32_t>(*from_hub)].id), "H0->H2");
  auto dst_hub = route(net, HubAt{2}, 1, 55, {}, {});
  EXPECT_EQ(std::get<Port>(*dst_hub), Port::HubLink);
}
