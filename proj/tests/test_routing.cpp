#include <algorithm>
#include <set>

#include "doctest.h"
#include "nsw/requests.hpp"
#include "nsw/routing.hpp"
#include "nsw/topology.hpp"

using nsw::Matching;
using nsw::NodeId;
using nsw::Path;
using nsw::Rng;
using nsw::RoutePlan;
using nsw::Topology;

namespace {

// Oracle: every simple s-t path in the surviving hypercube subgraph, in
// (length, lex) order. Independent of the Yen implementation.
void collect_paths(const Topology& t, NodeId cur, NodeId dst, std::vector<NodeId>& path,
                   std::vector<char>& visited, std::vector<std::vector<NodeId>>& out) {
  if (cur == dst) {
    out.push_back(path);
    return;
  }
  for (NodeId w : t.hypercube_neighbors(cur)) {
    if (t.is_failed(w) || visited[static_cast<std::size_t>(w)]) continue;
    visited[static_cast<std::size_t>(w)] = 1;
    path.push_back(w);
    collect_paths(t, w, dst, path, visited, out);
    path.pop_back();
    visited[static_cast<std::size_t>(w)] = 0;
  }
}

std::vector<std::vector<NodeId>> all_paths_sorted(const Topology& t, NodeId s, NodeId d) {
  std::vector<std::vector<NodeId>> out;
  std::vector<NodeId> path{s};
  std::vector<char> visited(static_cast<std::size_t>(t.node_count()), 0);
  visited[static_cast<std::size_t>(s)] = 1;
  collect_paths(t, s, d, path, visited, out);
  std::sort(out.begin(), out.end(),
            [](const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return out;
}

bool path_is_valid(const Topology& t, const Path& p, NodeId u, NodeId v) {
  if (p.nodes.size() < 2) return false;
  if (p.nodes.front() != u && p.nodes.front() != v) return false;
  if (p.nodes.back() != u && p.nodes.back() != v) return false;
  std::set<NodeId> seen;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (t.is_failed(p.nodes[i])) return false;
    if (!seen.insert(p.nodes[i]).second) return false;  // not simple
    if (i + 1 < p.nodes.size()) {
      const int x = p.nodes[i] ^ p.nodes[i + 1];
      if (x == 0 || (x & (x - 1)) != 0) return false;  // not a hypercube edge
    }
  }
  return true;
}

}  // namespace

TEST_CASE("k-shortest paths: adjacent nodes") {
  const Topology t = Topology::build_nested(3);
  const auto paths = nsw::k_shortest_paths(t, 0, 1, 1);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].nodes == std::vector<NodeId>{0, 1});
}

TEST_CASE("k-shortest paths: antipodal on Q3 starts with the 6 length-3 paths") {
  const Topology t = Topology::build_nested(3);
  const auto paths = nsw::k_shortest_paths(t, 0, 7, 20);
  REQUIRE(paths.size() == 18);  // Q3 has 18 simple antipodal paths in total
  for (int i = 0; i < 6; ++i) CHECK(paths[static_cast<std::size_t>(i)].length() == 3);
  CHECK(paths[6].length() > 3);
}

TEST_CASE("k-shortest paths match the exhaustive oracle on Q3") {
  const Topology t = Topology::build_nested(3);
  for (NodeId s = 0; s < 8; ++s) {
    for (NodeId d = 0; d < 8; ++d) {
      if (s == d) continue;
      const auto expected = all_paths_sorted(t, s, d);
      const auto got = nsw::k_shortest_paths(t, s, d, 1000);
      REQUIRE(got.size() == expected.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].nodes == expected[i]);
      }
    }
  }
}

TEST_CASE("k-shortest paths match the oracle on a damaged Q4") {
  const Topology t = Topology::build_nested(4).with_failures({3, 9, 12});
  const auto expected = all_paths_sorted(t, 0, 15);
  const auto got = nsw::k_shortest_paths(t, 0, 15, static_cast<int>(expected.size()) + 10);
  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].nodes == expected[i]);
}

TEST_CASE("k-shortest paths around failures") {
  // Failing {1, 2, 4} kills every hypercube neighbor of node 0.
  const Topology isolated = Topology::build_nested(3).with_failures({1, 2, 4});
  CHECK(nsw::k_shortest_paths(isolated, 0, 7, 5).empty());
  CHECK_THROWS_AS(nsw::k_shortest_paths(isolated, 1, 7, 5), std::invalid_argument);

  // A detour case, cross-checked against the exhaustive oracle.
  const Topology t = Topology::build_nested(3).with_failures({1, 2});
  const auto expected = all_paths_sorted(t, 0, 7);
  const auto got = nsw::k_shortest_paths(t, 0, 7, 5);
  REQUIRE_FALSE(got.empty());
  CHECK(got[0].nodes == expected[0]);
  CHECK(got[0].length() == 3);  // 0-4-5-7 or 0-4-6-7 survive
}

TEST_CASE("no path yields an empty list") {
  // Kill every neighbor of node 0 in Q2.
  const Topology t = Topology::build_nested(2).with_failures({1, 2});
  CHECK(nsw::k_shortest_paths(t, 0, 3, 5).empty());
}

TEST_CASE("route_matching: single pair") {
  const Topology t = Topology::build_nested(3);
  Matching m{{{0, 1}}};
  Rng rng(1);
  const RoutePlan plan = nsw::route_matching(t, m, 1, 20, rng);
  CHECK(plan.served_count() == 1);
  const auto metrics = nsw::plan_metrics(plan, t);
  CHECK(metrics.served_fraction == 1.0);
  CHECK(*metrics.mean_path_length == 1.0);
}

TEST_CASE("route_matching: antipodal matching on Q3 decomposes at R=1") {
  const Topology t = Topology::build_nested(3);
  Matching m{{{0, 7}, {1, 6}, {2, 5}, {3, 4}}};
  // A full edge-disjoint decomposition exists; the greedy heuristic finds it
  // for at least some processing orders.
  int best = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const RoutePlan plan = nsw::route_matching(t, m, 1, 20, rng);
    best = std::max(best, plan.served_count());
    if (plan.served_count() == 4) {
      const auto metrics = nsw::plan_metrics(plan, t);
      CHECK(*metrics.mean_path_length == 3.0);
      CHECK(metrics.max_edge_load == 1);
    }
  }
  CHECK(best == 4);
  CHECK(nsw::brute_force_route(t, m, 1) == 4);
}

TEST_CASE("route_matching invariants over random trials") {
  for (int d : {3, 4}) {
    const Topology t = Topology::build_nested(d);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      Rng mrng(seed * 2 + 1);
      const Matching m = nsw::random_perfect_matching(t.surviving_nodes(), mrng);
      Rng orng(seed);
      const int r = 1 + static_cast<int>(seed % 2);
      const RoutePlan plan = nsw::route_matching(t, m, r, 20, orng);
      for (int load : plan.load) CHECK(load <= r);
      for (const auto& o : plan.outcomes) {
        if (o.served) {
          CHECK(path_is_valid(t, o.path, o.endpoints.first, o.endpoints.second));
        } else {
          CHECK(o.path.nodes.empty());
        }
      }
      // Determinism: same inputs, same plan.
      Rng orng2(seed);
      const RoutePlan again = nsw::route_matching(t, m, r, 20, orng2);
      REQUIRE(again.outcomes.size() == plan.outcomes.size());
      for (std::size_t i = 0; i < plan.outcomes.size(); ++i) {
        CHECK(again.outcomes[i].endpoints == plan.outcomes[i].endpoints);
        CHECK(again.outcomes[i].served == plan.outcomes[i].served);
        CHECK(again.outcomes[i].path == plan.outcomes[i].path);
      }
    }
  }
}

TEST_CASE("served count is monotone in capacity") {
  const Topology t = Topology::build_nested(4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng mrng(seed + 100);
    const Matching m = nsw::random_perfect_matching(t.surviving_nodes(), mrng);
    int prev = -1;
    for (int r = 1; r <= 3; ++r) {
      Rng orng(seed);
      const int served = nsw::route_matching(t, m, r, 20, orng).served_count();
      if (prev >= 0) CHECK(served >= prev);
      prev = served;
    }
  }
}

TEST_CASE("heuristic never beats the brute force optimum") {
  const Topology t = Topology::build_nested(3);
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Rng mrng(seed);
    const Matching m = nsw::random_perfect_matching(t.surviving_nodes(), mrng);
    for (int r : {1, 2}) {
      Rng orng(seed);
      const int heuristic = nsw::route_matching(t, m, r, 20, orng).served_count();
      CHECK(heuristic <= nsw::brute_force_route(t, m, r));
    }
  }
}

TEST_CASE("brute force examples") {
  SUBCASE("single pair") {
    const Topology t = Topology::build_nested(3);
    Matching m{{{0, 1}}};
    CHECK(nsw::brute_force_route(t, m, 1) == 1);
  }
  SUBCASE("crossing pairs on the 4-cycle") {
    // Both diagonals need 2 hops each; the 4-cycle only has 4 edges and any
    // routing of the second diagonal reuses one, so R=1 serves a single pair
    // and R=2 serves both.
    const Topology t = Topology::build_nested(2);
    Matching m{{{0, 3}, {1, 2}}};
    CHECK(nsw::brute_force_route(t, m, 1) == 1);
    CHECK(nsw::brute_force_route(t, m, 2) == 2);
  }
  SUBCASE("size guard") {
    const Topology t = Topology::build_nested(5);
    Matching m{{{0, 1}}};
    CHECK_THROWS_AS(nsw::brute_force_route(t, m, 1), std::invalid_argument);
  }
}

TEST_CASE("invalid matchings are rejected by routing") {
  const Topology t = Topology::build_nested(3);
  Rng rng(0);
  Matching dup{{{0, 1}, {1, 2}}};
  CHECK_THROWS_AS(nsw::route_matching(t, dup, 1, 20, rng), std::invalid_argument);
  const Topology damaged = t.with_failures({1});
  Matching dead{{{0, 1}}};
  CHECK_THROWS_AS(nsw::route_matching(damaged, dead, 1, 20, rng), std::invalid_argument);
}

TEST_CASE("plan metrics on an empty plan") {
  const Topology t = Topology::build_nested(3);
  RoutePlan plan;
  const auto metrics = nsw::plan_metrics(plan, t);
  CHECK(metrics.served_fraction == 0.0);
  CHECK_FALSE(metrics.mean_path_length.has_value());
  CHECK(metrics.max_edge_load == 0);
  CHECK(metrics.load_histogram.at(0) == 12);
}
