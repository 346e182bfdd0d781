#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "nsw/requests.hpp"
#include "nsw/rng.hpp"
#include "nsw/topology.hpp"

namespace nsw {

// A simple path in the hypercube subgraph, as a node sequence.
struct Path {
  std::vector<NodeId> nodes;
  int length() const { return static_cast<int>(nodes.size()) - 1; }
  bool operator==(const Path& o) const { return nodes == o.nodes; }
};

// Lazy Yen-style enumerator of loopless paths between two surviving nodes
// on the failure-masked hypercube, in (length, rank-lexicographic node
// sequence) order. `rank`, when given, is a permutation of node ids acting
// as the tie-break priority; by default it is the identity, which makes the
// order plain (length, lexicographic). Deterministic for a fixed topology
// and rank.
class PathEnumerator {
public:
  PathEnumerator(const Topology& t, NodeId s, NodeId d, std::vector<int> rank = {});

  // Next path in order, or nullopt when the graph holds no more.
  std::optional<Path> next();

private:
  struct CandidateLess {
    const std::vector<int>* rank;
    bool operator()(const std::vector<NodeId>& a, const std::vector<NodeId>& b) const;
  };

  std::optional<std::vector<NodeId>> spur_path(
      const std::vector<char>& banned_nodes,
      const std::set<std::pair<NodeId, NodeId>>& banned_edges, NodeId from) const;

  const Topology& topo_;
  NodeId src_;
  NodeId dst_;
  std::vector<int> rank_;
  std::vector<std::vector<NodeId>> accepted_;
  std::set<std::vector<NodeId>, CandidateLess> candidates_;
  std::set<std::vector<NodeId>> known_;
  bool started_ = false;
  bool exhausted_ = false;
};

// First k paths from the enumerator (fewer if the graph runs out).
std::vector<Path> k_shortest_paths(const Topology& t, NodeId s, NodeId d, int k);

struct RoutePlan {
  struct PairOutcome {
    std::pair<NodeId, NodeId> endpoints;
    bool served = false;
    Path path;  // empty unless served
  };
  std::vector<PairOutcome> outcomes;   // request order (post shuffle)
  std::vector<int> load;               // per hypercube_edge_index use count
  int capacity = 0;
  int path_budget = 0;

  int served_count() const;
};

// Greedy first-fit routing: pairs in a seeded-random order, each taking the
// first of its (up to) k candidate paths whose every edge still has spare
// capacity. Each pair enumerates its candidates under a fresh random node
// ranking drawn from `rng`, so equal-length ties resolve differently across
// pairs and the load spreads instead of piling onto the lexicographically
// smallest routes. No backtracking; unserved pairs consume nothing.
RoutePlan route_matching(const Topology& t, const Matching& m, int capacity,
                         int path_budget, Rng& rng);

struct PlanMetrics {
  double served_fraction = 0.0;
  std::optional<double> mean_path_length;     // absent when nothing served
  std::map<int, long long> load_histogram;    // load value -> surviving edge count
  int max_edge_load = 0;
};

PlanMetrics plan_metrics(const RoutePlan& plan, const Topology& t);

// Exact optimum served-pair count under capacity R, by branch and bound
// over all simple candidate paths. Guarded to <= 16 surviving nodes.
int brute_force_route(const Topology& t, const Matching& m, int capacity);

}  // namespace nsw
