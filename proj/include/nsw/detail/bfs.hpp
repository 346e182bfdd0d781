#pragma once

#include <optional>
#include <vector>

#include "nsw/topology.hpp"

namespace nsw::detail {

// Rank-minimal shortest path from s to t over an adjacency oracle, honoring
// node/edge predicates. The greedy distance-descent walk picks the lowest
// ranked usable neighbor at every hop, which yields the rank-lexicographic
// minimum among all shortest paths. `rank` is any strict priority over node
// ids; the identity gives the plain lexicographic tie-break.
template <class AdjFn, class NodeOk, class EdgeOk, class RankFn>
std::optional<std::vector<NodeId>> ranked_shortest_path(int n, NodeId s, NodeId t,
                                                        AdjFn&& adj, NodeOk&& node_ok,
                                                        EdgeOk&& edge_ok,
                                                        RankFn&& rank) {
  if (!node_ok(s) || !node_ok(t)) return std::nullopt;
  if (s == t) return std::vector<NodeId>{s};

  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::vector<NodeId> queue;
  queue.reserve(static_cast<std::size_t>(n));
  dist[static_cast<std::size_t>(t)] = 0;
  queue.push_back(t);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId z = queue[head];
    if (z == s) break;
    for (NodeId w : adj(z)) {
      if (dist[static_cast<std::size_t>(w)] != -1) continue;
      if (!node_ok(w) || !edge_ok(z, w)) continue;
      dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(z)] + 1;
      queue.push_back(w);
    }
  }
  if (dist[static_cast<std::size_t>(s)] == -1) return std::nullopt;

  std::vector<NodeId> path{s};
  NodeId cur = s;
  while (cur != t) {
    const int want = dist[static_cast<std::size_t>(cur)] - 1;
    NodeId next = -1;
    for (NodeId w : adj(cur)) {
      if (dist[static_cast<std::size_t>(w)] == want && node_ok(w) && edge_ok(cur, w) &&
          (next == -1 || rank(w) < rank(next))) {
        next = w;
      }
    }
    if (next == -1) return std::nullopt;  // unreachable if BFS succeeded
    path.push_back(next);
    cur = next;
  }
  return path;
}

template <class AdjFn, class NodeOk, class EdgeOk>
std::optional<std::vector<NodeId>> lex_shortest_path(int n, NodeId s, NodeId t,
                                                     AdjFn&& adj, NodeOk&& node_ok,
                                                     EdgeOk&& edge_ok) {
  return ranked_shortest_path(n, s, t, adj, node_ok, edge_ok,
                              [](NodeId z) { return z; });
}

}  // namespace nsw::detail
