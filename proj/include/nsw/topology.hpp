#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nsw {

using NodeId = int;

enum class EdgeKind { Nested, Hypercube };

// Canonical undirected edge: a < b always. `k` is the distance exponent
// (Nested: endpoints differ by +-2^k mod n) or the flipped bit (Hypercube).
struct Edge {
  NodeId a;
  NodeId b;
  EdgeKind kind;
  int k;

  bool operator==(const Edge& o) const {
    return a == o.a && b == o.b && kind == o.kind && k == o.k;
  }
  bool operator<(const Edge& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    if (kind != o.kind) return kind < o.kind;
    return k < o.k;
  }
};

// The nested switch graph on n = 2^d nodes: node z holds one Bell pair to
// each of z +- 2^k mod n (the antipodal distance 2^(d-1) gives a single
// edge per pair), plus the d-dimensional hypercube spanning subgraph that
// routing is restricted to. Immutable after construction; failures are a
// per-copy node mask so one base topology serves many trials.
class Topology {
public:
  static Topology build_nested(int d);

  int dimension() const { return d_; }
  int node_count() const { return n_; }

  const std::vector<Edge>& nested_edges() const { return nested_; }
  const std::vector<Edge>& hypercube_edges() const { return hyper_; }

  bool is_failed(NodeId z) const { return failed_[static_cast<std::size_t>(z)]; }
  const std::vector<NodeId>& failed_nodes() const { return failed_list_; }
  std::vector<NodeId> surviving_nodes() const;
  int surviving_count() const { return n_ - static_cast<int>(failed_list_.size()); }

  // Copy of this topology with the given nodes (and all incident edges)
  // masked out. Idempotent; merges with any failures already applied.
  Topology with_failures(const std::vector<NodeId>& failed) const;

  // Neighbor lists over the full (undamaged) graph, sorted ascending.
  const std::vector<NodeId>& nested_neighbors(NodeId z) const {
    return nested_adj_[static_cast<std::size_t>(z)];
  }
  const std::vector<NodeId>& hypercube_neighbors(NodeId z) const {
    return hyper_adj_[static_cast<std::size_t>(z)];
  }

  // Dense index of the hypercube edge {z, z^2^k} in [0, n*d/2).
  int hypercube_edge_index(NodeId u, NodeId v) const;
  int hypercube_edge_count() const { return n_ * d_ / 2; }
  int surviving_hypercube_edge_count() const;
  int surviving_nested_edge_count() const;

private:
  Topology() = default;

  int d_ = 0;
  int n_ = 0;
  std::vector<Edge> nested_;
  std::vector<Edge> hyper_;
  std::vector<std::vector<NodeId>> nested_adj_;
  std::vector<std::vector<NodeId>> hyper_adj_;
  std::vector<char> failed_;
  std::vector<NodeId> failed_list_;
};

// Maps a hypercube edge z <-> z^2^k onto the nested edge with the same
// endpoints (z + 2^k or z - 2^k mod n, depending on bit k of z).
Edge map_hypercube_edge(const Edge& e, int n);

enum class Architecture { Centralized, AllToAllBell, GHZ, Nested };

struct ResourceCount {
  Architecture architecture;
  long long total;     // Bell pairs (Centralized/AllToAll/Nested) or qubits (GHZ)
  long long per_node;  // memory at a regular node (hub memory for Centralized)
};

ResourceCount resource_count(Architecture arch, int n);

// Edge-list text export: header "nested-switch v1 d=<d>", then one line
// per edge "u v kind k" (kind: nested|hypercube).
void write_edge_list(std::ostream& os, const Topology& t);

std::string architecture_name(Architecture arch);

}  // namespace nsw
