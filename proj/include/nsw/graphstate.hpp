#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nsw/rng.hpp"
#include "nsw/topology.hpp"

namespace nsw {

struct ExtractionRecord {
  NodeId u = -1;
  NodeId v = -1;
  std::vector<NodeId> path;      // node sequence u..v
  std::vector<NodeId> consumed;  // path plus every alive neighbor of a path node
  int measured_count = 0;        // |consumed| - 2
};

// Merged graph-state resource: one qubit per node, graph edges = the full
// nested edge set (degree 2d-1). Extracting a Bell pair measures out the
// chosen path and all alive neighbors of its nodes, removing them from the
// resource.
class GraphStateResource {
public:
  explicit GraphStateResource(const Topology& base);

  bool is_alive(NodeId z) const { return alive_[static_cast<std::size_t>(z)]; }
  int alive_count() const { return alive_count_; }
  std::vector<NodeId> alive_nodes() const;

  // Shortest alive path (lex tie-break) from u to v; consumes path nodes
  // plus their alive neighborhoods on success. A failed search consumes
  // nothing and returns nullopt. Dead endpoints are an error.
  std::optional<ExtractionRecord> extract_pair(NodeId u, NodeId v);

private:
  const Topology* base_;
  std::vector<char> alive_;
  int alive_count_;
};

// One trial: a random perfect matching over the alive qubits is taken as the
// switching request and its pairs are processed greedily in random order.
// Pairs whose endpoints were measured out by an earlier extraction are
// skipped. Returns the number of Bell pairs extracted.
int capacity_simulation(const Topology& base, Rng& rng);

// n / (log2 n)^2, the ideal-scheduling capacity scaling.
double theoretical_capacity(int n);

struct CapacityRow {
  int n = 0;
  double mean_pairs = 0.0;
  double std_error = 0.0;
  double theoretical = 0.0;
  int trials = 0;
};

std::vector<CapacityRow> capacity_sweep(int d_min, int d_max, int trials,
                                        std::uint64_t seed);

}  // namespace nsw
