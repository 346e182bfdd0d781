#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nsw/rng.hpp"
#include "nsw/topology.hpp"

namespace nsw {

// A connection request: disjoint node pairs (a fixed-point-free involution
// on the nodes it touches). Pairs are stored canonically (min, max) and
// sorted, so equal matchings compare equal.
struct Matching {
  std::vector<std::pair<NodeId, NodeId>> pairs;

  void canonicalize();
  bool operator==(const Matching& o) const { return pairs == o.pairs; }
};

// Uniformly random perfect matching over `nodes`. With an odd node count
// one node (uniformly random) is left unpaired.
Matching random_perfect_matching(const std::vector<NodeId>& nodes, Rng& rng);

// (n-1)!! for even n: the number of perfect matchings on n labeled nodes.
std::uint64_t count_matchings(int n);

// Every perfect matching on `nodes`, each exactly once, deterministic
// order. Guarded to |nodes| <= 12.
std::vector<Matching> enumerate_matchings(const std::vector<NodeId>& nodes);

struct Violation {
  enum class Kind { DuplicateNode, SelfPair, FailedNode };
  Kind kind;
  NodeId node;
};

// Reports duplicate nodes, self-pairs and references to nodes outside the
// surviving set. Empty result means the matching is valid.
std::vector<Violation> validate_matching(const Matching& m,
                                         const std::vector<NodeId>& surviving);

// Text format: one "u v" pair per line; '#' lines ignored.
Matching read_matching(std::istream& is);
void write_matching(std::ostream& os, const Matching& m);

std::string violation_message(const Violation& v);

}  // namespace nsw
