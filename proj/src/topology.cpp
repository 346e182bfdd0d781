#include "nsw/topology.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <stdexcept>

namespace nsw {

Topology Topology::build_nested(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  Topology t;
  t.d_ = d;
  t.n_ = 1 << d;
  const int n = t.n_;

  std::set<std::pair<NodeId, NodeId>> seen;
  for (int k = 0; k < d; ++k) {
    const int step = 1 << k;
    for (NodeId z = 0; z < n; ++z) {
      NodeId w = (z + step) % n;
      NodeId a = std::min(z, w);
      NodeId b = std::max(z, w);
      // +2^(d-1) and -2^(d-1) coincide mod n; keep one edge.
      if (seen.insert({a, b}).second) {
        t.nested_.push_back(Edge{a, b, EdgeKind::Nested, k});
      }
    }
  }
  for (int k = 0; k < d; ++k) {
    for (NodeId z = 0; z < n; ++z) {
      NodeId w = z ^ (1 << k);
      if (z < w) t.hyper_.push_back(Edge{z, w, EdgeKind::Hypercube, k});
    }
  }
  std::sort(t.nested_.begin(), t.nested_.end());
  std::sort(t.hyper_.begin(), t.hyper_.end());

  t.nested_adj_.resize(static_cast<std::size_t>(n));
  t.hyper_adj_.resize(static_cast<std::size_t>(n));
  for (const Edge& e : t.nested_) {
    t.nested_adj_[static_cast<std::size_t>(e.a)].push_back(e.b);
    t.nested_adj_[static_cast<std::size_t>(e.b)].push_back(e.a);
  }
  for (const Edge& e : t.hyper_) {
    t.hyper_adj_[static_cast<std::size_t>(e.a)].push_back(e.b);
    t.hyper_adj_[static_cast<std::size_t>(e.b)].push_back(e.a);
  }
  for (auto& adj : t.nested_adj_) std::sort(adj.begin(), adj.end());
  for (auto& adj : t.hyper_adj_) std::sort(adj.begin(), adj.end());

  t.failed_.assign(static_cast<std::size_t>(n), 0);
  return t;
}

std::vector<NodeId> Topology::surviving_nodes() const {
  std::vector<NodeId> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (NodeId z = 0; z < n_; ++z) {
    if (!failed_[static_cast<std::size_t>(z)]) out.push_back(z);
  }
  return out;
}

Topology Topology::with_failures(const std::vector<NodeId>& failed) const {
  Topology t = *this;
  for (NodeId z : failed) {
    if (z < 0 || z >= n_) throw std::invalid_argument("unknown node id");
    t.failed_[static_cast<std::size_t>(z)] = 1;
  }
  t.failed_list_.clear();
  for (NodeId z = 0; z < n_; ++z) {
    if (t.failed_[static_cast<std::size_t>(z)]) t.failed_list_.push_back(z);
  }
  return t;
}

int Topology::hypercube_edge_index(NodeId u, NodeId v) const {
  const int x = u ^ v;
  if (x == 0 || (x & (x - 1)) != 0) {
    throw std::invalid_argument("not a hypercube edge");
  }
  int k = 0;
  while ((x >> k) != 1) ++k;
  // Index by (k, endpoint with bit k clear, bit k removed).
  const int lo = std::min(u, v);
  const int low_bits = lo & ((1 << k) - 1);
  const int high_bits = (lo >> (k + 1)) << k;
  return k * (n_ / 2) + (high_bits | low_bits);
}

int Topology::surviving_hypercube_edge_count() const {
  int c = 0;
  for (const Edge& e : hyper_) {
    if (!is_failed(e.a) && !is_failed(e.b)) ++c;
  }
  return c;
}

int Topology::surviving_nested_edge_count() const {
  int c = 0;
  for (const Edge& e : nested_) {
    if (!is_failed(e.a) && !is_failed(e.b)) ++c;
  }
  return c;
}

Edge map_hypercube_edge(const Edge& e, int n) {
  const int x = e.a ^ e.b;
  if (x == 0 || (x & (x - 1)) != 0) {
    throw std::invalid_argument("endpoints do not differ in exactly one bit");
  }
  int k = 0;
  while ((x >> k) != 1) ++k;
  // Flipping bit k of z is z + 2^k (bit clear) or z - 2^k (bit set), so the
  // endpoint pair is always a nested edge of distance 2^k.
  (void)n;
  return Edge{std::min(e.a, e.b), std::max(e.a, e.b), EdgeKind::Nested, k};
}

ResourceCount resource_count(Architecture arch, int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("n must be even, >= 2");
  const long long nn = n;
  switch (arch) {
    case Architecture::Centralized:
      return {arch, nn, nn};
    case Architecture::AllToAllBell:
      return {arch, nn * (nn - 1) / 2, nn - 1};
    case Architecture::GHZ:
      return {arch, nn * (3 * nn + 2) / 8, nn - 1};
    case Architecture::Nested: {
      if ((n & (n - 1)) != 0) {
        throw std::invalid_argument("nested switch requires n = 2^d");
      }
      int d = 0;
      while ((1 << d) < n) ++d;
      return {arch, nn * d - nn / 2, 2LL * d - 1};
    }
  }
  throw std::invalid_argument("unknown architecture");
}

void write_edge_list(std::ostream& os, const Topology& t) {
  os << "nested-switch v1 d=" << t.dimension() << "\n";
  for (const Edge& e : t.nested_edges()) {
    if (t.is_failed(e.a) || t.is_failed(e.b)) continue;
    os << e.a << " " << e.b << " nested " << e.k << "\n";
  }
  for (const Edge& e : t.hypercube_edges()) {
    if (t.is_failed(e.a) || t.is_failed(e.b)) continue;
    os << e.a << " " << e.b << " hypercube " << e.k << "\n";
  }
}

std::string architecture_name(Architecture arch) {
  switch (arch) {
    case Architecture::Centralized: return "centralized";
    case Architecture::AllToAllBell: return "all-to-all-bell";
    case Architecture::GHZ: return "ghz";
    case Architecture::Nested: return "nested";
  }
  return "unknown";
}

}  // namespace nsw
