#include "nsw/graphstate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "nsw/detail/bfs.hpp"
#include "nsw/experiments.hpp"
#include "nsw/requests.hpp"

namespace nsw {

GraphStateResource::GraphStateResource(const Topology& base)
    : base_(&base),
      alive_(static_cast<std::size_t>(base.node_count()), 1),
      alive_count_(base.node_count()) {
  for (NodeId z : base.failed_nodes()) {
    alive_[static_cast<std::size_t>(z)] = 0;
    --alive_count_;
  }
}

std::vector<NodeId> GraphStateResource::alive_nodes() const {
  std::vector<NodeId> out;
  out.reserve(static_cast<std::size_t>(alive_count_));
  for (NodeId z = 0; z < base_->node_count(); ++z) {
    if (alive_[static_cast<std::size_t>(z)]) out.push_back(z);
  }
  return out;
}

std::optional<ExtractionRecord> GraphStateResource::extract_pair(NodeId u, NodeId v) {
  if (u < 0 || v < 0 || u >= base_->node_count() || v >= base_->node_count() || u == v) {
    throw std::invalid_argument("bad endpoint pair");
  }
  if (!is_alive(u) || !is_alive(v)) {
    throw std::invalid_argument("endpoint qubit already measured");
  }
  auto path = detail::lex_shortest_path(
      base_->node_count(), u, v,
      [&](NodeId z) -> const std::vector<NodeId>& { return base_->nested_neighbors(z); },
      [&](NodeId z) { return static_cast<bool>(alive_[static_cast<std::size_t>(z)]); },
      [](NodeId, NodeId) { return true; });
  if (!path) return std::nullopt;

  std::set<NodeId> consumed(path->begin(), path->end());
  for (NodeId z : *path) {
    for (NodeId w : base_->nested_neighbors(z)) {
      if (alive_[static_cast<std::size_t>(w)]) consumed.insert(w);
    }
  }
  for (NodeId z : consumed) {
    alive_[static_cast<std::size_t>(z)] = 0;
    --alive_count_;
  }

  ExtractionRecord rec;
  rec.u = u;
  rec.v = v;
  rec.path = std::move(*path);
  rec.consumed.assign(consumed.begin(), consumed.end());
  rec.measured_count = static_cast<int>(rec.consumed.size()) - 2;
  return rec;
}

int capacity_simulation(const Topology& base, Rng& rng) {
  if (base.dimension() < 2) throw std::invalid_argument("dimension must be >= 2");
  GraphStateResource res(base);
  std::vector<NodeId> alive = res.alive_nodes();
  if (alive.size() < 2) return 0;
  if (alive.size() % 2 != 0) {
    alive.erase(alive.begin() + static_cast<long>(rng.below(alive.size())));
  }
  const Matching request = random_perfect_matching(alive, rng);
  std::vector<std::pair<NodeId, NodeId>> order = request.pairs;
  rng.shuffle(order);

  int extracted = 0;
  for (const auto& [u, v] : order) {
    if (!res.is_alive(u) || !res.is_alive(v)) continue;
    if (res.extract_pair(u, v)) ++extracted;
  }
  return extracted;
}

double theoretical_capacity(int n) {
  if (n < 4) throw std::domain_error("n must be >= 4");
  const double log2n = std::log2(static_cast<double>(n));
  return static_cast<double>(n) / (log2n * log2n);
}

std::vector<CapacityRow> capacity_sweep(int d_min, int d_max, int trials,
                                        std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (d_min < 2 || d_max < d_min) throw std::invalid_argument("bad dimension range");
  std::vector<CapacityRow> rows;
  for (int d = d_min; d <= d_max; ++d) {
    const Topology base = Topology::build_nested(d);
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(trials));
    for (int i = 0; i < trials; ++i) {
      Rng rng(derive_seed(seed, /*stream=*/5, static_cast<std::uint64_t>(d),
                          static_cast<std::uint64_t>(i)));
      samples.push_back(static_cast<double>(capacity_simulation(base, rng)));
    }
    const AggregateStats stats = aggregate(samples);
    rows.push_back({base.node_count(), stats.mean, stats.std_error,
                    theoretical_capacity(base.node_count()), trials});
  }
  return rows;
}

}  // namespace nsw
