#include "nsw/routing.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "nsw/detail/bfs.hpp"

namespace nsw {

namespace {

std::pair<NodeId, NodeId> canonical(NodeId u, NodeId v) {
  return {std::min(u, v), std::max(u, v)};
}

}  // namespace

bool PathEnumerator::CandidateLess::operator()(const std::vector<NodeId>& a,
                                               const std::vector<NodeId>& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(), [this](NodeId x, NodeId y) {
        return (*rank)[static_cast<std::size_t>(x)] < (*rank)[static_cast<std::size_t>(y)];
      });
}

PathEnumerator::PathEnumerator(const Topology& t, NodeId s, NodeId d, std::vector<int> rank)
    : topo_(t), src_(s), dst_(d), rank_(std::move(rank)), candidates_(CandidateLess{&rank_}) {
  if (s == d) throw std::invalid_argument("source equals destination");
  if (s < 0 || d < 0 || s >= t.node_count() || d >= t.node_count()) {
    throw std::invalid_argument("endpoint out of range");
  }
  if (t.is_failed(s) || t.is_failed(d)) {
    throw std::invalid_argument("endpoint is a failed node");
  }
  if (rank_.empty()) {
    rank_.resize(static_cast<std::size_t>(t.node_count()));
    std::iota(rank_.begin(), rank_.end(), 0);
  } else if (rank_.size() != static_cast<std::size_t>(t.node_count())) {
    throw std::invalid_argument("rank size must match node count");
  }
}

std::optional<std::vector<NodeId>> PathEnumerator::spur_path(
    const std::vector<char>& banned_nodes,
    const std::set<std::pair<NodeId, NodeId>>& banned_edges, NodeId from) const {
  const Topology& t = topo_;
  return detail::ranked_shortest_path(
      t.node_count(), from, dst_,
      [&](NodeId z) -> const std::vector<NodeId>& { return t.hypercube_neighbors(z); },
      [&](NodeId z) {
        return !t.is_failed(z) && !banned_nodes[static_cast<std::size_t>(z)];
      },
      [&](NodeId u, NodeId v) { return !banned_edges.count(canonical(u, v)); },
      [&](NodeId z) { return rank_[static_cast<std::size_t>(z)]; });
}

std::optional<Path> PathEnumerator::next() {
  if (exhausted_) return std::nullopt;
  if (!started_) {
    started_ = true;
    const std::vector<char> no_nodes(static_cast<std::size_t>(topo_.node_count()), 0);
    auto p = spur_path(no_nodes, {}, src_);
    if (!p) {
      exhausted_ = true;
      return std::nullopt;
    }
    accepted_.push_back(*p);
    known_.insert(*p);
    return Path{*p};
  }

  // Yen: deviations of the last accepted path feed the candidate pool.
  const std::vector<NodeId> prev = accepted_.back();
  std::vector<char> banned_nodes(static_cast<std::size_t>(topo_.node_count()), 0);
  for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
    const NodeId spur_node = prev[i];
    std::set<std::pair<NodeId, NodeId>> banned_edges;
    for (const auto& p : accepted_) {
      if (p.size() > i && std::equal(prev.begin(), prev.begin() + static_cast<long>(i) + 1,
                                     p.begin(), p.begin() + static_cast<long>(i) + 1)) {
        banned_edges.insert(canonical(p[i], p[i + 1]));
      }
    }
    auto spur = spur_path(banned_nodes, banned_edges, spur_node);
    if (spur) {
      std::vector<NodeId> cand(prev.begin(), prev.begin() + static_cast<long>(i));
      cand.insert(cand.end(), spur->begin(), spur->end());
      if (known_.insert(cand).second) candidates_.insert(std::move(cand));
    }
    banned_nodes[static_cast<std::size_t>(spur_node)] = 1;
  }

  if (candidates_.empty()) {
    exhausted_ = true;
    return std::nullopt;
  }
  auto it = candidates_.begin();
  accepted_.push_back(*it);
  Path out{*it};
  candidates_.erase(it);
  return out;
}

std::vector<Path> k_shortest_paths(const Topology& t, NodeId s, NodeId d, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  PathEnumerator en(t, s, d);
  std::vector<Path> out;
  for (int i = 0; i < k; ++i) {
    auto p = en.next();
    if (!p) break;
    out.push_back(std::move(*p));
  }
  return out;
}

int RoutePlan::served_count() const {
  int c = 0;
  for (const auto& o : outcomes) c += o.served ? 1 : 0;
  return c;
}

RoutePlan route_matching(const Topology& t, const Matching& m, int capacity,
                         int path_budget, Rng& rng) {
  if (capacity < 1) throw std::invalid_argument("capacity must be >= 1");
  if (path_budget < 1) throw std::invalid_argument("path budget must be >= 1");
  const auto violations = validate_matching(m, t.surviving_nodes());
  if (!violations.empty()) {
    throw std::invalid_argument("invalid matching: " + violation_message(violations.front()));
  }

  RoutePlan plan;
  plan.capacity = capacity;
  plan.path_budget = path_budget;
  plan.load.assign(static_cast<std::size_t>(t.hypercube_edge_count()), 0);

  std::vector<std::pair<NodeId, NodeId>> order = m.pairs;
  rng.shuffle(order);

  std::vector<int> rank(static_cast<std::size_t>(t.node_count()));
  for (const auto& [u, v] : order) {
    RoutePlan::PairOutcome outcome;
    outcome.endpoints = {u, v};
    std::iota(rank.begin(), rank.end(), 0);
    rng.shuffle(rank);
    PathEnumerator en(t, u, v, rank);
    for (int i = 0; i < path_budget; ++i) {
      auto p = en.next();
      if (!p) break;
      bool fits = true;
      for (std::size_t j = 0; j + 1 < p->nodes.size(); ++j) {
        const int e = t.hypercube_edge_index(p->nodes[j], p->nodes[j + 1]);
        if (plan.load[static_cast<std::size_t>(e)] >= capacity) {
          fits = false;
          break;
        }
      }
      if (fits) {
        for (std::size_t j = 0; j + 1 < p->nodes.size(); ++j) {
          const int e = t.hypercube_edge_index(p->nodes[j], p->nodes[j + 1]);
          ++plan.load[static_cast<std::size_t>(e)];
        }
        outcome.served = true;
        outcome.path = std::move(*p);
        break;
      }
    }
    plan.outcomes.push_back(std::move(outcome));
  }
  return plan;
}

PlanMetrics plan_metrics(const RoutePlan& plan, const Topology& t) {
  PlanMetrics mt;
  long long hops = 0;
  int served = 0;
  for (const auto& o : plan.outcomes) {
    if (o.served) {
      ++served;
      hops += o.path.length();
    }
  }
  mt.served_fraction =
      plan.outcomes.empty() ? 0.0
                            : static_cast<double>(served) / static_cast<double>(plan.outcomes.size());
  if (served > 0) {
    mt.mean_path_length = static_cast<double>(hops) / static_cast<double>(served);
  }
  for (const Edge& e : t.hypercube_edges()) {
    if (t.is_failed(e.a) || t.is_failed(e.b)) continue;
    const int load = plan.load.empty()
                         ? 0
                         : plan.load[static_cast<std::size_t>(t.hypercube_edge_index(e.a, e.b))];
    ++mt.load_histogram[load];
    mt.max_edge_load = std::max(mt.max_edge_load, load);
  }
  return mt;
}

namespace {

// All simple s-t paths in the surviving hypercube subgraph, (length, lex)
// sorted. Only used at brute-force scale.
void all_simple_paths_rec(const Topology& t, NodeId cur, NodeId dst,
                          std::vector<NodeId>& path, std::vector<char>& visited,
                          std::vector<std::vector<NodeId>>& out) {
  if (cur == dst) {
    out.push_back(path);
    return;
  }
  for (NodeId w : t.hypercube_neighbors(cur)) {
    if (t.is_failed(w) || visited[static_cast<std::size_t>(w)]) continue;
    visited[static_cast<std::size_t>(w)] = 1;
    path.push_back(w);
    all_simple_paths_rec(t, w, dst, path, visited, out);
    path.pop_back();
    visited[static_cast<std::size_t>(w)] = 0;
  }
}

struct BruteState {
  const Topology* topo;
  int capacity;
  std::vector<std::vector<std::vector<NodeId>>> candidate_paths;  // per pair
  std::vector<int> load;
  int best = 0;

  void search(std::size_t pair_idx, int served) {
    const int remaining = static_cast<int>(candidate_paths.size() - pair_idx);
    if (served + remaining <= best) return;
    if (pair_idx == candidate_paths.size()) {
      best = std::max(best, served);
      return;
    }
    for (const auto& p : candidate_paths[pair_idx]) {
      bool fits = true;
      for (std::size_t j = 0; j + 1 < p.size(); ++j) {
        const int e = topo->hypercube_edge_index(p[j], p[j + 1]);
        if (load[static_cast<std::size_t>(e)] >= capacity) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      for (std::size_t j = 0; j + 1 < p.size(); ++j) {
        ++load[static_cast<std::size_t>(topo->hypercube_edge_index(p[j], p[j + 1]))];
      }
      search(pair_idx + 1, served + 1);
      for (std::size_t j = 0; j + 1 < p.size(); ++j) {
        --load[static_cast<std::size_t>(topo->hypercube_edge_index(p[j], p[j + 1]))];
      }
      if (best == static_cast<int>(candidate_paths.size())) return;
    }
    search(pair_idx + 1, served);
  }
};

}  // namespace

int brute_force_route(const Topology& t, const Matching& m, int capacity) {
  if (t.surviving_count() > 16) {
    throw std::invalid_argument("brute force limited to 16 surviving nodes");
  }
  const auto violations = validate_matching(m, t.surviving_nodes());
  if (!violations.empty()) {
    throw std::invalid_argument("invalid matching: " + violation_message(violations.front()));
  }

  BruteState st;
  st.topo = &t;
  st.capacity = capacity;
  st.load.assign(static_cast<std::size_t>(t.hypercube_edge_count()), 0);
  for (const auto& [u, v] : m.pairs) {
    std::vector<std::vector<NodeId>> paths;
    std::vector<NodeId> path{u};
    std::vector<char> visited(static_cast<std::size_t>(t.node_count()), 0);
    visited[static_cast<std::size_t>(u)] = 1;
    all_simple_paths_rec(t, u, v, path, visited, paths);
    std::sort(paths.begin(), paths.end(),
              [](const std::vector<NodeId>& x, const std::vector<NodeId>& y) {
                if (x.size() != y.size()) return x.size() < y.size();
                return x < y;
              });
    st.candidate_paths.push_back(std::move(paths));
  }
  st.search(0, 0);
  return st.best;
}

}  // namespace nsw
