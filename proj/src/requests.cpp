#include "nsw/requests.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nsw {

void Matching::canonicalize() {
  for (auto& p : pairs) {
    if (p.first > p.second) std::swap(p.first, p.second);
  }
  std::sort(pairs.begin(), pairs.end());
}

Matching random_perfect_matching(const std::vector<NodeId>& nodes, Rng& rng) {
  if (nodes.size() < 2) throw std::invalid_argument("need at least 2 nodes");
  std::vector<NodeId> order = nodes;
  rng.shuffle(order);
  Matching m;
  // A uniform shuffle paired consecutively is uniform over matchings; with
  // odd counts the trailing element is the unpaired node.
  for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
    m.pairs.emplace_back(order[i], order[i + 1]);
  }
  m.canonicalize();
  return m;
}

std::uint64_t count_matchings(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("n must be even, >= 2");
  std::uint64_t result = 1;
  for (int k = n - 1; k > 1; k -= 2) result *= static_cast<std::uint64_t>(k);
  return result;
}

namespace {

void enumerate_rec(std::vector<NodeId>& remaining, Matching& current,
                   std::vector<Matching>& out) {
  if (remaining.empty()) {
    Matching m = current;
    m.canonicalize();
    out.push_back(std::move(m));
    return;
  }
  const NodeId first = remaining.front();
  for (std::size_t i = 1; i < remaining.size(); ++i) {
    const NodeId partner = remaining[i];
    std::vector<NodeId> rest;
    rest.reserve(remaining.size() - 2);
    for (std::size_t j = 1; j < remaining.size(); ++j) {
      if (j != i) rest.push_back(remaining[j]);
    }
    current.pairs.emplace_back(first, partner);
    enumerate_rec(rest, current, out);
    current.pairs.pop_back();
  }
}

}  // namespace

std::vector<Matching> enumerate_matchings(const std::vector<NodeId>& nodes) {
  if (nodes.size() % 2 != 0) throw std::invalid_argument("node count must be even");
  if (nodes.size() > 12) throw std::invalid_argument("enumeration limited to 12 nodes");
  if (nodes.empty()) return {};
  std::vector<NodeId> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Matching> out;
  Matching current;
  enumerate_rec(sorted, current, out);
  return out;
}

std::vector<Violation> validate_matching(const Matching& m,
                                         const std::vector<NodeId>& surviving) {
  std::vector<Violation> out;
  const std::set<NodeId> alive(surviving.begin(), surviving.end());
  std::set<NodeId> seen;
  for (const auto& [u, v] : m.pairs) {
    if (u == v) out.push_back({Violation::Kind::SelfPair, u});
    for (NodeId z : {u, v}) {
      if (u == v && z == v) continue;
      if (!seen.insert(z).second) out.push_back({Violation::Kind::DuplicateNode, z});
      if (!alive.count(z)) out.push_back({Violation::Kind::FailedNode, z});
    }
  }
  return out;
}

Matching read_matching(std::istream& is) {
  Matching m;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    NodeId u, v;
    if (!(ls >> u >> v)) throw std::runtime_error("bad matching line: " + line);
    m.pairs.emplace_back(u, v);
  }
  m.canonicalize();
  return m;
}

void write_matching(std::ostream& os, const Matching& m) {
  for (const auto& [u, v] : m.pairs) os << u << " " << v << "\n";
}

std::string violation_message(const Violation& v) {
  std::string kind;
  switch (v.kind) {
    case Violation::Kind::DuplicateNode: kind = "duplicate node"; break;
    case Violation::Kind::SelfPair: kind = "self pair"; break;
    case Violation::Kind::FailedNode: kind = "failed or unknown node"; break;
  }
  return kind + ": " + std::to_string(v.node);
}

}  // namespace nsw
