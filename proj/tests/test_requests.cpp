#include <set>
#include <sstream>

#include "doctest.h"
#include "nsw/requests.hpp"

using nsw::Matching;
using nsw::NodeId;
using nsw::Rng;
using nsw::Violation;

TEST_CASE("count_matchings is the double factorial") {
  CHECK(nsw::count_matchings(2) == 1);
  CHECK(nsw::count_matchings(4) == 3);
  CHECK(nsw::count_matchings(6) == 15);
  CHECK(nsw::count_matchings(8) == 105);
  CHECK_THROWS_AS(nsw::count_matchings(5), std::invalid_argument);
  CHECK_THROWS_AS(nsw::count_matchings(0), std::invalid_argument);
}

TEST_CASE("enumeration is exhaustive and duplicate free") {
  CHECK(nsw::enumerate_matchings({0, 1}).size() == 1);
  CHECK(nsw::enumerate_matchings({0, 1, 2, 3}).size() == 3);

  for (int n : {2, 4, 6, 8, 10}) {
    std::vector<NodeId> nodes;
    for (int i = 0; i < n; ++i) nodes.push_back(i);
    const auto all = nsw::enumerate_matchings(nodes);
    CHECK(all.size() == nsw::count_matchings(n));
    std::set<std::vector<std::pair<NodeId, NodeId>>> distinct;
    for (const Matching& m : all) {
      CHECK(m.pairs.size() == static_cast<std::size_t>(n / 2));
      CHECK(distinct.insert(m.pairs).second);
    }
  }
}

TEST_CASE("enumeration guards") {
  CHECK_THROWS_AS(nsw::enumerate_matchings({0, 1, 2}), std::invalid_argument);
  std::vector<NodeId> big;
  for (int i = 0; i < 14; ++i) big.push_back(i);
  CHECK_THROWS_AS(nsw::enumerate_matchings(big), std::invalid_argument);
}

TEST_CASE("random matching basics") {
  Rng rng(7);
  SUBCASE("two nodes give the unique matching") {
    const Matching m = nsw::random_perfect_matching({0, 1}, rng);
    REQUIRE(m.pairs.size() == 1);
    CHECK(m.pairs[0] == std::pair<NodeId, NodeId>{0, 1});
  }
  SUBCASE("odd count leaves exactly one node unpaired") {
    const Matching m = nsw::random_perfect_matching({0, 1, 2}, rng);
    CHECK(m.pairs.size() == 1);
  }
  SUBCASE("too few nodes rejected") {
    CHECK_THROWS_AS(nsw::random_perfect_matching({0}, rng), std::invalid_argument);
  }
}

TEST_CASE("random matching is valid and reproducible") {
  const std::vector<NodeId> nodes{0, 1, 2, 3, 4, 5, 6, 7};
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 50; ++i) {
    const Matching ma = nsw::random_perfect_matching(nodes, a);
    const Matching mb = nsw::random_perfect_matching(nodes, b);
    CHECK(ma == mb);
    CHECK(nsw::validate_matching(ma, nodes).empty());
  }
  // Different seed diverges somewhere over 50 draws.
  bool diverged = false;
  Rng a2(42);
  for (int i = 0; i < 50 && !diverged; ++i) {
    diverged = !(nsw::random_perfect_matching(nodes, a2) ==
                 nsw::random_perfect_matching(nodes, c));
  }
  CHECK(diverged);
}

TEST_CASE("random matching is uniform over the 3 matchings on 4 nodes") {
  const std::vector<NodeId> nodes{0, 1, 2, 3};
  const auto all = nsw::enumerate_matchings(nodes);
  REQUIRE(all.size() == 3);
  std::vector<int> counts(3, 0);
  Rng rng(123);
  const int draws = 30000;
  for (int i = 0; i < draws; ++i) {
    const Matching m = nsw::random_perfect_matching(nodes, rng);
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (m == all[j]) ++counts[j];
    }
  }
  // Chi-square against uniform, 2 dof; 99.9% quantile is 13.8.
  double chi2 = 0.0;
  const double expected = draws / 3.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < 13.8);
}

TEST_CASE("validate_matching reports violations") {
  const std::vector<NodeId> all{0, 1, 2, 3};
  SUBCASE("valid") {
    Matching m{{{0, 1}, {2, 3}}};
    CHECK(nsw::validate_matching(m, all).empty());
  }
  SUBCASE("duplicate node") {
    Matching m{{{0, 1}, {1, 2}}};
    const auto v = nsw::validate_matching(m, all);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == Violation::Kind::DuplicateNode);
    CHECK(v[0].node == 1);
  }
  SUBCASE("self pair") {
    Matching m{{{2, 2}}};
    const auto v = nsw::validate_matching(m, all);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].kind == Violation::Kind::SelfPair);
  }
  SUBCASE("failed node") {
    Matching m{{{0, 1}}};
    const auto v = nsw::validate_matching(m, {0, 2, 3});
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == Violation::Kind::FailedNode);
    CHECK(v[0].node == 1);
  }
}

TEST_CASE("matching text round trip") {
  Matching m{{{5, 2}, {0, 7}}};
  m.canonicalize();
  std::ostringstream os;
  nsw::write_matching(os, m);
  std::istringstream is(os.str());
  CHECK(nsw::read_matching(is) == m);
}
