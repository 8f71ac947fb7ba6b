#include "eonplan/pathing.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "eonplan/topology.hpp"
#include "oracles.hpp"

using namespace eonplan;
using testfix::expect_link_disjoint;
using testfix::expect_valid_path;
using testfix::oracle_best_pair_km;

TEST(Dijkstra, ShortestPathAndBlocking) {
  // A-B-D is shorter than A-C-D; blocking A-B forces the detour.
  auto t = Topology::build({"A", "B", "C", "D"},
                           {{"A", "B", 1.0}, {"B", "D", 1.0}, {"A", "C", 2.0}, {"C", "D", 2.0}});
  std::vector<char> blocked(t.link_count(), 0);
  auto p = detail::dijkstra(t, 0, 3, blocked);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->nodes, (std::vector<int>{0, 1, 3}));
  EXPECT_DOUBLE_EQ(p->km, 2.0);

  blocked[0] = 1;  // A-B
  p = detail::dijkstra(t, 0, 3, blocked);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->nodes, (std::vector<int>{0, 2, 3}));

  blocked[2] = 1;  // A-C as well: no route left
  EXPECT_FALSE(detail::dijkstra(t, 0, 3, blocked));
}

TEST(RoutePairOrder, LengthThenHopsThenNodes) {
  RoutePair a, b;
  a.working_km = 5;
  a.backup_km = 5;
  b.working_km = 4;
  b.backup_km = 7;
  EXPECT_TRUE(route_pair_order(a, b));  // 10 < 11
  b.backup_km = 6;                      // both total 10
  a.working_links = {0};
  a.backup_links = {1};
  b.working_links = {0, 2};
  b.backup_links = {1};
  EXPECT_TRUE(route_pair_order(a, b));  // 2 hops < 3 hops
  b.working_links = {3};
  a.working_nodes = {0, 1};
  b.working_nodes = {0, 2};
  EXPECT_TRUE(route_pair_order(a, b));  // node sequence breaks the tie
}

TEST(SuurballePair, TrapGraphNeedsJointOptimization) {
  // The shortest path S-A-B-T uses both "middle" links; removing it first
  // leaves no second route.  The optimal pair reroutes both paths.
  auto t = Topology::build({"S", "A", "B", "T"}, {{"S", "A", 1.0},
                                                  {"A", "B", 1.0},
                                                  {"B", "T", 1.0},
                                                  {"S", "B", 3.0},
                                                  {"A", "T", 3.0}});
  auto rp = suurballe_pair(t, 0, 3);
  ASSERT_TRUE(rp);
  EXPECT_NEAR(rp->total_km(), 8.0, 1e-9);
  expect_link_disjoint(*rp);
  expect_valid_path(t, rp->working_nodes, rp->working_links, rp->working_km, 0, 3);
  expect_valid_path(t, rp->backup_nodes, rp->backup_links, rp->backup_km, 0, 3);
  // Working is the shorter (or tie-break-first) member of the pair.
  EXPECT_LE(rp->working_km, rp->backup_km);
}

TEST(SuurballePair, BridgeMeansNoPair) {
  auto t = Topology::build({"A", "B", "C"}, {{"A", "B", 1.0}, {"B", "C", 1.0}});
  EXPECT_FALSE(suurballe_pair(t, 0, 2));
  EXPECT_TRUE(k_disjoint_pairs(t, 0, 2, 4).empty());
  EXPECT_THROW(suurballe_pair(t, 0, 0), std::invalid_argument);
  EXPECT_THROW(suurballe_pair(t, 0, 9), std::invalid_argument);
}

TEST(SuurballePair, MatchesExhaustiveOracleOnRandomGraphs) {
  std::mt19937 rng(20240817);
  int graphs = 0, with_pair = 0;
  while (graphs < 60) {
    const int n = 6 + static_cast<int>(rng() % 3);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
    std::vector<std::tuple<std::string, std::string, double>> links;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 100 < 40)
          links.emplace_back(names[i], names[j], 1.0 + static_cast<double>(rng() % 20));
    Topology t;
    try {
      t = Topology::build(names, links);
    } catch (const ValidationError&) {
      continue;  // disconnected draw; try again
    }
    ++graphs;
    for (int trial = 0; trial < 3; ++trial) {
      const int s = static_cast<int>(rng() % n);
      int d = static_cast<int>(rng() % n);
      if (s == d) d = (d + 1) % n;
      const auto oracle = oracle_best_pair_km(t, s, d);
      const auto got = suurballe_pair(t, s, d);
      if (!oracle) {
        EXPECT_FALSE(got) << "pair reported where oracle finds none";
        continue;
      }
      ASSERT_TRUE(got) << "no pair found but oracle has one of length " << *oracle;
      EXPECT_NEAR(got->total_km(), *oracle, 1e-9);
      expect_link_disjoint(*got);
      expect_valid_path(t, got->working_nodes, got->working_links, got->working_km, s, d);
      expect_valid_path(t, got->backup_nodes, got->backup_links, got->backup_km, s, d);
      ++with_pair;
    }
  }
  EXPECT_GT(with_pair, 50) << "random corpus degenerated; widen the edge probability";
}

TEST(KDisjointPairs, PropertiesOnReferenceNetwork) {
  const auto t = cost239();
  const int src = t.node_index("London");
  const int dst = t.node_index("Vienna");
  ASSERT_GE(src, 0);
  ASSERT_GE(dst, 0);

  const auto base = suurballe_pair(t, src, dst);
  ASSERT_TRUE(base);
  for (int k : {1, 2, 4, 6}) {
    const auto pairs = k_disjoint_pairs(t, src, dst, k);
    ASSERT_FALSE(pairs.empty());
    EXPECT_LE(static_cast<int>(pairs.size()), k);
    // Entry 0 is the plain algorithm's answer.
    EXPECT_EQ(pairs[0].working_nodes, base->working_nodes);
    EXPECT_EQ(pairs[0].backup_nodes, base->backup_nodes);

    std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
    for (const RoutePair& rp : pairs) {
      expect_link_disjoint(rp);
      expect_valid_path(t, rp.working_nodes, rp.working_links, rp.working_km, src, dst);
      expect_valid_path(t, rp.backup_nodes, rp.backup_links, rp.backup_km, src, dst);
      EXPECT_TRUE(seen.insert({rp.working_nodes, rp.backup_nodes}).second) << "duplicate pair";
      EXPECT_GE(rp.total_km(), base->total_km() - 1e-9);  // none beats the optimum
    }
    // Beyond the pinned first entry the list is cost-ordered.
    for (std::size_t i = 2; i < pairs.size(); ++i)
      EXPECT_FALSE(route_pair_order(pairs[i], pairs[i - 1]));
  }
  EXPECT_THROW(k_disjoint_pairs(t, src, dst, 0), std::invalid_argument);
}

TEST(KDisjointPairs, FindsAlternativesWhenTheyExist) {
  // Two fully separate corridors; k = 2 must surface both combinations.
  auto t = Topology::build({"S", "A", "B", "C", "D", "T"}, {{"S", "A", 1.0},
                                                            {"A", "T", 1.0},
                                                            {"S", "B", 2.0},
                                                            {"B", "T", 2.0},
                                                            {"S", "C", 3.0},
                                                            {"C", "T", 3.0},
                                                            {"S", "D", 4.0},
                                                            {"D", "T", 4.0}});
  const auto pairs = k_disjoint_pairs(t, 0, 5, 3);
  ASSERT_GE(pairs.size(), 3u);
  EXPECT_NEAR(pairs[0].total_km(), 6.0, 1e-9);   // A + B corridors
  EXPECT_GE(pairs[1].total_km(), pairs[0].total_km());
}

TEST(PathStrings, RenderAndCsvShape) {
  auto t = Topology::build({"S", "A", "T"}, {{"S", "A", 1.0}, {"A", "T", 2.0}, {"S", "T", 5.0}});
  EXPECT_EQ(path_to_string(t, {0, 1, 2}), "S-A-T");

  auto rp = suurballe_pair(t, 0, 2);
  ASSERT_TRUE(rp);
  const std::string csv = pairs_to_csv(t, {{*rp}});
  std::istringstream in(csv);
  std::string line;
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line, "demand,pair,working,backup,working_km,backup_km");
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line, "0,0,S-A-T,S-T,3,5");
  EXPECT_FALSE(std::getline(in, line));
}
