// Reference implementations shared by the unit and acceptance suites.  Both
// oracles deliberately ignore how the production code searches: the pathing
// oracle enumerates every simple path, the solver oracle enumerates every
// placement over the full spectrum.  They are only usable on small inputs.

#pragma once

#include <gtest/gtest.h>

#include <functional>
#include <optional>
#include <random>
#include <set>

#include "common.hpp"
#include "eonplan/feasibility.hpp"
#include "eonplan/instance.hpp"
#include "eonplan/pathing.hpp"

namespace testfix {

using namespace eonplan;

// Checks that a node sequence and link sequence describe the same simple
// src -> dst walk through the topology.
inline void expect_valid_path(const Topology& t, const std::vector<int>& nodes,
                              const std::vector<int>& links, double km, int src, int dst) {
  ASSERT_GE(nodes.size(), 2u);
  ASSERT_EQ(links.size(), nodes.size() - 1);
  EXPECT_EQ(nodes.front(), src);
  EXPECT_EQ(nodes.back(), dst);
  std::set<int> distinct(nodes.begin(), nodes.end());
  EXPECT_EQ(distinct.size(), nodes.size()) << "path revisits a node";
  double total = 0.0;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const Link& l = t.link(links[i]);
    const bool forward = l.a == nodes[i] && l.b == nodes[i + 1];
    const bool reverse = l.b == nodes[i] && l.a == nodes[i + 1];
    EXPECT_TRUE(forward || reverse) << "link " << links[i] << " does not join nodes "
                                    << nodes[i] << " and " << nodes[i + 1];
    total += l.length_km;
  }
  EXPECT_NEAR(total, km, 1e-9);
}

inline void expect_link_disjoint(const RoutePair& rp) {
  for (int e : rp.working_links) EXPECT_FALSE(rp.backup_uses(e)) << "shared link " << e;
}

struct SimplePath {
  std::vector<int> nodes;
  std::vector<int> links;
  double km = 0.0;
};

inline std::vector<SimplePath> all_simple_paths(const Topology& t, int src, int dst) {
  std::vector<SimplePath> out;
  std::vector<char> on_path(t.node_count(), 0);
  SimplePath cur;
  cur.nodes.push_back(src);
  on_path[src] = 1;
  std::function<void(int)> dfs = [&](int u) {
    if (u == dst) {
      out.push_back(cur);
      return;
    }
    for (const auto& [v, lid] : t.neighbors(u)) {
      if (on_path[v]) continue;
      on_path[v] = 1;
      cur.nodes.push_back(v);
      cur.links.push_back(lid);
      cur.km += t.link(lid).length_km;
      dfs(v);
      cur.km -= t.link(lid).length_km;
      cur.links.pop_back();
      cur.nodes.pop_back();
      on_path[v] = 0;
    }
  };
  dfs(src);
  return out;
}

// Best combined length over all link-disjoint path pairs, or nullopt.
inline std::optional<double> oracle_best_pair_km(const Topology& t, int src, int dst) {
  const auto paths = all_simple_paths(t, src, dst);
  std::optional<double> best;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = i + 1; j < paths.size(); ++j) {
      std::set<int> la(paths[i].links.begin(), paths[i].links.end());
      bool disjoint = true;
      for (int e : paths[j].links)
        if (la.count(e)) { disjoint = false; break; }
      if (!disjoint) continue;
      const double total = paths[i].km + paths[j].km;
      if (!best || total < *best) best = total;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Exhaustive reference solver.  Enumerates every (pair, service, working
// start, backup start) combination per demand over the full spectrum, checks
// collisions and the service-level constraint directly, and keeps the
// lexicographically best (distinct slices, occupied cells).  Shares only the
// feasibility table with the search under test.

struct OracleOption {
  int pair, service, sw, sb;
};

struct OracleResult {
  bool found = false;
  int phi = 0;
  long long usage = 0;
};

class Oracle {
 public:
  Oracle(const PlanningInstance& inst, const FeasibilityTable& table)
      : inst_(inst), table_(table), E_(inst.topology.link_count()), S_(inst.slice_count) {}

  OracleResult run() {
    const int D = static_cast<int>(table_.plans.size());
    options_.resize(D);
    for (int d = 0; d < D; ++d) {
      for (int k : inst_.allowed_services(d))
        for (std::size_t p = 0; p < table_.plans[d].pairs.size(); ++p) {
          const ServiceConfig& c = table_.plans[d].configs[p][k];
          if (!c.feasible) continue;
          for (int sw = 0; sw + c.working_width <= S_; ++sw)
            for (int sb = 0; sb + c.backup_width <= S_; ++sb)
              options_[d].push_back({static_cast<int>(p), k, sw, sb});
        }
    }
    occ_.assign(static_cast<std::size_t>(E_) * S_, 0);
    choice_.assign(D, OracleOption{});
    descend(0);
    return best_;
  }

 private:
  void descend(int d) {
    if (d == static_cast<int>(options_.size())) {
      finish();
      return;
    }
    const DemandPlan& plan = table_.plans[d];
    for (const OracleOption& o : options_[d]) {
      const ServiceConfig& c = plan.configs[o.pair][o.service];
      const auto& wl = plan.pairs[o.pair].working_links;
      const auto& bl = plan.pairs[o.pair].backup_links;
      // Working and backup links are disjoint, so the two checks commute.
      if (!free_region(wl, o.sw, c.working_width)) continue;
      if (!free_region(bl, o.sb, c.backup_width)) continue;
      apply(wl, o.sw, c.working_width, 1);
      apply(bl, o.sb, c.backup_width, 1);
      choice_[d] = o;
      descend(d + 1);
      apply(wl, o.sw, c.working_width, -1);
      apply(bl, o.sb, c.backup_width, -1);
    }
  }

  bool free_region(const std::vector<int>& links, int start, int width) const {
    for (int e : links)
      for (int s = start; s < start + width; ++s)
        if (occ_[static_cast<std::size_t>(e) * S_ + s]) return false;
    return true;
  }

  void apply(const std::vector<int>& links, int start, int width, int delta) {
    for (int e : links)
      for (int s = start; s < start + width; ++s) occ_[static_cast<std::size_t>(e) * S_ + s] += delta;
  }

  void finish() {
    if (!sla_ok()) return;
    int phi = 0;
    long long usage = 0;
    for (int s = 0; s < S_; ++s) {
      bool used = false;
      for (int e = 0; e < E_; ++e)
        if (occ_[static_cast<std::size_t>(e) * S_ + s]) { used = true; ++usage; }
      if (used) ++phi;
    }
    if (!best_.found || phi < best_.phi || (phi == best_.phi && usage < best_.usage)) {
      best_ = {true, phi, usage};
    }
  }

  bool sla_ok() const {
    const Frac total = inst_.total_rate_mbps();
    if (inst_.sla_form == SlaForm::Survivable) {
      const Frac budget = (Frac(1) - inst_.sla) * total;
      for (int e = 0; e < E_; ++e) {
        Frac loss{0};
        for (std::size_t d = 0; d < choice_.size(); ++d) {
          const OracleOption& o = choice_[d];
          if (!table_.plans[d].pairs[o.pair].working_uses(e)) continue;
          loss = loss + (Frac(1) - inst_.services[o.service].fraction) *
                            table_.plans[d].demand.rate_mbps;
        }
        if (budget < loss) return false;
      }
      return true;
    }
    Frac lhs{0};
    for (std::size_t d = 0; d < choice_.size(); ++d) {
      const Frac t = table_.plans[d].demand.rate_mbps;
      lhs = lhs + (inst_.sla_form == SlaForm::Literal
                       ? t
                       : inst_.services[choice_[d].service].fraction * t);
    }
    return !(lhs < inst_.sla * total);
  }

  const PlanningInstance& inst_;
  const FeasibilityTable& table_;
  const int E_, S_;
  std::vector<std::vector<OracleOption>> options_;
  std::vector<OracleOption> choice_;
  std::vector<int> occ_;
  OracleResult best_;
};

// ---------------------------------------------------------------------------

inline PlanningInstance small_random_instance(std::mt19937& rng) {
  // Pool of dense little graphs so disjoint pairs usually exist.
  static const std::vector<Topology> pool = [] {
    std::vector<Topology> ts;
    ts.push_back(Topology::build({"A", "B", "C", "D"},
                                 {{"A", "B", 300}, {"B", "C", 300}, {"C", "D", 300},
                                  {"D", "A", 300}, {"A", "C", 500}}));
    ts.push_back(Topology::build({"A", "B", "C", "D", "E"},
                                 {{"A", "B", 200}, {"B", "C", 250}, {"C", "D", 200},
                                  {"D", "E", 250}, {"E", "A", 300}, {"B", "D", 400},
                                  {"A", "C", 450}}));
    ts.push_back(testfix::example_topology());
    return ts;
  }();

  PlanningInstance inst;
  inst.topology = pool[rng() % pool.size()];
  const int n = inst.topology.node_count();
  const int D = 1 + static_cast<int>(rng() % 3);
  inst.slice_count = D == 3 ? 6 : 5 + static_cast<int>(rng() % 4);
  inst.route_pair_count = 2;

  static const std::int64_t kRates[] = {25000, 50000, 100000, 175000};
  std::set<std::pair<int, int>> used;
  for (int i = 0; i < D; ++i) {
    Demand d;
    d.id = i;
    for (int tries = 0; tries < 50; ++tries) {
      d.src = static_cast<int>(rng() % n);
      d.dst = static_cast<int>(rng() % n);
      if (d.src != d.dst && used.insert(std::minmax(d.src, d.dst)).second) break;
      d.src = d.dst = -1;
    }
    if (d.src < 0) break;
    d.rate_mbps = Frac(kRates[rng() % 4]);
    inst.demands.push_back(d);
  }
  for (std::size_t i = 0; i < inst.demands.size(); ++i) inst.demands[i].id = static_cast<int>(i);

  switch (rng() % 4) {
    case 0:
      inst.mode = ScenarioMode::Full;
      break;
    case 1:
      inst.mode = ScenarioMode::UniformSla;
      inst.sla = rng() % 2 ? Frac(1, 2) : Frac(3, 4);
      break;
    case 2:
      inst.mode = ScenarioMode::DemandWise;
      inst.services = {{0, Frac(1, 2)}, {1, Frac(1)}};
      inst.sla = rng() % 2 ? Frac(1, 2) : Frac(3, 4);
      break;
    default:
      inst.mode = ScenarioMode::FixedPerDemand;
      inst.services = {{0, Frac(1, 2)}, {1, Frac(1)}};
      for (const Demand& d : inst.demands)
        inst.fixed_service[d.id] = static_cast<int>(rng() % 2);
      break;
  }
  if (inst.mode != ScenarioMode::Full && rng() % 3 == 0) inst.sla_form = SlaForm::Aggregate;
  inst.finalize();
  return inst;
}

}  // namespace testfix
