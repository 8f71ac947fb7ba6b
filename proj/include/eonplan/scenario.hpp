// End-to-end runs: build an instance for one scenario, solve it, verify the
// result, and collect metrics.  The sweep drives the full experiment grid
// (full / uniform / demand-wise protection over several SLA values and
// traffic seeds) and chains solutions between neighboring scenarios: a plan
// for a stricter scenario, with backups shrunk to the relaxed fractions, is
// always a valid starting point for the relaxed one.  That ordering makes
// phi(demandwise) <= phi(uniform) <= phi(full) and the SLA monotonicity hold
// run by run, not just in expectation.

#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <thread>

#include "eonplan/heuristic.hpp"
#include "eonplan/solver.hpp"
#include "eonplan/traffic.hpp"
#include "eonplan/verify.hpp"

namespace eonplan {

struct RunConfig {
  ScenarioMode mode = ScenarioMode::Full;
  Frac sla{0};
  SlaForm sla_form = SlaForm::Survivable;
  std::vector<Frac> service_fractions;  // demand-wise service set; ignored by full/uniform
  std::vector<Frac> fixed_fractions;    // fixed mode: fraction per demand id
  int slice_count = 320;
  int route_pairs = 4;
  bool exact = false;
  double time_limit_s = 300.0;
};

struct RunMetrics {
  ScenarioMode mode = ScenarioMode::Full;
  Frac sla{0};
  SolveStatus status = SolveStatus::Infeasible;
  int phi = 0;
  long long link_usage = 0;
  int lower_bound = 0;
  double wall_s = 0.0;
};

struct RunResult {
  PlanningInstance instance;
  FeasibilityTable table;
  Solution solution;
  RunMetrics metrics;
};

inline PlanningInstance make_instance(const Topology& topo, const std::vector<Demand>& demands,
                                      const RunConfig& rc) {
  PlanningInstance inst;
  inst.topology = topo;
  inst.demands = demands;
  inst.slice_count = rc.slice_count;
  inst.route_pair_count = rc.route_pairs;
  inst.mode = rc.mode;
  inst.sla = rc.sla;
  inst.sla_form = rc.sla_form;
  if (rc.mode == ScenarioMode::DemandWise) {
    for (const Frac& f : rc.service_fractions) inst.services.push_back({0, f});
  } else if (rc.mode == ScenarioMode::FixedPerDemand) {
    if (rc.fixed_fractions.size() != demands.size())
      throw ValidationError("fixed mode: need one fraction per demand (" +
                            std::to_string(demands.size()) + " demands, " +
                            std::to_string(rc.fixed_fractions.size()) + " fractions)");
    std::vector<Frac> distinct = rc.fixed_fractions;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (const Frac& f : distinct) inst.services.push_back({0, f});
    for (std::size_t d = 0; d < demands.size(); ++d) {
      int k = -1;
      for (std::size_t i = 0; i < distinct.size(); ++i)
        if (distinct[i] == rc.fixed_fractions[d]) k = static_cast<int>(i);
      inst.fixed_service[demands[d].id] = k;
    }
  }
  inst.finalize();
  return inst;
}

// Solves and verifies one scenario.  Verification failure throws: metrics
// are never reported for a plan that does not check out.
inline RunResult run_scenario(const Topology& topo, const std::vector<Demand>& demands,
                              const RunConfig& rc, const HeuristicOptions& heur = {},
                              const std::vector<std::vector<RoutePair>>* pairs = nullptr) {
  RunResult rr;
  rr.instance = make_instance(topo, demands, rc);
  rr.table = build_feasibility(rr.instance, pairs);

  const auto t0 = std::chrono::steady_clock::now();
  rr.solution = rc.exact ? solve_exact(rr.instance, rr.table, {rc.time_limit_s})
                         : solve_heuristic(rr.instance, rr.table, heur);
  rr.metrics.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (!rr.solution.assignments.empty()) {
    const VerifyReport rep = verify_solution(rr.instance, rr.table, rr.solution);
    if (!rep.ok)
      throw ValidationError("solution failed verification:\n" + rep.summary());
  }
  rr.metrics.mode = rc.mode;
  rr.metrics.sla = rc.sla;
  rr.metrics.status = rr.solution.status;
  rr.metrics.phi = rr.solution.phi;
  rr.metrics.link_usage = rr.solution.link_usage;
  rr.metrics.lower_bound = rr.solution.lower_bound;
  return rr;
}

struct SweepConfig {
  std::vector<std::uint64_t> seeds;
  TrafficParams traffic;
  std::vector<Frac> slas = {Frac(3, 4), Frac(1, 2), Frac(1, 4)};  // processed high to low
  std::vector<Frac> dw_services = {Frac(1, 4), Frac(1, 2), Frac(3, 4), Frac(1)};
  SlaForm sla_form = SlaForm::Survivable;
  int slice_count = 320;
  int route_pairs = 4;
  bool exact = false;
  double time_limit_s = 300.0;
  int threads = 1;
};

struct SweepRow {
  std::uint64_t seed = 0;
  RunMetrics metrics;
};

// One seed's scenario chain: full first, then per SLA (descending) uniform
// and demand-wise, each warm-started from its neighbors.
inline std::vector<SweepRow> sweep_one_seed(const Topology& topo, std::uint64_t seed,
                                            const SweepConfig& cfg) {
  std::vector<SweepRow> rows;
  const std::vector<Demand> demands = generate_traffic(topo, seed, cfg.traffic);
  std::vector<std::vector<RoutePair>> pairs;
  for (const Demand& d : demands)
    pairs.push_back(k_disjoint_pairs(topo, d.src, d.dst, cfg.route_pairs));

  std::vector<Frac> slas = cfg.slas;
  std::sort(slas.begin(), slas.end(), [](const Frac& a, const Frac& b) { return b < a; });

  RunConfig base;
  base.sla_form = cfg.sla_form;
  base.slice_count = cfg.slice_count;
  base.route_pairs = cfg.route_pairs;
  base.exact = cfg.exact;
  base.time_limit_s = cfg.time_limit_s;

  RunConfig full_rc = base;
  full_rc.mode = ScenarioMode::Full;
  RunResult full = run_scenario(topo, demands, full_rc, {}, &pairs);
  rows.push_back({seed, full.metrics});

  RunResult prev_uni, prev_dw;
  bool have_prev = false;
  for (const Frac& sla : slas) {
    RunConfig uni_rc = base;
    uni_rc.mode = ScenarioMode::UniformSla;
    uni_rc.sla = sla;
    HeuristicOptions uni_heur;
    uni_heur.warm_starts.push_back({full.solution, full.instance.services});
    if (have_prev)
      uni_heur.warm_starts.push_back({prev_uni.solution, prev_uni.instance.services});
    RunResult uni = run_scenario(topo, demands, uni_rc, uni_heur, &pairs);
    rows.push_back({seed, uni.metrics});

    RunConfig dw_rc = base;
    dw_rc.mode = ScenarioMode::DemandWise;
    dw_rc.sla = sla;
    dw_rc.service_fractions = cfg.dw_services;
    HeuristicOptions dw_heur;
    dw_heur.warm_starts.push_back({uni.solution, uni.instance.services});
    if (have_prev)
      dw_heur.warm_starts.push_back({prev_dw.solution, prev_dw.instance.services});
    RunResult dw = run_scenario(topo, demands, dw_rc, dw_heur, &pairs);
    rows.push_back({seed, dw.metrics});

    prev_uni = std::move(uni);
    prev_dw = std::move(dw);
    have_prev = true;
  }
  return rows;
}

inline std::vector<SweepRow> sweep(const Topology& topo, const SweepConfig& cfg) {
  std::vector<std::vector<SweepRow>> per_seed(cfg.seeds.size());
  const int threads = std::max(1, cfg.threads);
  if (threads == 1 || cfg.seeds.size() <= 1) {
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i)
      per_seed[i] = sweep_one_seed(topo, cfg.seeds[i], cfg);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (std::size_t i = next.fetch_add(1); i < cfg.seeds.size(); i = next.fetch_add(1))
        per_seed[i] = sweep_one_seed(topo, cfg.seeds[i], cfg);
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min<int>(threads, static_cast<int>(cfg.seeds.size())); ++t)
      pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  std::vector<SweepRow> rows;
  for (auto& chunk : per_seed) rows.insert(rows.end(), chunk.begin(), chunk.end());
  return rows;
}

// stable_wall zeroes the timing column so reruns of the same configuration
// produce byte-identical files.
inline std::string metrics_to_csv(const std::vector<SweepRow>& rows, bool stable_wall = false) {
  std::string out = "seed,mode,sla,phi,link_usage,status,wall_s\n";
  char wall[32];
  for (const SweepRow& r : rows) {
    std::snprintf(wall, sizeof(wall), "%.3f", stable_wall ? 0.0 : r.metrics.wall_s);
    out += std::to_string(r.seed) + "," + to_string(r.metrics.mode) + "," +
           format_frac(r.metrics.sla) + "," + std::to_string(r.metrics.phi) + "," +
           std::to_string(r.metrics.link_usage) + "," + to_string(r.metrics.status) + "," +
           wall + "\n";
  }
  return out;
}

// Wide per-seed comparison against the full-protection baseline: one phi
// column per scenario plus its percentage saving, and a final mean row.
inline std::string compare_to_csv(const std::vector<SweepRow>& rows) {
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> scenarios;  // ordered non-baseline labels
  auto label = [](const RunMetrics& m) {
    return to_string(m.mode) + (m.mode == ScenarioMode::Full ? "" : "@" + format_frac(m.sla));
  };
  for (const SweepRow& r : rows) {
    if (seeds.empty() || seeds.back() != r.seed) seeds.push_back(r.seed);
    if (r.metrics.mode != ScenarioMode::Full) {
      const std::string l = label(r.metrics);
      if (std::find(scenarios.begin(), scenarios.end(), l) == scenarios.end())
        scenarios.push_back(l);
    }
  }
  auto phi_of = [&](std::uint64_t seed, const std::string& want) -> double {
    for (const SweepRow& r : rows)
      if (r.seed == seed && label(r.metrics) == want) return r.metrics.phi;
    throw std::invalid_argument("comparison: seed " + std::to_string(seed) + " lacks scenario " +
                                want);
  };

  std::string out = "seed,full";
  for (const std::string& s : scenarios) out += "," + s + "," + s + "_savings_pct";
  out += "\n";
  std::vector<double> sum(2 * scenarios.size() + 1, 0.0);
  char buf[32];
  for (std::uint64_t seed : seeds) {
    const double base = phi_of(seed, "full");
    out += std::to_string(seed) + "," + std::to_string(static_cast<long long>(base));
    sum[0] += base;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
      const double phi = phi_of(seed, scenarios[i]);
      const double save = base > 0 ? 100.0 * (base - phi) / base : 0.0;
      std::snprintf(buf, sizeof(buf), ",%lld,%.2f", static_cast<long long>(phi), save);
      out += buf;
      sum[1 + 2 * i] += phi;
      sum[2 + 2 * i] += save;
    }
    out += "\n";
  }
  if (!seeds.empty()) {
    const double n = static_cast<double>(seeds.size());
    std::snprintf(buf, sizeof(buf), "mean,%.2f", sum[0] / n);
    out += buf;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
      std::snprintf(buf, sizeof(buf), ",%.2f,%.2f", sum[1 + 2 * i] / n, sum[2 + 2 * i] / n);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace eonplan
