// Per-demand feasibility: candidate route pairs, the modulation format and
// channel width on each path, and which (pair, service) combinations can
// carry the demand at all.  Everything downstream (model build, both
// solvers, the verifier) works from these tables.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eonplan/instance.hpp"
#include "eonplan/pathing.hpp"

namespace eonplan {

struct Channel {
  int start = 0;
  int width = 0;

  int end() const { return start + width; }  // one past the last slice
  friend bool operator==(const Channel& a, const Channel& b) {
    return a.start == b.start && a.width == b.width;
  }
};

// All contiguous placements of a given width in [0, total_slices).
inline std::vector<Channel> enumerate_channels(int width, int total_slices) {
  if (width < 1) throw std::invalid_argument("enumerate_channels: width must be >= 1");
  if (total_slices < 0) throw std::invalid_argument("enumerate_channels: negative slice count");
  std::vector<Channel> out;
  for (int s = 0; s + width <= total_slices; ++s) out.push_back({s, width});
  return out;
}

// One (demand, pair, service) combination.  working_* is independent of the
// service; it is repeated here so one lookup answers everything.
struct ServiceConfig {
  int pair = -1;
  int service = -1;
  std::optional<int> working_format;  // catalog index
  std::optional<int> backup_format;
  int working_width = 0;
  int backup_width = 0;
  Frac backup_rate_mbps{0};
  bool feasible = false;  // both formats exist and both widths fit the spectrum
};

struct DemandPlan {
  Demand demand;
  std::vector<RoutePair> pairs;
  // configs[pair][service]; service indices follow instance.services.
  std::vector<std::vector<ServiceConfig>> configs;

  const ServiceConfig& config(int pair, int service) const { return configs.at(pair).at(service); }
};

struct UnservableDemand {
  int demand_id = -1;
  std::string reason;
};

struct FeasibilityTable {
  std::vector<DemandPlan> plans;
  int slice_count = 0;
  std::vector<UnservableDemand> unservable;

  bool all_servable() const { return unservable.empty(); }
};

// Route pairs may be passed in (e.g. precomputed or filtered); when absent
// they are generated with k_disjoint_pairs using instance.route_pair_count.
inline FeasibilityTable build_feasibility(
    const PlanningInstance& inst,
    const std::vector<std::vector<RoutePair>>* pairs_per_demand = nullptr) {
  FeasibilityTable table;
  table.slice_count = inst.slice_count;
  table.plans.reserve(inst.demands.size());
  for (std::size_t di = 0; di < inst.demands.size(); ++di) {
    const Demand& d = inst.demands[di];
    DemandPlan plan;
    plan.demand = d;
    if (pairs_per_demand)
      plan.pairs = pairs_per_demand->at(di);
    else
      plan.pairs = k_disjoint_pairs(inst.topology, d.src, d.dst, inst.route_pair_count);

    if (plan.pairs.empty()) {
      table.unservable.push_back({d.id, "no link-disjoint route pair exists"});
      table.plans.push_back(std::move(plan));
      continue;
    }

    plan.configs.resize(plan.pairs.size());
    bool any_feasible = false;
    for (std::size_t pi = 0; pi < plan.pairs.size(); ++pi) {
      const RoutePair& rp = plan.pairs[pi];
      const auto wf = select_format(rp.working_km, d.rate_mbps, inst.catalog);
      const int ww = wf ? slots_needed(d.rate_mbps, inst.catalog[*wf]) : 0;
      plan.configs[pi].resize(inst.services.size());
      for (std::size_t ki = 0; ki < inst.services.size(); ++ki) {
        ServiceConfig cfg;
        cfg.pair = static_cast<int>(pi);
        cfg.service = static_cast<int>(ki);
        cfg.working_format = wf;
        cfg.working_width = ww;
        cfg.backup_rate_mbps = inst.services[ki].fraction * d.rate_mbps;
        const auto bf = select_format(rp.backup_km, cfg.backup_rate_mbps, inst.catalog);
        cfg.backup_format = bf;
        cfg.backup_width = bf ? slots_needed(cfg.backup_rate_mbps, inst.catalog[*bf]) : 0;
        cfg.feasible = wf.has_value() && bf.has_value() && ww <= inst.slice_count &&
                       cfg.backup_width <= inst.slice_count;
        plan.configs[pi][ki] = cfg;
      }
      for (int ki : inst.allowed_services(static_cast<int>(di)))
        if (plan.configs[pi][ki].feasible) any_feasible = true;
    }
    if (!any_feasible)
      table.unservable.push_back(
          {d.id, "no route pair supports the demand at any allowed protection level"});
    table.plans.push_back(std::move(plan));
  }
  return table;
}

inline std::string feasibility_to_csv(const PlanningInstance& inst, const FeasibilityTable& table) {
  std::string out = "demand,pair,service,beta,fmt_w,fmt_b,width_w,width_b\n";
  for (const DemandPlan& plan : table.plans) {
    for (std::size_t pi = 0; pi < plan.configs.size(); ++pi) {
      for (const ServiceConfig& c : plan.configs[pi]) {
        out += std::to_string(plan.demand.id) + "," + std::to_string(c.pair) + "," +
               format_frac(inst.services[c.service].fraction) + "," + (c.feasible ? "1" : "0") +
               "," + (c.working_format ? inst.catalog[*c.working_format].name : "-") + "," +
               (c.backup_format ? inst.catalog[*c.backup_format].name : "-") + "," +
               std::to_string(c.working_width) + "," + std::to_string(c.backup_width) + "\n";
      }
    }
  }
  return out;
}

}  // namespace eonplan
