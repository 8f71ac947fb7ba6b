// Heuristic solver.  Three stages:
//
//   1. Service selection.  Modes with fixed fractions take them as given.
//      DemandWise starts every demand at the cheapest fraction and
//      water-fills: while the service-level constraint is violated, raise
//      the fraction of one demand on the most-violated link, choosing the
//      demand whose raise costs the fewest extra backup slots.
//
//   2. Placement.  Demands in descending rate order (ties by id); each one
//      scans its route pairs and the lowest few feasible starts per path,
//      and takes the placement adding the fewest new slices (ties by cell
//      count, then pair and starts).  If the exact service-level check
//      fails on the placed plan, a fraction is raised and placement rerun.
//
//   3. Local search.  Repeatedly re-place one demand at a time, allowing
//      pair, service, and channel changes, accepting only strict
//      (phi, link_usage) improvements, until a full pass changes nothing.
//
// Several starting points are tried (water-filled, uniform-at-SLA, plus any
// warm starts adapted from related runs) and the best final plan wins.  The
// whole pipeline is deterministic and independent of demand input order.

#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "eonplan/solution.hpp"

namespace eonplan {

// A previous solution together with the service table its indices refer to,
// so it can be re-interpreted under a different service set or SLA.
struct WarmStart {
  Solution solution;
  std::vector<ProtectionService> services;
};

struct HeuristicOptions {
  int shortlist = 8;         // candidate starts examined per path
  int max_local_rounds = 200;
  std::vector<WarmStart> warm_starts;
};

namespace detail {

class Planner {
 public:
  Planner(const PlanningInstance& inst, const FeasibilityTable& table,
          const HeuristicOptions& opts)
      : inst_(inst),
        table_(table),
        opts_(opts),
        D_(static_cast<int>(table.plans.size())),
        E_(static_cast<int>(inst.topology.link_count())),
        S_(inst.slice_count) {
    order_.resize(D_);
    for (int i = 0; i < D_; ++i) order_[i] = i;
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      const Frac& ra = table_.plans[a].demand.rate_mbps;
      const Frac& rb = table_.plans[b].demand.rate_mbps;
      if (!(ra == rb)) return rb < ra;
      return table_.plans[a].demand.id < table_.plans[b].demand.id;
    });
    Frac total{0};
    for (const DemandPlan& p : table_.plans) total = total + p.demand.rate_mbps;
    budget_ = (Frac(1) - inst.sla) * total;
    target_ = inst_.sla * total;
    reset();
  }

  Solution solve() {
    Solution best;
    best.status = SolveStatus::Infeasible;
    std::string why = "no feasible construction";
    auto consider = [&](std::vector<Assignment> asg, std::vector<int> svc) {
      local_search(asg, svc);
      Solution cand;
      cand.status = SolveStatus::Feasible;
      cand.assignments = std::move(asg);
      cand.phi = used_;
      cand.link_usage = cells_;
      if (best.status == SolveStatus::Infeasible || cand.phi < best.phi ||
          (cand.phi == best.phi && cand.link_usage < best.link_usage))
        best = std::move(cand);
    };

    std::vector<std::vector<int>> seeds;
    seeds.push_back(initial_services());
    if (inst_.mode == ScenarioMode::DemandWise) {
      // Uniform at the smallest fraction covering the SLA; always admissible.
      int k = 0;
      while (inst_.services[k].fraction < inst_.sla) ++k;
      std::vector<int> uniform(D_, k);
      if (uniform != seeds.front()) seeds.push_back(std::move(uniform));
    }
    for (auto& svc : seeds) {
      std::vector<Assignment> asg(D_);
      if (construct(svc, asg))
        consider(std::move(asg), std::move(svc));
      else if (!fail_note_.empty())
        why = fail_note_;
    }
    for (const WarmStart& warm : opts_.warm_starts) {
      if (warm.solution.assignments.size() != static_cast<std::size_t>(D_)) continue;
      std::vector<Assignment> asg(D_);
      std::vector<int> svc(D_);
      if (adapt(warm, asg, svc)) consider(std::move(asg), std::move(svc));
    }

    if (best.status == SolveStatus::Infeasible) best.note = why;
    return best;
  }

 private:
  struct Candidate {
    int added = 0;
    long long cells = 0;
    int p = -1, k = -1, sw = -1, sb = -1;
    bool operator<(const Candidate& o) const {
      return std::tie(added, cells, p, k, sw, sb) <
             std::tie(o.added, o.cells, o.p, o.k, o.sw, o.sb);
    }
  };

  void reset() {
    occ_.assign(static_cast<std::size_t>(E_) * S_, 0);
    slice_users_.assign(S_, 0);
    loss_.assign(E_, Frac(0));
    protected_ = Frac(0);
    used_ = 0;
    cells_ = 0;
  }

  bool placeable(const std::vector<int>& links, int start, int width) const {
    if (start < 0 || start + width > S_) return false;
    for (int e : links)
      for (int s = start; s < start + width; ++s)
        if (occ_[static_cast<std::size_t>(e) * S_ + s]) return false;
    return true;
  }

  void apply(int d, const Assignment& a, int delta) {
    const DemandPlan& plan = table_.plans[d];
    const RoutePair& rp = plan.pairs[a.pair];
    for (const auto& [links, ch] :
         {std::pair{&rp.working_links, &a.working}, std::pair{&rp.backup_links, &a.backup}})
      for (int e : *links)
        for (int s = ch->start; s < ch->end(); ++s) {
          occ_[static_cast<std::size_t>(e) * S_ + s] += static_cast<char>(delta);
          slice_users_[s] += delta;
          if (delta > 0 && slice_users_[s] == 1) ++used_;
          if (delta < 0 && slice_users_[s] == 0) --used_;
          cells_ += delta;
        }
    const Frac unprot = (Frac(1) - inst_.services[a.service].fraction) * plan.demand.rate_mbps;
    const Frac prot = inst_.services[a.service].fraction * plan.demand.rate_mbps;
    for (int e : rp.working_links)
      loss_[e] = delta > 0 ? loss_[e] + unprot : loss_[e] - unprot;
    protected_ = delta > 0 ? protected_ + prot : protected_ - prot;
  }

  std::vector<int> low_starts(const std::vector<int>& links, int width) const {
    std::vector<int> out;
    for (int s = 0; s + width <= S_ && static_cast<int>(out.size()) < opts_.shortlist; ++s)
      if (placeable(links, s, width)) out.push_back(s);
    return out;
  }

  int added_slices(int sw, int w, int sb, int b) const {
    int added = 0;
    for (int s = sw; s < sw + w; ++s) added += slice_users_[s] == 0;
    for (int s = sb; s < sb + b; ++s)
      added += slice_users_[s] == 0 && (s < sw || s >= sw + w);
    return added;
  }

  // Would assigning service k to demand d keep the SLA satisfiable, given the
  // currently painted demands (d itself must not be painted)?
  bool sla_admits(int d, int p, int k) const {
    if (inst_.sla_form == SlaForm::Literal) return true;
    const DemandPlan& plan = table_.plans[d];
    if (inst_.sla_form == SlaForm::Survivable) {
      const Frac unprot = (Frac(1) - inst_.services[k].fraction) * plan.demand.rate_mbps;
      for (int e : plan.pairs[p].working_links)
        if (budget_ < loss_[e] + unprot) return false;
      return true;
    }
    return !(protected_ + inst_.services[k].fraction * plan.demand.rate_mbps < target_);
  }

  // Best placement for demand d at fixed or free service, over the shortlist.
  // check_sla is used by local search, where all other demands are painted.
  std::optional<Candidate> best_placement(int d, const std::vector<int>* fixed_service,
                                          bool check_sla) {
    const DemandPlan& plan = table_.plans[d];
    std::optional<Candidate> best;
    for (std::size_t p = 0; p < plan.pairs.size(); ++p) {
      const RoutePair& rp = plan.pairs[p];
      for (int k : inst_.allowed_services(d)) {
        if (fixed_service && (*fixed_service)[d] != k) continue;
        const ServiceConfig& cfg = plan.configs[p][k];
        if (!cfg.feasible) continue;
        if (check_sla && !sla_admits(d, static_cast<int>(p), k)) continue;
        const auto ws = low_starts(rp.working_links, cfg.working_width);
        if (ws.empty()) continue;
        const auto bs = low_starts(rp.backup_links, cfg.backup_width);
        if (bs.empty()) continue;
        const long long path_cells =
            static_cast<long long>(cfg.working_width) * rp.working_hops() +
            static_cast<long long>(cfg.backup_width) * rp.backup_hops();
        for (int sw : ws)
          for (int sb : bs) {
            Candidate c{added_slices(sw, cfg.working_width, sb, cfg.backup_width), path_cells,
                        static_cast<int>(p), k, sw, sb};
            if (!best || c < *best) best = c;
          }
      }
    }
    return best;
  }

  bool place_all(const std::vector<int>& svc, std::vector<Assignment>& out) {
    reset();
    for (int d : order_) {
      const auto c = best_placement(d, &svc, false);
      if (!c) {
        fail_note_ = "demand " + std::to_string(table_.plans[d].demand.id) +
                     ": no channel placement fits the spectrum";
        return false;
      }
      const ServiceConfig& cfg = table_.plans[d].configs[c->p][c->k];
      out[d] = {c->p, c->k, {c->sw, cfg.working_width}, {c->sb, cfg.backup_width}};
      apply(d, out[d], +1);
    }
    return true;
  }

  bool sla_satisfied() const {
    if (inst_.sla_form == SlaForm::Literal) return true;
    if (inst_.sla_form == SlaForm::Survivable) {
      for (int e = 0; e < E_; ++e)
        if (budget_ < loss_[e]) return false;
      return true;
    }
    return !(protected_ < target_);
  }

  std::vector<int> initial_services() {
    std::vector<int> svc(D_);
    switch (inst_.mode) {
      case ScenarioMode::Full:
      case ScenarioMode::UniformSla:
        return svc;  // single service, index 0
      case ScenarioMode::FixedPerDemand:
        for (int d = 0; d < D_; ++d) svc[d] = inst_.allowed_services(d).front();
        return svc;
      case ScenarioMode::DemandWise: break;
    }
    // Water-fill against an estimate that every demand works on its first
    // route pair; the post-placement repair fixes any residual violation.
    std::fill(svc.begin(), svc.end(), 0);
    if (inst_.sla_form == SlaForm::Survivable) {
      while (true) {
        std::vector<Frac> loss(E_, Frac(0));
        for (int d = 0; d < D_; ++d)
          for (int e : table_.plans[d].pairs[0].working_links)
            loss[e] = loss[e] + (Frac(1) - inst_.services[svc[d]].fraction) *
                                    table_.plans[d].demand.rate_mbps;
        int worst = -1;
        for (int e = 0; e < E_; ++e)
          if (budget_ < loss[e] && (worst < 0 || loss[worst] < loss[e])) worst = e;
        if (worst < 0) break;
        if (!raise_one(svc, nullptr, worst)) break;
      }
    } else if (inst_.sla_form == SlaForm::Aggregate) {
      while (true) {
        Frac prot{0};
        for (int d = 0; d < D_; ++d)
          prot = prot + inst_.services[svc[d]].fraction * table_.plans[d].demand.rate_mbps;
        if (!(prot < target_)) break;
        if (!raise_one(svc, nullptr, -1)) break;
      }
    }
    return svc;
  }

  // Raises one demand's service by one step.  When link >= 0 only demands
  // whose working path (current assignment, or first pair when asg is null)
  // crosses that link qualify.  Chooses the cheapest raise in extra backup
  // slots, ties by demand id.  Returns false when nothing can be raised.
  bool raise_one(std::vector<int>& svc, const std::vector<Assignment>* asg, int link) {
    int pick = -1, pick_cost = 0;
    for (int d = 0; d < D_; ++d) {
      if (svc[d] + 1 >= static_cast<int>(inst_.services.size())) continue;
      if (inst_.mode != ScenarioMode::DemandWise) continue;
      const int p = asg ? (*asg)[d].pair : 0;
      const RoutePair& rp = table_.plans[d].pairs[p];
      if (link >= 0 && !rp.working_uses(link)) continue;
      const ServiceConfig& now = table_.plans[d].configs[p][svc[d]];
      const ServiceConfig& next = table_.plans[d].configs[p][svc[d] + 1];
      if (!next.feasible) continue;
      const int cost = next.backup_width - now.backup_width;
      if (pick < 0 || cost < pick_cost) {
        pick = d;
        pick_cost = cost;
      }
    }
    if (pick < 0) return false;
    ++svc[pick];
    return true;
  }

  bool construct(std::vector<int>& svc, std::vector<Assignment>& asg) {
    // Raising a fraction shrinks nothing, so the loop is bounded by the
    // total number of service steps across all demands.
    while (true) {
      if (!place_all(svc, asg)) return false;
      if (sla_satisfied()) return true;
      int worst = -1;
      if (inst_.sla_form == SlaForm::Survivable)
        for (int e = 0; e < E_; ++e)
          if (budget_ < loss_[e] && (worst < 0 || loss_[worst] < loss_[e])) worst = e;
      if (!raise_one(svc, &asg, worst)) {
        fail_note_ = "service-level constraint unsatisfied and no fraction can be raised";
        return false;
      }
    }
  }

  // Transplants a solution built against another service table: same pair
  // and starts, the service re-mapped to the nearest fraction from below the
  // new table offers at or above the old one.  Shrinking backups keep their
  // start; anything that no longer fits is re-placed greedily.
  bool adapt(const WarmStart& warm, std::vector<Assignment>& asg, std::vector<int>& svc) {
    reset();
    std::vector<int> deferred;
    for (int d = 0; d < D_; ++d) {
      const Assignment& old = warm.solution.assignments[d];
      const DemandPlan& plan = table_.plans[d];
      if (old.pair < 0 || old.pair >= static_cast<int>(plan.pairs.size())) return false;
      const Frac old_frac = warm.services.at(old.service).fraction;
      const auto allowed = inst_.allowed_services(d);
      int k = -1;
      for (int cand : allowed)
        if (!(inst_.services[cand].fraction < old_frac) &&
            (k < 0 || inst_.services[cand].fraction < inst_.services[k].fraction))
          k = cand;
      if (k < 0) k = allowed.back();  // every option is below: take the largest
      const ServiceConfig& cfg = plan.configs[old.pair][k];
      Assignment a{old.pair, k, {old.working.start, cfg.working_width},
                   {old.backup.start, cfg.backup_width}};
      if (cfg.feasible && placeable(plan.pairs[old.pair].working_links, a.working.start, a.working.width) &&
          placeable(plan.pairs[old.pair].backup_links, a.backup.start, a.backup.width)) {
        apply(d, a, +1);
        asg[d] = a;
        svc[d] = k;
      } else {
        deferred.push_back(d);
        svc[d] = k;
      }
    }
    for (int d : deferred) {
      const auto c = best_placement(d, &svc, false);
      if (!c) return false;
      const ServiceConfig& cfg = table_.plans[d].configs[c->p][c->k];
      asg[d] = {c->p, c->k, {c->sw, cfg.working_width}, {c->sb, cfg.backup_width}};
      apply(d, asg[d], +1);
    }
    while (!sla_satisfied()) {
      int worst = -1;
      if (inst_.sla_form == SlaForm::Survivable)
        for (int e = 0; e < E_; ++e)
          if (budget_ < loss_[e] && (worst < 0 || loss_[worst] < loss_[e])) worst = e;
      if (!raise_one(svc, &asg, worst)) return false;
      if (!place_all(svc, asg)) return false;
    }
    return true;
  }

  void local_search(std::vector<Assignment>& asg, std::vector<int>& svc) {
    for (int round = 0; round < opts_.max_local_rounds; ++round) {
      bool improved = false;
      for (int d = 0; d < D_; ++d) {
        const Assignment cur = asg[d];
        const int phi_before = used_;
        const long long cells_before = cells_;
        apply(d, cur, -1);
        const auto c = best_placement(d, nullptr, true);
        bool moved = false;
        if (c) {
          const int phi_after = used_ + c->added;
          const long long cells_after = cells_ + c->cells;
          if (phi_after < phi_before ||
              (phi_after == phi_before && cells_after < cells_before)) {
            const ServiceConfig& cfg = table_.plans[d].configs[c->p][c->k];
            asg[d] = {c->p, c->k, {c->sw, cfg.working_width}, {c->sb, cfg.backup_width}};
            svc[d] = c->k;
            apply(d, asg[d], +1);
            moved = true;
            improved = true;
          }
        }
        if (!moved) apply(d, cur, +1);
      }
      if (!improved) break;
    }
  }

  const PlanningInstance& inst_;
  const FeasibilityTable& table_;
  const HeuristicOptions& opts_;
  const int D_, E_, S_;
  std::vector<int> order_;
  Frac budget_{0};
  Frac target_{0};

  std::vector<char> occ_;
  std::vector<int> slice_users_;
  std::vector<Frac> loss_;
  Frac protected_{0};
  int used_ = 0;
  long long cells_ = 0;
  std::string fail_note_;
};

}  // namespace detail

inline Solution solve_heuristic(const PlanningInstance& inst, const FeasibilityTable& table,
                                const HeuristicOptions& opts = {}) {
  const int D = static_cast<int>(table.plans.size());
  if (D == 0) {
    Solution sol;
    sol.status = SolveStatus::Optimal;
    sol.note = "no demands";
    return sol;
  }
  if (!table.all_servable()) {
    Solution sol;
    sol.status = SolveStatus::Infeasible;
    sol.note = "demand " + std::to_string(table.unservable.front().demand_id) + ": " +
               table.unservable.front().reason;
    return sol;
  }
  return detail::Planner(inst, table, opts).solve();
}

}  // namespace eonplan
