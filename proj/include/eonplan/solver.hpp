// Exact solver: depth-first branch and bound over complete per-demand
// assignments (route pair, protection service, working start, backup start).
//
// Spectrum compaction argument, used to shrink the search space: take any
// feasible plan and renumber its used slices order-preservingly onto
// 0..phi-1.  Every channel occupies contiguous slices that are all used, and
// consecutive used slices stay consecutive under the renumbering, so each
// channel stays contiguous and no two cells collide.  The compacted plan is
// feasible, has the same phi and link usage, and fits inside
// sum_d max_config(working_width + backup_width) slices.  Restricting
// channel starts to that many slices therefore loses no optimum.
//
// Lower bound per node: phi of the partial plan, and per link the painted
// cells plus each unassigned demand's cheapest possible contribution to that
// link.  Cells on one link occupy distinct slices, so either quantity bounds
// the final phi from below.  Both bounds are also evaluated lexicographically
// against the incumbent's (phi, link_usage).
//
// Service-level pruning adds, per unassigned demand, the best case (least
// loss / most protection) over its configurations; a node is cut only when
// even the best case violates the constraint, so no feasible completion is
// ever discarded.

#pragma once

#include <algorithm>
#include <chrono>
#include <climits>
#include <vector>

#include "eonplan/solution.hpp"

namespace eonplan {

struct ExactOptions {
  double time_limit_s = 300.0;
};

namespace detail {

struct ExactCfg {
  int p = -1;
  int k = -1;
  int w = 0;
  int b = 0;
};

class ExactSearch {
 public:
  ExactSearch(const PlanningInstance& inst, const FeasibilityTable& table, const ExactOptions& opt)
      : inst_(inst),
        table_(table),
        E_(static_cast<int>(inst.topology.link_count())),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(opt.time_limit_s))) {}

  Solution run() {
    Solution sol;
    const int D = static_cast<int>(table_.plans.size());
    if (D == 0) {
      sol.status = SolveStatus::Optimal;
      sol.note = "no demands";
      return sol;
    }
    if (!table_.all_servable()) {
      sol.status = SolveStatus::Infeasible;
      sol.note = "demand " + std::to_string(table_.unservable.front().demand_id) + ": " +
                 table_.unservable.front().reason;
      return sol;
    }

    order_.resize(D);
    for (int i = 0; i < D; ++i) order_[i] = i;
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      const Frac& ra = table_.plans[a].demand.rate_mbps;
      const Frac& rb = table_.plans[b].demand.rate_mbps;
      if (!(ra == rb)) return rb < ra;
      return table_.plans[a].demand.id < table_.plans[b].demand.id;
    });

    cfgs_.resize(D);
    long long cap_sum = 0;
    for (int d = 0; d < D; ++d) {
      int widest = 0;
      for (std::size_t p = 0; p < table_.plans[d].pairs.size(); ++p)
        for (int k : inst_.allowed_services(d)) {
          const ServiceConfig& c = table_.plans[d].configs[p][k];
          if (!c.feasible) continue;
          cfgs_[d].push_back({static_cast<int>(p), k, c.working_width, c.backup_width});
          widest = std::max(widest, c.working_width + c.backup_width);
        }
      cap_sum += widest;
    }
    cap_ = static_cast<int>(std::min<long long>(inst_.slice_count, cap_sum));

    // Per-demand, per-link cheapest contribution; the minimum over
    // configurations of what the demand must paint onto that link.
    min_link_.assign(static_cast<std::size_t>(D) * E_, 0);
    min_cells_.assign(D, 0);
    min_loss_.assign(static_cast<std::size_t>(D) * E_, Frac(0));
    max_protect_.assign(D, Frac(0));
    for (int d = 0; d < D; ++d) {
      const DemandPlan& plan = table_.plans[d];
      for (int e = 0; e < E_; ++e) {
        int best = INT_MAX;
        Frac best_loss = plan.demand.rate_mbps;  // worst case: fully unprotected
        for (const ExactCfg& c : cfgs_[d]) {
          const RoutePair& rp = plan.pairs[c.p];
          int use = (rp.working_uses(e) ? c.w : 0) + (rp.backup_uses(e) ? c.b : 0);
          best = std::min(best, use);
          const Frac loss = rp.working_uses(e)
                                ? (Frac(1) - inst_.services[c.k].fraction) * plan.demand.rate_mbps
                                : Frac(0);
          if (loss < best_loss) best_loss = loss;
        }
        min_link_[static_cast<std::size_t>(d) * E_ + e] = best;
        min_loss_[static_cast<std::size_t>(d) * E_ + e] = best_loss;
      }
      long long cells = LLONG_MAX;
      for (const ExactCfg& c : cfgs_[d]) {
        const RoutePair& rp = plan.pairs[c.p];
        cells = std::min(cells, static_cast<long long>(c.w) * rp.working_hops() +
                                    static_cast<long long>(c.b) * rp.backup_hops());
        const Frac prot = inst_.services[c.k].fraction * plan.demand.rate_mbps;
        if (max_protect_[d] < prot) max_protect_[d] = prot;
      }
      min_cells_[d] = cells;
    }

    // Suffix aggregates over the search order, indexed by level.
    suffix_link_.assign(static_cast<std::size_t>(D + 1) * E_, 0);
    suffix_cells_.assign(D + 1, 0);
    suffix_loss_.assign(static_cast<std::size_t>(D + 1) * E_, Frac(0));
    suffix_protect_.assign(D + 1, Frac(0));
    for (int lvl = D - 1; lvl >= 0; --lvl) {
      const int d = order_[lvl];
      for (int e = 0; e < E_; ++e) {
        suffix_link_[static_cast<std::size_t>(lvl) * E_ + e] =
            suffix_link_[static_cast<std::size_t>(lvl + 1) * E_ + e] +
            min_link_[static_cast<std::size_t>(d) * E_ + e];
        suffix_loss_[static_cast<std::size_t>(lvl) * E_ + e] =
            suffix_loss_[static_cast<std::size_t>(lvl + 1) * E_ + e] +
            min_loss_[static_cast<std::size_t>(d) * E_ + e];
      }
      suffix_cells_[lvl] = suffix_cells_[lvl + 1] + min_cells_[d];
      suffix_protect_[lvl] = suffix_protect_[lvl + 1] + max_protect_[d];
    }

    const Frac total = inst_.total_rate_mbps();
    budget_ = (Frac(1) - inst_.sla) * total;
    target_ = inst_.sla * total;

    occ_.assign(static_cast<std::size_t>(E_) * cap_, 0);
    link_cells_.assign(E_, 0);
    slice_users_.assign(cap_, 0);
    loss_.assign(E_, Frac(0));
    cur_.assign(D, Assignment{});

    descend(0);

    if (!timed_out_) {
      if (have_best_) {
        sol.status = SolveStatus::Optimal;
        sol.lower_bound = best_phi_;
      } else {
        sol.status = SolveStatus::Infeasible;
        sol.lower_bound = 0;
        if (deepest_ < D)
          sol.note = "no placement completes demand " +
                     std::to_string(table_.plans[order_[deepest_]].demand.id) +
                     (inst_.sla_form == SlaForm::Literal
                          ? ""
                          : " under the service-level constraint");
      }
    } else {
      sol.status = SolveStatus::Timeout;
      const int ab = abandoned_ == INT_MAX ? 0 : abandoned_;
      sol.lower_bound = have_best_ ? std::min(best_phi_, ab) : ab;
      sol.note = have_best_ ? "time limit reached; best incumbent attached"
                            : "time limit reached before any complete plan";
    }
    if (have_best_) {
      sol.assignments = best_;
      sol.phi = best_phi_;
      sol.link_usage = best_usage_;
    }
    return sol;
  }

 private:
  struct Child {
    int added_phi, cfg, sw, sb;
    bool operator<(const Child& o) const {
      if (added_phi != o.added_phi) return added_phi < o.added_phi;
      if (cfg != o.cfg) return cfg < o.cfg;  // cfgs are (pair, service)-ordered
      if (sw != o.sw) return sw < o.sw;
      return sb < o.sb;
    }
  };

  int node_phi_bound(int level) const {
    int b = used_slices_;
    for (int e = 0; e < E_; ++e)
      b = std::max(b, link_cells_[e] + suffix_link_[static_cast<std::size_t>(level) * E_ + e]);
    return b;
  }

  bool sla_reachable(int level) const {
    if (inst_.sla_form == SlaForm::Literal) return true;
    if (inst_.sla_form == SlaForm::Survivable) {
      for (int e = 0; e < E_; ++e)
        if (budget_ < loss_[e] + suffix_loss_[static_cast<std::size_t>(level) * E_ + e])
          return false;
      return true;
    }
    return !(protected_ + suffix_protect_[level] < target_);
  }

  bool placeable(const std::vector<int>& links, int start, int width) const {
    for (int e : links)
      for (int s = start; s < start + width; ++s)
        if (occ_[static_cast<std::size_t>(e) * cap_ + s]) return false;
    return true;
  }

  void paint_path(const std::vector<int>& links, int start, int width, int delta) {
    for (int e : links) {
      link_cells_[e] += delta * width;
      cells_ += delta * width;
      for (int s = start; s < start + width; ++s) {
        occ_[static_cast<std::size_t>(e) * cap_ + s] += static_cast<char>(delta);
        slice_users_[s] += delta;
        if (delta > 0 && slice_users_[s] == 1) ++used_slices_;
        if (delta < 0 && slice_users_[s] == 0) --used_slices_;
      }
    }
  }

  void apply(int d, const ExactCfg& c, int sw, int sb, int delta) {
    const RoutePair& rp = table_.plans[d].pairs[c.p];
    paint_path(rp.working_links, sw, c.w, delta);
    paint_path(rp.backup_links, sb, c.b, delta);
    const Frac unprot = (Frac(1) - inst_.services[c.k].fraction) * table_.plans[d].demand.rate_mbps;
    const Frac prot = inst_.services[c.k].fraction * table_.plans[d].demand.rate_mbps;
    for (int e : rp.working_links)
      loss_[e] = delta > 0 ? loss_[e] + unprot : loss_[e] - unprot;
    protected_ = delta > 0 ? protected_ + prot : protected_ - prot;
  }

  void descend(int level) {
    if ((++nodes_ & 0xFF) == 0 && std::chrono::steady_clock::now() > deadline_)
      timed_out_ = true;
    const int bound = node_phi_bound(level);
    if (timed_out_) {
      abandoned_ = std::min(abandoned_, bound);
      return;
    }
    if (have_best_) {
      const long long usage_lb = cells_ + suffix_cells_[level];
      if (bound > best_phi_ || (bound == best_phi_ && usage_lb >= best_usage_)) return;
    }
    if (!sla_reachable(level)) return;
    deepest_ = std::max(deepest_, level);

    const int D = static_cast<int>(table_.plans.size());
    if (level == D) {
      // sla_reachable with an empty suffix is the exact constraint.
      best_ = cur_;
      best_phi_ = used_slices_;
      best_usage_ = cells_;
      have_best_ = true;
      return;
    }

    const int d = order_[level];
    const DemandPlan& plan = table_.plans[d];
    std::vector<Child> children;
    for (std::size_t ci = 0; ci < cfgs_[d].size(); ++ci) {
      const ExactCfg& c = cfgs_[d][ci];
      const RoutePair& rp = plan.pairs[c.p];
      for (int sw = 0; sw + c.w <= cap_; ++sw) {
        if (!placeable(rp.working_links, sw, c.w)) continue;
        for (int sb = 0; sb + c.b <= cap_; ++sb) {
          if (!placeable(rp.backup_links, sb, c.b)) continue;
          int added = 0;
          for (int s = sw; s < sw + c.w; ++s) added += slice_users_[s] == 0;
          for (int s = sb; s < sb + c.b; ++s)
            added += slice_users_[s] == 0 && (s < sw || s >= sw + c.w);
          children.push_back({added, static_cast<int>(ci), sw, sb});
        }
      }
    }
    std::sort(children.begin(), children.end());

    for (const Child& ch : children) {
      const ExactCfg& c = cfgs_[d][ch.cfg];
      apply(d, c, ch.sw, ch.sb, +1);
      cur_[d] = {c.p, c.k, {ch.sw, c.w}, {ch.sb, c.b}};
      descend(level + 1);
      apply(d, c, ch.sw, ch.sb, -1);
      if (timed_out_) {
        // This node's own bound covers every unexplored sibling subtree.
        abandoned_ = std::min(abandoned_, bound);
        return;
      }
    }
  }

  const PlanningInstance& inst_;
  const FeasibilityTable& table_;
  const int E_;
  int cap_ = 0;
  std::chrono::steady_clock::time_point deadline_;

  std::vector<int> order_;
  std::vector<std::vector<ExactCfg>> cfgs_;
  std::vector<int> min_link_;
  std::vector<long long> min_cells_;
  std::vector<Frac> min_loss_;
  std::vector<Frac> max_protect_;
  std::vector<int> suffix_link_;
  std::vector<long long> suffix_cells_;
  std::vector<Frac> suffix_loss_;
  std::vector<Frac> suffix_protect_;
  Frac budget_{0};
  Frac target_{0};

  std::vector<char> occ_;
  std::vector<int> link_cells_;
  std::vector<int> slice_users_;
  std::vector<Frac> loss_;
  Frac protected_{0};
  int used_slices_ = 0;
  long long cells_ = 0;
  std::vector<Assignment> cur_;

  std::vector<Assignment> best_;
  bool have_best_ = false;
  int best_phi_ = 0;
  long long best_usage_ = 0;
  int deepest_ = 0;
  unsigned long long nodes_ = 0;
  bool timed_out_ = false;
  int abandoned_ = INT_MAX;
};

}  // namespace detail

inline Solution solve_exact(const PlanningInstance& inst, const FeasibilityTable& table,
                            const ExactOptions& opt = {}) {
  return detail::ExactSearch(inst, table, opt).run();
}

}  // namespace eonplan
