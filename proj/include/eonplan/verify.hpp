// Independent solution checker.  Deliberately avoids the Occupancy helpers
// and the model rows; every constraint family is re-derived here from the
// instance and the raw assignments with exact rational arithmetic, so a bug
// in the solvers or the model builder cannot hide itself.
//
// Families reported:
//   shape       assignment indices and channel geometry are in range
//   selection   exactly one protection service per demand, and one the mode allows
//   protection  backup channel present and sized for the chosen service
//   coherence   working and backup use the two halves of the same route pair
//   format      channel widths match an independently recomputed format choice
//   sla         service-level constraint for the active SlaForm
//   occupancy   no slice on any link carries two lightpaths
//   score       reported phi / link_usage match a recount

#pragma once

#include <string>
#include <vector>

#include "eonplan/solution.hpp"

namespace eonplan {

struct VerifyIssue {
  std::string family;
  std::string detail;
};

struct VerifyReport {
  bool ok = true;
  std::vector<VerifyIssue> issues;
  int phi = 0;
  long long link_usage = 0;

  bool family_failed(const std::string& family) const {
    for (const VerifyIssue& i : issues)
      if (i.family == family) return true;
    return false;
  }
  std::string summary() const {
    if (ok) return "ok";
    std::string s;
    for (const VerifyIssue& i : issues) s += "[" + i.family + "] " + i.detail + "\n";
    return s;
  }
};

inline VerifyReport verify_solution(const PlanningInstance& inst, const FeasibilityTable& table,
                                    const Solution& sol) {
  VerifyReport rep;
  auto flag = [&](const std::string& family, const std::string& detail) {
    rep.ok = false;
    rep.issues.push_back({family, detail});
  };

  const int S = inst.slice_count;
  const int E = static_cast<int>(inst.topology.link_count());
  if (sol.assignments.size() != table.plans.size()) {
    flag("shape", "expected " + std::to_string(table.plans.size()) + " assignments, got " +
                      std::to_string(sol.assignments.size()));
    return rep;
  }

  for (std::size_t d = 0; d < sol.assignments.size(); ++d) {
    const Assignment& a = sol.assignments[d];
    const DemandPlan& plan = table.plans[d];
    const std::string who = "demand " + std::to_string(plan.demand.id);
    if (a.pair < 0 || a.pair >= static_cast<int>(plan.pairs.size())) {
      flag("shape", who + ": pair index " + std::to_string(a.pair) + " out of range");
      continue;
    }
    if (a.service < 0 || a.service >= static_cast<int>(inst.services.size())) {
      flag("shape", who + ": service index " + std::to_string(a.service) + " out of range");
      continue;
    }
    for (const Channel* ch : {&a.working, &a.backup})
      if (ch->width < 1 || ch->start < 0 || ch->end() > S)
        flag("shape", who + ": channel [" + std::to_string(ch->start) + "," +
                          std::to_string(ch->end()) + ") outside spectrum");

    const auto allowed = inst.allowed_services(static_cast<int>(d));
    bool permitted = false;
    for (int k : allowed) permitted = permitted || k == a.service;
    if (!permitted)
      flag("selection", who + ": service " + std::to_string(a.service) +
                            " not allowed in this scenario mode");

    // Recompute both format choices from path length and rate; a width that
    // disagrees means the channel cannot actually carry the traffic.
    const RoutePair& rp = plan.pairs[a.pair];
    const Frac backup_rate = inst.services[a.service].fraction * plan.demand.rate_mbps;
    const auto wf = select_format(rp.working_km, plan.demand.rate_mbps, inst.catalog);
    const auto bf = select_format(rp.backup_km, backup_rate, inst.catalog);
    if (!wf)
      flag("format", who + ": no modulation format reaches the working path");
    else if (a.working.width != slots_needed(plan.demand.rate_mbps, inst.catalog[*wf]))
      flag("format", who + ": working width " + std::to_string(a.working.width) +
                         " != required " +
                         std::to_string(slots_needed(plan.demand.rate_mbps, inst.catalog[*wf])));
    if (!bf)
      flag("protection", who + ": no modulation format reaches the backup path");
    else if (a.backup.width != slots_needed(backup_rate, inst.catalog[*bf]))
      flag("protection", who + ": backup width " + std::to_string(a.backup.width) +
                             " != required " +
                             std::to_string(slots_needed(backup_rate, inst.catalog[*bf])));

    // The pair index couples the two paths by construction; what is left to
    // check is that the pair is genuinely link-disjoint.
    for (int e : rp.working_links)
      if (rp.backup_uses(e))
        flag("coherence", who + ": working and backup share link " + std::to_string(e));
  }
  if (!rep.issues.empty() && rep.family_failed("shape")) return rep;

  // Service-level constraint, exact arithmetic throughout.
  Frac total{0};
  for (const DemandPlan& plan : table.plans) total = total + plan.demand.rate_mbps;
  if (table.plans.empty() || inst.sla_form == SlaForm::Literal) {
    // Nothing to check: the literal form reduces to total >= SLA * total.
  } else if (inst.sla_form == SlaForm::Survivable) {
    const Frac budget = (Frac(1) - inst.sla) * total;
    for (int e = 0; e < E; ++e) {
      Frac loss{0};
      for (std::size_t d = 0; d < sol.assignments.size(); ++d) {
        const Assignment& a = sol.assignments[d];
        const DemandPlan& plan = table.plans[d];
        if (!plan.pairs[a.pair].working_uses(e)) continue;
        loss = loss + (Frac(1) - inst.services[a.service].fraction) * plan.demand.rate_mbps;
      }
      if (budget < loss)
        flag("sla", "link " + std::to_string(e) + ": traffic lost on failure " +
                        format_frac(loss) + " Mbps exceeds budget " + format_frac(budget));
    }
  } else {
    Frac protected_traffic{0};
    for (std::size_t d = 0; d < sol.assignments.size(); ++d)
      protected_traffic = protected_traffic + inst.services[sol.assignments[d].service].fraction *
                                                  table.plans[d].demand.rate_mbps;
    if (protected_traffic < inst.sla * total)
      flag("sla", "protected traffic " + format_frac(protected_traffic) +
                      " Mbps below required " + format_frac(inst.sla * total));
  }

  // Exclusive occupancy, recounted cell by cell.
  std::vector<int> count(static_cast<std::size_t>(E) * S, 0);
  for (std::size_t d = 0; d < sol.assignments.size(); ++d) {
    const Assignment& a = sol.assignments[d];
    const RoutePair& rp = table.plans[d].pairs[a.pair];
    for (const auto& [links, ch] :
         {std::pair{&rp.working_links, &a.working}, std::pair{&rp.backup_links, &a.backup}})
      for (int e : *links)
        for (int s = ch->start; s < ch->end(); ++s)
          ++count[static_cast<std::size_t>(e) * S + s];
  }
  for (int e = 0; e < E; ++e)
    for (int s = 0; s < S; ++s)
      if (count[static_cast<std::size_t>(e) * S + s] > 1)
        flag("occupancy", "link " + std::to_string(e) + " slice " + std::to_string(s) +
                              " carries " + std::to_string(count[static_cast<std::size_t>(e) * S + s]) +
                              " lightpaths");

  for (int s = 0; s < S; ++s) {
    bool used = false;
    for (int e = 0; e < E && !used; ++e) used = count[static_cast<std::size_t>(e) * S + s] > 0;
    rep.phi += used;
  }
  for (int c : count) rep.link_usage += c > 0;
  if (rep.phi != sol.phi)
    flag("score", "phi recount " + std::to_string(rep.phi) + " != reported " +
                      std::to_string(sol.phi));
  if (rep.link_usage != sol.link_usage)
    flag("score", "link usage recount " + std::to_string(rep.link_usage) + " != reported " +
                      std::to_string(sol.link_usage));
  return rep;
}

}  // namespace eonplan
