// Solution representation shared by the exact and heuristic solvers, plus
// the occupancy grid used to score and verify a plan.
//
// Objective recap: phi counts distinct slice indices occupied anywhere in
// the network, link_usage counts (link, slice) cells.  Lower phi wins;
// link_usage breaks ties.

#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "eonplan/feasibility.hpp"

namespace eonplan {

enum class SolveStatus { Optimal, Feasible, Infeasible, Timeout };

inline std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Timeout: return "timeout";
  }
  return "?";
}

struct Assignment {
  int pair = -1;
  int service = -1;
  Channel working;
  Channel backup;
};

struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<Assignment> assignments;  // indexed like table.plans
  int phi = 0;
  long long link_usage = 0;
  int lower_bound = 0;  // proven bound on phi (== phi when Optimal)
  std::string note;
};

// occupancy[link][slice] = demand id + 1, or 0 when free.  Working and
// backup channels both claim their cells exclusively; a collision while
// painting means the assignment set is invalid.
struct Occupancy {
  int links = 0;
  int slices = 0;
  std::vector<int32_t> cells;

  Occupancy(int links_, int slices_) : links(links_), slices(slices_), cells(static_cast<std::size_t>(links_) * slices_, 0) {}
  int32_t& at(int link, int slice) { return cells[static_cast<std::size_t>(link) * slices + slice]; }
  int32_t at(int link, int slice) const { return cells[static_cast<std::size_t>(link) * slices + slice]; }

  // Returns false on any double-booking.
  bool paint(const std::vector<int>& links_of_path, const Channel& ch, int demand_id) {
    for (int e : links_of_path)
      for (int s = ch.start; s < ch.end(); ++s) {
        int32_t& cell = at(e, s);
        if (cell != 0) return false;
        cell = demand_id + 1;
      }
    return true;
  }

  int phi() const {
    int used = 0;
    for (int s = 0; s < slices; ++s) {
      bool hit = false;
      for (int e = 0; e < links && !hit; ++e) hit = at(e, s) != 0;
      if (hit) ++used;
    }
    return used;
  }

  long long cell_count() const {
    long long n = 0;
    for (int32_t c : cells) n += c != 0;
    return n;
  }
};

// Paints every assignment; throws std::logic_error on spectrum collisions so
// solver bugs surface loudly instead of producing a mis-scored plan.
inline Occupancy build_occupancy(const PlanningInstance& inst, const FeasibilityTable& table,
                                 const std::vector<Assignment>& assignments) {
  Occupancy occ(static_cast<int>(inst.topology.link_count()), inst.slice_count);
  for (std::size_t di = 0; di < assignments.size(); ++di) {
    const Assignment& a = assignments[di];
    const DemandPlan& plan = table.plans[di];
    const RoutePair& rp = plan.pairs.at(a.pair);
    if (!occ.paint(rp.working_links, a.working, plan.demand.id) ||
        !occ.paint(rp.backup_links, a.backup, plan.demand.id))
      throw std::logic_error("build_occupancy: spectrum collision for demand " +
                             std::to_string(plan.demand.id));
  }
  return occ;
}

// Recomputes phi and link_usage from the assignments.
inline void score_solution(const PlanningInstance& inst, const FeasibilityTable& table,
                           Solution& sol) {
  Occupancy occ = build_occupancy(inst, table, sol.assignments);
  sol.phi = occ.phi();
  sol.link_usage = occ.cell_count();
}

inline std::string solution_to_csv(const PlanningInstance& inst, const FeasibilityTable& table,
                                   const Solution& sol) {
  std::string out =
      "demand,pair,service_fraction,fmt_w,fmt_b,chan_w_start,chan_w_width,"
      "chan_b_start,chan_b_width\n";
  for (std::size_t di = 0; di < sol.assignments.size(); ++di) {
    const Assignment& a = sol.assignments[di];
    const DemandPlan& plan = table.plans[di];
    const ServiceConfig& cfg = plan.config(a.pair, a.service);
    out += std::to_string(plan.demand.id) + "," + std::to_string(a.pair) + "," +
           format_frac(inst.services[a.service].fraction) + "," +
           (cfg.working_format ? inst.catalog[*cfg.working_format].name : "-") + "," +
           (cfg.backup_format ? inst.catalog[*cfg.backup_format].name : "-") + "," +
           std::to_string(a.working.start) + "," + std::to_string(a.working.width) + "," +
           std::to_string(a.backup.start) + "," + std::to_string(a.backup.width) + "\n";
  }
  return out;
}

// Reads the CSV written above back into a Solution.  Rows may appear in any
// order but must cover each demand exactly once; the service is recovered by
// matching the fraction against the instance's service table.
inline Solution parse_assignments_csv(const PlanningInstance& inst, const FeasibilityTable& table,
                                      const std::string& text) {
  Solution sol;
  sol.assignments.assign(table.plans.size(), Assignment{});
  std::vector<bool> seen(table.plans.size(), false);
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 || line.empty()) continue;
    std::vector<std::string> f;
    std::string cur;
    for (char ch : line)
      if (ch == ',') {
        f.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    f.push_back(cur);
    if (f.size() != 9)
      throw ParseError("assignments line " + std::to_string(line_no) + ": expected 9 fields");
    const int id = std::stoi(f[0]);
    if (id < 0 || id >= static_cast<int>(table.plans.size()) || seen[id])
      throw ParseError("assignments line " + std::to_string(line_no) + ": bad or repeated demand id");
    seen[id] = true;
    Assignment a;
    a.pair = std::stoi(f[1]);
    const Frac frac = parse_frac(f[2]);
    a.service = -1;
    for (const ProtectionService& s : inst.services)
      if (s.fraction == frac) a.service = s.index;
    if (a.service < 0)
      throw ParseError("assignments line " + std::to_string(line_no) + ": fraction " + f[2] +
                       " is not in the service set");
    a.working = {std::stoi(f[5]), std::stoi(f[6])};
    a.backup = {std::stoi(f[7]), std::stoi(f[8])};
    sol.assignments[id] = a;
  }
  for (std::size_t d = 0; d < seen.size(); ++d)
    if (!seen[d])
      throw ParseError("assignments: no row for demand " + std::to_string(table.plans[d].demand.id));
  sol.status = SolveStatus::Feasible;
  return sol;
}

}  // namespace eonplan
