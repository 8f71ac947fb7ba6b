// Integer-programming formulation of the planning problem.
//
// Variables (all binary):
//   x_d{D}_p{P}_c{C}       demand D works on pair P, working channel starts at C
//   y_d{D}_k{K}_p{P}_c{C}  demand D protects with service K on pair P, backup starts at C
//   z_d{D}_k{K}            demand D picks protection service K
//   r_e{E}_s{S}            slice S is occupied on link E
//   th_s{S}                slice S is occupied somewhere in the network
//
// Objective: minimize sum th_s.
//
// Rows:
//   pick_d{D}        sum_k z = 1                      (one service per demand)
//   prot_d{D}_k{K}   sum_{p,c} y - z = 0              (service implies a placed backup)
//   coh_d{D}_p{P}    sum_c x - sum_{k,c} y = 0        (working and backup share the pair)
//   sla / sla_e{E}   service-level constraint, shape depends on SlaForm (see instance.hpp)
//   occ_e{E}_s{S}    sum x + sum y - r = 0            (exclusive slice occupancy)
//   use_s{S}         sum_e r - |E| th <= 0            (slice counted once network-wide)
//
// The solvers do not run on this model; they work combinatorially on the
// feasibility tables.  The model exists for export (LP/MPS), for cross-checks
// against an external solver, and as a second statement of the constraints
// that tests can evaluate points against.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "eonplan/solution.hpp"

namespace eonplan {

enum class RowSense { Eq, Le, Ge };

struct VarInfo {
  std::string name;
  double objective = 0.0;
};

struct RowTerm {
  int var = -1;
  double coeff = 0.0;
};

struct Row {
  std::string name;
  RowSense sense = RowSense::Eq;
  double rhs = 0.0;
  std::vector<RowTerm> terms;
};

struct Model {
  std::vector<VarInfo> vars;  // every variable is binary
  std::vector<Row> rows;

  // Lookup tables; keys use demand/pair/service indices and channel starts.
  std::map<std::tuple<int, int, int>, int> x_index;          // (d, p, start)
  std::map<std::tuple<int, int, int, int>, int> y_index;     // (d, k, p, start)
  std::map<std::pair<int, int>, int> z_index;                // (d, k)
  int r_base = -1;     // r vars laid out as r_base + e * slices + s
  int theta_base = -1;
  int links = 0;
  int slices = 0;

  int r_var(int e, int s) const { return r_base + e * slices + s; }
  int theta_var(int s) const { return theta_base + s; }

  int add_var(std::string name, double obj = 0.0) {
    vars.push_back({std::move(name), obj});
    return static_cast<int>(vars.size()) - 1;
  }
};

inline Model build_model(const PlanningInstance& inst, const FeasibilityTable& table) {
  Model m;
  m.links = static_cast<int>(inst.topology.link_count());
  m.slices = inst.slice_count;
  const int D = static_cast<int>(table.plans.size());

  if (D == 0) {
    // Nothing to place: the objective alone drives every theta to zero.
    m.theta_base = 0;
    for (int s = 0; s < m.slices; ++s) m.add_var("th_s" + std::to_string(s), 1.0);
    return m;
  }
  if (!table.all_servable())
    throw std::invalid_argument("build_model: instance has unservable demands (demand " +
                                std::to_string(table.unservable.front().demand_id) + ")");

  // Variables, in the documented order.
  for (int d = 0; d < D; ++d) {
    const DemandPlan& plan = table.plans[d];
    const std::string dn = std::to_string(plan.demand.id);
    for (std::size_t p = 0; p < plan.pairs.size(); ++p) {
      const ServiceConfig& any = plan.configs[p][0];
      if (!any.working_format || any.working_width > m.slices) continue;
      for (int c = 0; c + any.working_width <= m.slices; ++c)
        m.x_index[{d, static_cast<int>(p), c}] = m.add_var(
            "x_d" + dn + "_p" + std::to_string(p) + "_c" + std::to_string(c));
    }
  }
  for (int d = 0; d < D; ++d) {
    const DemandPlan& plan = table.plans[d];
    const std::string dn = std::to_string(plan.demand.id);
    for (int k : inst.allowed_services(d))
      for (std::size_t p = 0; p < plan.pairs.size(); ++p) {
        const ServiceConfig& cfg = plan.configs[p][k];
        if (!cfg.feasible) continue;
        for (int c = 0; c + cfg.backup_width <= m.slices; ++c)
          m.y_index[{d, k, static_cast<int>(p), c}] =
              m.add_var("y_d" + dn + "_k" + std::to_string(k) + "_p" + std::to_string(p) +
                        "_c" + std::to_string(c));
      }
  }
  for (int d = 0; d < D; ++d)
    for (int k : inst.allowed_services(d))
      m.z_index[{d, k}] = m.add_var("z_d" + std::to_string(table.plans[d].demand.id) + "_k" +
                                    std::to_string(k));
  m.r_base = static_cast<int>(m.vars.size());
  for (int e = 0; e < m.links; ++e)
    for (int s = 0; s < m.slices; ++s)
      m.add_var("r_e" + std::to_string(e) + "_s" + std::to_string(s));
  m.theta_base = static_cast<int>(m.vars.size());
  for (int s = 0; s < m.slices; ++s) m.add_var("th_s" + std::to_string(s), 1.0);

  // pick: one service per demand.
  for (int d = 0; d < D; ++d) {
    Row row;
    row.name = "pick_d" + std::to_string(table.plans[d].demand.id);
    row.sense = RowSense::Eq;
    row.rhs = 1.0;
    for (int k : inst.allowed_services(d)) row.terms.push_back({m.z_index.at({d, k}), 1.0});
    m.rows.push_back(std::move(row));
  }

  // prot: choosing service k means exactly one backup placement.
  for (int d = 0; d < D; ++d)
    for (int k : inst.allowed_services(d)) {
      Row row;
      row.name = "prot_d" + std::to_string(table.plans[d].demand.id) + "_k" + std::to_string(k);
      row.sense = RowSense::Eq;
      row.rhs = 0.0;
      for (const auto& [key, var] : m.y_index)
        if (std::get<0>(key) == d && std::get<1>(key) == k) row.terms.push_back({var, 1.0});
      row.terms.push_back({m.z_index.at({d, k}), -1.0});
      m.rows.push_back(std::move(row));
    }

  // coh: per pair, the working placement count matches the backup placement count.
  for (int d = 0; d < D; ++d) {
    const DemandPlan& plan = table.plans[d];
    for (std::size_t p = 0; p < plan.pairs.size(); ++p) {
      Row row;
      row.name =
          "coh_d" + std::to_string(plan.demand.id) + "_p" + std::to_string(p);
      row.sense = RowSense::Eq;
      row.rhs = 0.0;
      for (const auto& [key, var] : m.x_index)
        if (std::get<0>(key) == d && std::get<1>(key) == static_cast<int>(p))
          row.terms.push_back({var, 1.0});
      for (const auto& [key, var] : m.y_index)
        if (std::get<0>(key) == d && std::get<2>(key) == static_cast<int>(p))
          row.terms.push_back({var, -1.0});
      if (!row.terms.empty()) m.rows.push_back(std::move(row));
    }
  }

  // Service-level rows.  Traffic is expressed in Gbps to keep coefficients small.
  const double total_gbps = inst.total_rate_mbps().to_double() / 1000.0;
  if (inst.sla_form == SlaForm::Survivable) {
    // Per link: traffic left unprotected by demands working through that link
    // must fit in the loss budget (1 - SLA) * total.
    const double budget = (Frac(1) - inst.sla).to_double() * total_gbps;
    for (int e = 0; e < m.links; ++e) {
      Row row;
      row.name = "sla_e" + std::to_string(e);
      row.sense = RowSense::Le;
      row.rhs = budget;
      for (const auto& [key, var] : m.y_index) {
        const auto [d, k, p, c] = key;
        const RoutePair& rp = table.plans[d].pairs[p];
        if (!rp.working_uses(e)) continue;
        const double coeff = ((Frac(1) - inst.services[k].fraction) *
                              table.plans[d].demand.rate_mbps).to_double() / 1000.0;
        if (coeff != 0.0) row.terms.push_back({var, coeff});
      }
      m.rows.push_back(std::move(row));
    }
  } else {
    Row row;
    row.name = "sla";
    row.sense = RowSense::Ge;
    row.rhs = inst.sla.to_double() * total_gbps;
    for (const auto& [key, var] : m.z_index) {
      const auto [d, k] = key;
      const double t = table.plans[d].demand.rate_mbps.to_double() / 1000.0;
      // The literal form omits the protected fraction and is vacuous once
      // pick_d holds; kept selectable for auditing the as-published model.
      const double coeff =
          inst.sla_form == SlaForm::Literal ? t : inst.services[k].fraction.to_double() * t;
      row.terms.push_back({var, coeff});
    }
    m.rows.push_back(std::move(row));
  }

  // occ: exclusive occupancy, r as the exact indicator.
  {
    std::vector<Row> occ(static_cast<std::size_t>(m.links) * m.slices);
    for (const auto& [key, var] : m.x_index) {
      const auto [d, p, c] = key;
      const DemandPlan& plan = table.plans[d];
      const int w = plan.configs[p][0].working_width;
      for (int e : plan.pairs[p].working_links)
        for (int s = c; s < c + w; ++s)
          occ[static_cast<std::size_t>(e) * m.slices + s].terms.push_back({var, 1.0});
    }
    for (const auto& [key, var] : m.y_index) {
      const auto [d, k, p, c] = key;
      const DemandPlan& plan = table.plans[d];
      const int w = plan.configs[p][k].backup_width;
      for (int e : plan.pairs[p].backup_links)
        for (int s = c; s < c + w; ++s)
          occ[static_cast<std::size_t>(e) * m.slices + s].terms.push_back({var, 1.0});
    }
    for (int e = 0; e < m.links; ++e)
      for (int s = 0; s < m.slices; ++s) {
        Row& row = occ[static_cast<std::size_t>(e) * m.slices + s];
        row.name = "occ_e" + std::to_string(e) + "_s" + std::to_string(s);
        row.sense = RowSense::Eq;
        row.rhs = 0.0;
        row.terms.push_back({m.r_var(e, s), -1.0});
        m.rows.push_back(std::move(row));
      }
  }

  // use: a slice occupied on any link is occupied network-wide.
  for (int s = 0; s < m.slices; ++s) {
    Row row;
    row.name = "use_s" + std::to_string(s);
    row.sense = RowSense::Le;
    row.rhs = 0.0;
    for (int e = 0; e < m.links; ++e) row.terms.push_back({m.r_var(e, s), 1.0});
    row.terms.push_back({m.theta_var(s), -static_cast<double>(m.links)});
    m.rows.push_back(std::move(row));
  }

  return m;
}

// Expands a combinatorial solution into a full 0/1 point over the model's
// variables (r and theta derived from the painted spectrum).
inline std::vector<double> point_from_solution(const PlanningInstance& inst,
                                               const FeasibilityTable& table, const Model& m,
                                               const Solution& sol) {
  std::vector<double> v(m.vars.size(), 0.0);
  for (std::size_t d = 0; d < sol.assignments.size(); ++d) {
    const Assignment& a = sol.assignments[d];
    v[m.x_index.at({static_cast<int>(d), a.pair, a.working.start})] = 1.0;
    v[m.y_index.at({static_cast<int>(d), a.service, a.pair, a.backup.start})] = 1.0;
    v[m.z_index.at({static_cast<int>(d), a.service})] = 1.0;
  }
  const Occupancy occ = build_occupancy(inst, table, sol.assignments);
  for (int e = 0; e < m.links; ++e)
    for (int s = 0; s < m.slices; ++s)
      if (occ.at(e, s) != 0) v[m.r_var(e, s)] = 1.0;
  for (int s = 0; s < m.slices; ++s) {
    bool used = false;
    for (int e = 0; e < m.links && !used; ++e) used = occ.at(e, s) != 0;
    if (used) v[m.theta_var(s)] = 1.0;
  }
  return v;
}

inline double row_activity(const Row& row, const std::vector<double>& point) {
  double a = 0.0;
  for (const RowTerm& t : row.terms) a += t.coeff * point.at(t.var);
  return a;
}

// Largest constraint violation across all rows (0 when the point is feasible).
inline double max_violation(const Model& m, const std::vector<double>& point) {
  double worst = 0.0;
  for (const Row& row : m.rows) {
    const double a = row_activity(row, point);
    double viol = 0.0;
    switch (row.sense) {
      case RowSense::Eq: viol = std::abs(a - row.rhs); break;
      case RowSense::Le: viol = a - row.rhs; break;
      case RowSense::Ge: viol = row.rhs - a; break;
    }
    worst = std::max(worst, viol);
  }
  return worst;
}

inline double objective_value(const Model& m, const std::vector<double>& point) {
  double obj = 0.0;
  for (std::size_t i = 0; i < m.vars.size(); ++i) obj += m.vars[i].objective * point[i];
  return obj;
}

}  // namespace eonplan
