// Planning instance: topology + demands + spectrum budget + protection
// scenario.  The scenario mode decides how protection services (backup-rate
// fractions) are assigned:
//   Full          every demand protected at full rate (service set {1})
//   FixedPerDemand  each demand carries a preassigned fraction
//   UniformSla    every demand protected at exactly the SLA fraction
//   DemandWise    the solver picks each demand's fraction from the service set
//
// The SLA itself is the minimum share of total traffic that must survive any
// single link failure.  Three constraint encodings are available:
//   Survivable  per-link: traffic lost when a working link fails stays within
//               (1 - SLA) * total            (default; matches the SLA meaning)
//   Aggregate   sum of f_d * t_d over demands >= SLA * total (stricter than
//               Survivable; cannot reach the worked example's demand-wise
//               optimum, kept selectable for comparison)
//   Literal     sum of t_d >= SLA * total, ignoring fractions (vacuous; kept
//               for auditing the uncorrected constraint)

#pragma once

#include <map>
#include <string>
#include <vector>

#include "eonplan/modulation.hpp"
#include "eonplan/rational.hpp"
#include "eonplan/topology.hpp"
#include "eonplan/traffic.hpp"

namespace eonplan {

struct ProtectionService {
  int index = -1;
  Frac fraction{1};  // share of the demand rate carried by the backup, in (0, 1]
};

enum class ScenarioMode { Full, FixedPerDemand, UniformSla, DemandWise };
enum class SlaForm { Survivable, Aggregate, Literal };

inline std::string to_string(ScenarioMode m) {
  switch (m) {
    case ScenarioMode::Full: return "full";
    case ScenarioMode::FixedPerDemand: return "fixed";
    case ScenarioMode::UniformSla: return "uniform";
    case ScenarioMode::DemandWise: return "demandwise";
  }
  return "?";
}

inline ScenarioMode scenario_mode_from_string(const std::string& s) {
  if (s == "full") return ScenarioMode::Full;
  if (s == "fixed") return ScenarioMode::FixedPerDemand;
  if (s == "uniform") return ScenarioMode::UniformSla;
  if (s == "demandwise") return ScenarioMode::DemandWise;
  throw std::invalid_argument("unknown scenario mode '" + s + "'");
}

inline std::string to_string(SlaForm f) {
  switch (f) {
    case SlaForm::Survivable: return "survivable";
    case SlaForm::Aggregate: return "aggregate";
    case SlaForm::Literal: return "literal";
  }
  return "?";
}

inline SlaForm sla_form_from_string(const std::string& s) {
  if (s == "survivable") return SlaForm::Survivable;
  if (s == "aggregate") return SlaForm::Aggregate;
  if (s == "literal") return SlaForm::Literal;
  throw std::invalid_argument("unknown SLA form '" + s + "'");
}

struct PlanningInstance {
  Topology topology;
  std::vector<Demand> demands;
  int slice_count = 320;
  std::vector<ModulationFormat> catalog = default_catalog();
  std::vector<ProtectionService> services;  // after finalize(): mode-specialized
  Frac sla{0};
  ScenarioMode mode = ScenarioMode::Full;
  SlaForm sla_form = SlaForm::Survivable;
  std::map<int, int> fixed_service;  // demand id -> service index (FixedPerDemand)
  int route_pair_count = 4;

  Frac total_rate_mbps() const {
    Frac t{0};
    for (const auto& d : demands) t = t + d.rate_mbps;
    return t;
  }

  // Service indices a demand may use under the scenario mode.
  std::vector<int> allowed_services(int demand_idx) const {
    if (mode == ScenarioMode::FixedPerDemand) {
      return {fixed_service.at(demands.at(demand_idx).id)};
    }
    if (mode == ScenarioMode::DemandWise) {
      std::vector<int> all(services.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
      return all;
    }
    return {0};  // Full / UniformSla carry a single synthesized service
  }

  // Applies the scenario specialization and validates all invariants.
  // Call once after filling the fields; demands/services are left canonical.
  void finalize() {
    validate_catalog(catalog);
    if (slice_count < 1) throw ValidationError("instance: slice_count must be >= 1");
    if (route_pair_count < 1) throw ValidationError("instance: route_pair_count must be >= 1");
    for (std::size_t i = 0; i < demands.size(); ++i) {
      const Demand& d = demands[i];
      if (d.id != static_cast<int>(i)) throw ValidationError("instance: demand ids must be 0..n-1");
      if (d.src == d.dst) throw ValidationError("instance: demand " + std::to_string(d.id) + " has src == dst");
      if (d.src < 0 || d.src >= topology.node_count() || d.dst < 0 || d.dst >= topology.node_count())
        throw ValidationError("instance: demand " + std::to_string(d.id) + " references unknown node");
      if (!(Frac(0) < d.rate_mbps))
        throw ValidationError("instance: demand " + std::to_string(d.id) + " has non-positive rate");
    }

    switch (mode) {
      case ScenarioMode::Full:
        services = {ProtectionService{0, Frac(1)}};
        break;
      case ScenarioMode::UniformSla:
        if (!(Frac(0) < sla) || Frac(1) < sla)
          throw ValidationError("instance: uniform mode needs SLA in (0, 1]");
        services = {ProtectionService{0, sla}};
        break;
      case ScenarioMode::FixedPerDemand:
        check_service_list();
        for (const auto& d : demands) {
          auto it = fixed_service.find(d.id);
          if (it == fixed_service.end())
            throw ValidationError("instance: demand " + std::to_string(d.id) + " has no fixed fraction");
          if (it->second < 0 || it->second >= static_cast<int>(services.size()))
            throw ValidationError("instance: demand " + std::to_string(d.id) + " fixed to unknown service");
        }
        break;
      case ScenarioMode::DemandWise: {
        check_service_list();
        if (!(Frac(0) < sla) || Frac(1) < sla)
          throw ValidationError("instance: demand-wise mode needs SLA in (0, 1]");
        if (services.back().fraction < sla)
          throw ValidationError("instance: SLA exceeds the largest protection fraction");
        break;
      }
    }
    for (std::size_t i = 0; i < services.size(); ++i) services[i].index = static_cast<int>(i);
  }

 private:
  void check_service_list() const {
    if (services.empty()) throw ValidationError("instance: empty protection service set");
    Frac prev{0};
    for (const auto& s : services) {
      if (!(prev < s.fraction))
        throw ValidationError("instance: service fractions must be strictly increasing");
      if (Frac(1) < s.fraction)
        throw ValidationError("instance: service fraction above 1");
      prev = s.fraction;
    }
  }
};

}  // namespace eonplan
