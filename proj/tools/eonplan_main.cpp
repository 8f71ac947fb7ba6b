// Command-line front end.  Verbs:
//   plan       solve one scenario, write metrics.csv + assignments.csv
//   sweep      multi-seed / multi-SLA experiment grid, write metrics.csv + compare.csv
//   pairs      dump the link-disjoint route pairs per demand
//   export-lp  write the integer program as .lp and .mps
//   verify     re-check an assignments.csv against its instance
//
// Exit codes: 0 solved, 2 infeasible, 3 timeout, 4 validation or I/O failure.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "eonplan/lp_format.hpp"
#include "eonplan/scenario.hpp"

namespace {

using namespace eonplan;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<Frac> parse_frac_list(const std::string& csv) {
  std::vector<Frac> out;
  std::string cur;
  std::istringstream in(csv);
  while (std::getline(in, cur, ',')) out.push_back(parse_frac(cur));
  if (out.empty()) throw std::invalid_argument("empty fraction list '" + csv + "'");
  return out;
}

// Flags shared by every verb that needs an instance.
struct CommonOpts {
  std::string topology_file;
  bool use_cost239 = false;
  std::string demands_file;
  std::uint64_t gen_seed = 0;
  std::string mode = "full";
  std::string sla = "0";
  std::string services = "0.25,0.5,0.75,1";
  std::string fractions;
  std::string sla_form = "survivable";
  int slices = 320;
  int kpairs = 4;
  std::string solver = "heuristic";
  double time_limit = 300.0;
  std::string out_dir = ".";
  bool stable_output = false;
  CLI::Option* gen_seed_opt = nullptr;

  void attach(CLI::App* cmd, bool with_scenario) {
    auto* topo = cmd->add_option("--topology", topology_file, "topology file");
    cmd->add_flag("--cost239", use_cost239, "use the built-in COST239 topology")
        ->excludes(topo);
    cmd->add_option("--demands", demands_file, "demand CSV file");
    gen_seed_opt = cmd->add_option("--gen-seed", gen_seed, "generate demands with this seed");
    cmd->add_option("--slices", slices, "spectrum slices per link");
    cmd->add_option("--kpairs", kpairs, "route pairs per demand");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_flag("--stable-output", stable_output, "zero the timing column in metrics");
    if (with_scenario) {
      cmd->add_option("--mode", mode, "full | fixed | uniform | demandwise");
      cmd->add_option("--sla", sla, "service-level fraction, e.g. 0.75 or 3/4");
      cmd->add_option("--services", services, "demand-wise protection fractions");
      cmd->add_option("--fractions", fractions, "fixed mode: fraction per demand id");
      cmd->add_option("--sla-form", sla_form, "survivable | aggregate | literal");
      cmd->add_option("--solver", solver, "exact | heuristic");
      cmd->add_option("--time-limit", time_limit, "exact solver time limit, seconds");
    }
  }

  Topology topology() const {
    if (use_cost239 == !topology_file.empty())
      throw std::invalid_argument("pick exactly one of --topology FILE or --cost239");
    return use_cost239 ? cost239() : load_topology_file(topology_file);
  }

  bool generated() const { return gen_seed_opt && gen_seed_opt->count() > 0; }

  std::vector<Demand> demands(const Topology& topo) const {
    if (demands_file.empty() == !generated())
      throw std::invalid_argument("pick exactly one of --demands FILE or --gen-seed N");
    if (!demands_file.empty()) return load_demands_file(demands_file, topo);
    return generate_traffic(topo, gen_seed, TrafficParams{});
  }

  RunConfig run_config() const {
    RunConfig rc;
    rc.mode = scenario_mode_from_string(mode);
    rc.sla = parse_frac(sla);
    rc.sla_form = sla_form_from_string(sla_form);
    rc.service_fractions = parse_frac_list(services);
    if (!fractions.empty()) rc.fixed_fractions = parse_frac_list(fractions);
    rc.slice_count = slices;
    rc.route_pairs = kpairs;
    if (solver != "exact" && solver != "heuristic")
      throw std::invalid_argument("--solver must be exact or heuristic");
    rc.exact = solver == "exact";
    rc.time_limit_s = time_limit;
    return rc;
  }
};

int exit_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
    case SolveStatus::Feasible: return 0;
    case SolveStatus::Infeasible: return 2;
    case SolveStatus::Timeout: return 3;
  }
  return 4;
}

int cmd_plan(const CommonOpts& co) {
  const Topology topo = co.topology();
  const std::vector<Demand> demands = co.demands(topo);
  const RunResult rr = run_scenario(topo, demands, co.run_config());

  const std::vector<SweepRow> rows{{co.generated() ? co.gen_seed : 0, rr.metrics}};
  spit(co.out_dir + "/metrics.csv", metrics_to_csv(rows, co.stable_output));
  if (!rr.solution.assignments.empty())
    spit(co.out_dir + "/assignments.csv", solution_to_csv(rr.instance, rr.table, rr.solution));

  std::cout << "status=" << to_string(rr.solution.status) << " phi=" << rr.solution.phi
            << " link_usage=" << rr.solution.link_usage
            << " lower_bound=" << rr.solution.lower_bound << "\n";
  if (!rr.solution.note.empty()) std::cout << "note: " << rr.solution.note << "\n";
  return exit_code(rr.solution.status);
}

int cmd_sweep(const CommonOpts& co, const std::string& seed_range, int threads) {
  const Topology topo = co.topology();
  SweepConfig cfg;
  const auto dots = seed_range.find("..");
  if (dots == std::string::npos) {
    cfg.seeds.push_back(std::stoull(seed_range));
  } else {
    const std::uint64_t a = std::stoull(seed_range.substr(0, dots));
    const std::uint64_t b = std::stoull(seed_range.substr(dots + 2));
    if (b < a) throw std::invalid_argument("--gen-seeds range is backwards");
    for (std::uint64_t s = a; s <= b; ++s) cfg.seeds.push_back(s);
  }
  cfg.slas = parse_frac_list(co.sla);
  cfg.dw_services = parse_frac_list(co.services);
  cfg.sla_form = sla_form_from_string(co.sla_form);
  cfg.slice_count = co.slices;
  cfg.route_pairs = co.kpairs;
  cfg.exact = co.solver == "exact";
  cfg.time_limit_s = co.time_limit;
  cfg.threads = threads;

  const std::vector<SweepRow> rows = sweep(topo, cfg);
  spit(co.out_dir + "/metrics.csv", metrics_to_csv(rows, co.stable_output));
  spit(co.out_dir + "/compare.csv", compare_to_csv(rows));
  std::cout << compare_to_csv(rows);

  int worst = 0;
  for (const SweepRow& r : rows) worst = std::max(worst, exit_code(r.metrics.status));
  return worst;
}

int cmd_pairs(const CommonOpts& co) {
  const Topology topo = co.topology();
  const std::vector<Demand> demands = co.demands(topo);
  std::vector<std::vector<RoutePair>> pairs;
  for (const Demand& d : demands) pairs.push_back(k_disjoint_pairs(topo, d.src, d.dst, co.kpairs));
  const std::string csv = pairs_to_csv(topo, pairs);
  spit(co.out_dir + "/pairs.csv", csv);
  std::cout << csv;
  return 0;
}

int cmd_export_lp(const CommonOpts& co) {
  const Topology topo = co.topology();
  const std::vector<Demand> demands = co.demands(topo);
  const PlanningInstance inst = make_instance(topo, demands, co.run_config());
  const FeasibilityTable table = build_feasibility(inst);
  const Model model = build_model(inst, table);
  spit(co.out_dir + "/model.lp", write_lp(model));
  spit(co.out_dir + "/model.mps", write_mps(model));
  std::cout << "wrote " << co.out_dir << "/model.lp and " << co.out_dir << "/model.mps ("
            << model.vars.size() << " variables, " << model.rows.size() << " rows)\n";
  return 0;
}

int cmd_verify(const CommonOpts& co, const std::string& assignments_file) {
  const Topology topo = co.topology();
  const std::vector<Demand> demands = co.demands(topo);
  const PlanningInstance inst = make_instance(topo, demands, co.run_config());
  const FeasibilityTable table = build_feasibility(inst);
  Solution sol = parse_assignments_csv(inst, table, slurp(assignments_file));
  score_solution(inst, table, sol);
  const VerifyReport rep = verify_solution(inst, table, sol);
  if (rep.ok) {
    std::cout << "ok phi=" << rep.phi << " link_usage=" << rep.link_usage << "\n";
    return 0;
  }
  std::cout << rep.summary();
  return 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"survivable elastic optical network planner"};
  app.require_subcommand(1);

  CommonOpts plan_co, sweep_co, pairs_co, lp_co, verify_co;
  std::string seed_range = "1..10";
  int threads = 1;
  std::string assignments_file;

  auto* plan = app.add_subcommand("plan", "solve one scenario");
  plan_co.attach(plan, true);
  auto* sw = app.add_subcommand("sweep", "run the multi-seed scenario grid");
  sweep_co.sla = "0.75,0.5,0.25";  // for this verb the flag takes the whole grid
  sweep_co.attach(sw, true);
  sw->add_option("--gen-seeds", seed_range, "seed range A..B (or one seed)");
  sw->add_option("--threads", threads, "seeds processed in parallel");
  sw->get_option("--sla")->description("comma-separated SLA list, high to low");
  auto* pr = app.add_subcommand("pairs", "dump link-disjoint route pairs");
  pairs_co.attach(pr, false);
  auto* lp = app.add_subcommand("export-lp", "write the integer program");
  lp_co.attach(lp, true);
  auto* vf = app.add_subcommand("verify", "re-check an assignments file");
  verify_co.attach(vf, true);
  vf->add_option("--assignments", assignments_file, "assignments.csv to check")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan->parsed()) return cmd_plan(plan_co);
    if (sw->parsed()) return cmd_sweep(sweep_co, seed_range, threads);
    if (pr->parsed()) return cmd_pairs(pairs_co);
    if (lp->parsed()) return cmd_export_lp(lp_co);
    if (vf->parsed()) return cmd_verify(verify_co, assignments_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 4;
}
