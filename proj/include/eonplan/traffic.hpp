// Demand sets: seeded random generation over a topology, plus the CSV format.
//
// Generation is a pure function of (topology, seed, params) and is specified
// exactly so results can be reproduced outside this codebase:
//   1. List all unordered node pairs (i, j), i < j, ordered by (i, j) with
//      node indices taken from topology order.
//   2. Partial Fisher-Yates over that list driven by SplitMix64(seed):
//      for t = 0 .. n_demands-1, swap slot t with slot t + below(N - t).
//   3. The first n_demands entries are the selected pairs; sort them by
//      (i, j); then draw one rate per demand in that order with
//      grid[below(grid_size)].
// below(n) is unbiased rejection sampling (retry while the 64-bit draw falls
// into the tail shorter than a full multiple of n).

#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eonplan/rational.hpp"
#include "eonplan/topology.hpp"

namespace eonplan {

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("SplitMix64::below: zero bound");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }
};

struct Demand {
  int id = -1;
  int src = -1;
  int dst = -1;
  Frac rate_mbps{0};  // exact; 100 Gbps == 100000

  double rate_gbps() const { return rate_mbps.to_double() / 1000.0; }
};

struct TrafficParams {
  double pair_fraction = 0.5;       // share of unordered node pairs carrying a demand
  std::int64_t rate_min_mbps = 100000;
  std::int64_t rate_max_mbps = 200000;
  std::int64_t rate_step_mbps = 25000;
};

inline std::vector<Demand> generate_traffic(const Topology& topo, std::uint64_t seed,
                                            const TrafficParams& p = {}) {
  if (!(p.pair_fraction > 0.0) || p.pair_fraction > 1.0)
    throw std::invalid_argument("generate_traffic: pair_fraction must be in (0, 1]");
  if (p.rate_step_mbps <= 0 || p.rate_max_mbps < p.rate_min_mbps || p.rate_min_mbps <= 0)
    throw std::invalid_argument("generate_traffic: bad rate grid");
  std::vector<std::int64_t> grid;
  for (std::int64_t r = p.rate_min_mbps; r <= p.rate_max_mbps; r += p.rate_step_mbps)
    grid.push_back(r);

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < topo.node_count(); ++i)
    for (int j = i + 1; j < topo.node_count(); ++j) pairs.emplace_back(i, j);
  const auto n_demands =
      static_cast<std::size_t>(p.pair_fraction * static_cast<double>(pairs.size()));
  if (n_demands == 0)
    throw std::invalid_argument("generate_traffic: pair_fraction selects zero pairs");

  SplitMix64 rng(seed);
  for (std::size_t t = 0; t < n_demands; ++t) {
    const std::size_t j = t + static_cast<std::size_t>(rng.below(pairs.size() - t));
    std::swap(pairs[t], pairs[j]);
  }
  pairs.resize(n_demands);
  std::sort(pairs.begin(), pairs.end());

  std::vector<Demand> out;
  out.reserve(n_demands);
  for (std::size_t i = 0; i < n_demands; ++i) {
    Demand d;
    d.id = static_cast<int>(i);
    d.src = pairs[i].first;
    d.dst = pairs[i].second;
    d.rate_mbps = Frac(grid[rng.below(grid.size())]);
    out.push_back(d);
  }
  return out;
}

// CSV schema: header "id,src,dst,rate_gbps"; src/dst are node names;
// rate_gbps is an exact decimal (or num/den for non-terminating values).
inline std::string serialize_demands_csv(const Topology& topo, const std::vector<Demand>& demands) {
  std::string out = "id,src,dst,rate_gbps\n";
  for (const Demand& d : demands) {
    out += std::to_string(d.id) + "," + topo.node_name(d.src) + "," + topo.node_name(d.dst) + "," +
           format_frac(d.rate_mbps * Frac(1, 1000)) + "\n";
  }
  return out;
}

inline std::vector<Demand> parse_demands_csv(std::string_view text, const Topology& topo) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "id,src,dst,rate_gbps")
    throw ParseError("demands: missing or malformed header (want 'id,src,dst,rate_gbps')");
  std::vector<Demand> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4)
      throw ParseError("demands line " + std::to_string(lineno) + ": expected 4 columns");
    Demand d;
    try {
      d.id = std::stoi(cells[0]);
    } catch (const std::exception&) {
      throw ParseError("demands line " + std::to_string(lineno) + ": bad id '" + cells[0] + "'");
    }
    d.src = topo.node_index(cells[1]);
    d.dst = topo.node_index(cells[2]);
    if (d.src < 0) throw ParseError("demands line " + std::to_string(lineno) + ": unknown node '" + cells[1] + "'");
    if (d.dst < 0) throw ParseError("demands line " + std::to_string(lineno) + ": unknown node '" + cells[2] + "'");
    if (d.src == d.dst) throw ParseError("demands line " + std::to_string(lineno) + ": src == dst");
    try {
      d.rate_mbps = parse_frac(cells[3]) * Frac(1000);
    } catch (const std::exception& e) {
      throw ParseError("demands line " + std::to_string(lineno) + ": bad rate: " + e.what());
    }
    if (!(Frac(0) < d.rate_mbps))
      throw ParseError("demands line " + std::to_string(lineno) + ": rate must be positive");
    out.push_back(d);
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].id != static_cast<int>(i))
      throw ParseError("demands: ids must be 0..n-1 in order (got " + std::to_string(out[i].id) +
                       " at row " + std::to_string(i) + ")");
  return out;
}

inline std::vector<Demand> load_demands_file(const std::string& path, const Topology& topo) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open demands file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_demands_csv(ss.str(), topo);
}

}  // namespace eonplan
