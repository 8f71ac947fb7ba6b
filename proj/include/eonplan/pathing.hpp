// Link-disjoint route pairs.
//
// suurballe_pair finds a minimum-total-length pair of link-disjoint simple
// paths using the two-pass residual construction: shortest path first, then a
// second shortest path in a graph where the first path's arcs are removed
// forward and negated backward, then the two arc sets are merged with
// opposite traversals cancelling.  With strictly positive lengths the merged
// flow is acyclic, so the decomposition yields two simple paths.
//
// k_disjoint_pairs enumerates further candidates by re-running the pair
// algorithm with growing link-exclusion sets seeded from already-found pairs.
// This finds distinct pairs in practice but is structurally blind to a pair
// whose link set strictly contains a cheaper pair's link set (no exclusion
// can separate the two); such pairs combine a cheaper pair with detour
// cycles and are not useful route candidates.

#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "eonplan/topology.hpp"

namespace eonplan {

struct RoutePair {
  std::vector<int> working_nodes;
  std::vector<int> backup_nodes;
  std::vector<int> working_links;
  std::vector<int> backup_links;
  double working_km = 0.0;
  double backup_km = 0.0;

  int working_hops() const { return static_cast<int>(working_links.size()); }
  int backup_hops() const { return static_cast<int>(backup_links.size()); }
  double total_km() const { return working_km + backup_km; }
  int total_hops() const { return working_hops() + backup_hops(); }

  bool working_uses(int link_id) const {
    return std::find(working_links.begin(), working_links.end(), link_id) != working_links.end();
  }
  bool backup_uses(int link_id) const {
    return std::find(backup_links.begin(), backup_links.end(), link_id) != backup_links.end();
  }
};

// Cheapest total length first; ties by hop count, then node sequences.
inline bool route_pair_order(const RoutePair& a, const RoutePair& b) {
  if (a.total_km() != b.total_km()) return a.total_km() < b.total_km();
  if (a.total_hops() != b.total_hops()) return a.total_hops() < b.total_hops();
  return std::tie(a.working_nodes, a.backup_nodes) < std::tie(b.working_nodes, b.backup_nodes);
}

namespace detail {

struct PathResult {
  std::vector<int> nodes;
  std::vector<int> links;
  double km = 0.0;
};

// Deterministic Dijkstra; `blocked[link_id]` removes a link.  Ties resolved
// by (distance, hops, predecessor node).
inline std::optional<PathResult> dijkstra(const Topology& t, int src, int dst,
                                          const std::vector<char>& blocked) {
  const int n = t.node_count();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<int> hops(n, INT32_MAX), pred_node(n, -1), pred_link(n, -1);
  std::vector<char> done(n, 0);
  dist[src] = 0.0;
  hops[src] = 0;
  for (int iter = 0; iter < n; ++iter) {
    int u = -1;
    for (int v = 0; v < n; ++v) {
      if (done[v] || dist[v] == inf) continue;
      if (u == -1 || dist[v] < dist[u] || (dist[v] == dist[u] && v < u)) u = v;
    }
    if (u == -1) break;
    done[u] = 1;
    for (const auto& [v, lid] : t.neighbors(u)) {
      if (done[v] || (lid < static_cast<int>(blocked.size()) && blocked[lid])) continue;
      const double d2 = dist[u] + t.link(lid).length_km;
      const int h2 = hops[u] + 1;
      if (d2 < dist[v] || (d2 == dist[v] && (h2 < hops[v] || (h2 == hops[v] && u < pred_node[v])))) {
        dist[v] = d2;
        hops[v] = h2;
        pred_node[v] = u;
        pred_link[v] = lid;
      }
    }
  }
  if (dist[dst] == inf) return std::nullopt;
  PathResult r;
  r.km = dist[dst];
  for (int v = dst; v != src; v = pred_node[v]) {
    r.nodes.push_back(v);
    r.links.push_back(pred_link[v]);
  }
  r.nodes.push_back(src);
  std::reverse(r.nodes.begin(), r.nodes.end());
  std::reverse(r.links.begin(), r.links.end());
  return r;
}

struct Arc {
  int from, to, link;
  double cost;
  bool removed = false;
};

inline bool path_is_simple(const std::vector<int>& nodes) {
  std::set<int> seen(nodes.begin(), nodes.end());
  return seen.size() == nodes.size();
}

}  // namespace detail

// Minimum-total-length pair of link-disjoint simple paths, or nullopt when
// the graph admits none.  The shorter path (ties: hops, then node sequence)
// becomes the working path.
inline std::optional<RoutePair> suurballe_pair(const Topology& t, int src, int dst,
                                               const std::vector<char>& blocked = {}) {
  if (src == dst) throw std::invalid_argument("suurballe_pair: src == dst");
  if (src < 0 || src >= t.node_count() || dst < 0 || dst >= t.node_count())
    throw std::invalid_argument("suurballe_pair: node out of range");

  auto first = detail::dijkstra(t, src, dst, blocked);
  if (!first) return std::nullopt;

  // Residual arcs: every link both ways, except the first path's arcs are
  // dropped forward and negated backward.
  std::vector<detail::Arc> arcs;
  arcs.reserve(2 * t.link_count());
  for (const Link& l : t.links()) {
    if (l.id < static_cast<int>(blocked.size()) && blocked[l.id]) continue;
    arcs.push_back({l.a, l.b, l.id, l.length_km});
    arcs.push_back({l.b, l.a, l.id, l.length_km});
  }
  for (std::size_t i = 0; i + 1 < first->nodes.size(); ++i) {
    const int u = first->nodes[i], v = first->nodes[i + 1], lid = first->links[i];
    for (auto& a : arcs) {
      if (a.link != lid) continue;
      if (a.from == u && a.to == v) a.removed = true;
      if (a.from == v && a.to == u) a.cost = -a.cost;
    }
  }

  // Bellman-Ford tolerates the negative arcs; only strict improvements are
  // taken, so the result is deterministic.
  const int n = t.node_count();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<int> pred_node(n, -1), pred_link(n, -1);
  dist[src] = 0.0;
  for (int round = 0; round < n - 1; ++round) {
    bool changed = false;
    for (const auto& a : arcs) {
      if (a.removed || dist[a.from] == inf) continue;
      const double d2 = dist[a.from] + a.cost;
      if (d2 < dist[a.to] - 1e-12) {
        dist[a.to] = d2;
        pred_node[a.to] = a.from;
        pred_link[a.to] = a.link;
        changed = true;
      }
    }
    if (!changed) break;
  }
  if (dist[dst] == inf) return std::nullopt;

  std::vector<std::pair<int, int>> second_arcs;  // (from-node, link)
  {
    std::vector<char> visited(n, 0);
    int v = dst;
    while (v != src) {
      if (visited[v]) throw std::logic_error("suurballe_pair: cycle in residual path");
      visited[v] = 1;
      second_arcs.emplace_back(pred_node[v], pred_link[v]);
      v = pred_node[v];
    }
    std::reverse(second_arcs.begin(), second_arcs.end());
  }

  // Merge the two arc sets; a link traversed in opposite directions by the
  // two paths drops out entirely.
  struct DirArc { int from, to, link; };
  std::vector<DirArc> flow;
  for (std::size_t i = 0; i + 1 < first->nodes.size(); ++i)
    flow.push_back({first->nodes[i], first->nodes[i + 1], first->links[i]});
  for (const auto& [from, lid] : second_arcs) {
    const int to = t.link(lid).other(from);
    auto rev = std::find_if(flow.begin(), flow.end(), [&](const DirArc& d) {
      return d.link == lid && d.from == to && d.to == from;
    });
    if (rev != flow.end())
      flow.erase(rev);
    else
      flow.push_back({from, to, lid});
  }

  // Decompose the merged flow into two paths; at a branch the smallest
  // (next-node, link) arc is taken so the decomposition is deterministic.
  auto walk = [&](std::vector<DirArc>& pool) {
    detail::PathResult p;
    p.nodes.push_back(src);
    int cur = src;
    while (cur != dst) {
      int best = -1;
      for (int i = 0; i < static_cast<int>(pool.size()); ++i) {
        if (pool[i].from != cur) continue;
        if (best == -1 || std::make_pair(pool[i].to, pool[i].link) <
                              std::make_pair(pool[best].to, pool[best].link))
          best = i;
      }
      if (best == -1) throw std::logic_error("suurballe_pair: dead end in flow decomposition");
      p.km += t.link(pool[best].link).length_km;
      p.links.push_back(pool[best].link);
      p.nodes.push_back(pool[best].to);
      cur = pool[best].to;
      pool.erase(pool.begin() + best);
      if (p.nodes.size() > static_cast<std::size_t>(n)) throw std::logic_error("suurballe_pair: walk too long");
    }
    return p;
  };
  auto pool = flow;
  detail::PathResult pa = walk(pool);
  detail::PathResult pb = walk(pool);
  if (!pool.empty()) throw std::logic_error("suurballe_pair: leftover arcs after decomposition");
  if (!detail::path_is_simple(pa.nodes) || !detail::path_is_simple(pb.nodes))
    throw std::logic_error("suurballe_pair: non-simple path in decomposition");

  const bool a_first = pa.km != pb.km ? pa.km < pb.km
                       : pa.links.size() != pb.links.size()
                           ? pa.links.size() < pb.links.size()
                           : pa.nodes < pb.nodes;
  const detail::PathResult& w = a_first ? pa : pb;
  const detail::PathResult& b = a_first ? pb : pa;
  RoutePair out;
  out.working_nodes = w.nodes;
  out.working_links = w.links;
  out.working_km = w.km;
  out.backup_nodes = b.nodes;
  out.backup_links = b.links;
  out.backup_km = b.km;
  return out;
}

// Up to k distinct pairs, cheapest-total-length first; entry 0 is exactly
// suurballe_pair's result.  May return fewer than k when the exclusion
// search exhausts its candidates.
inline std::vector<RoutePair> k_disjoint_pairs(const Topology& t, int src, int dst, int k) {
  if (k < 1) throw std::invalid_argument("k_disjoint_pairs: k must be >= 1");
  auto base = suurballe_pair(t, src, dst);
  if (!base) return {};

  using Key = std::pair<std::vector<int>, std::vector<int>>;
  std::set<Key> seen_pairs;
  std::vector<RoutePair> found;
  auto record = [&](const RoutePair& p) {
    if (seen_pairs.insert({p.working_nodes, p.backup_nodes}).second) found.push_back(p);
  };
  record(*base);

  std::set<std::vector<int>> visited_exclusions;
  std::vector<std::pair<std::vector<int>, RoutePair>> queue;  // (exclusion, pair found under it)
  queue.push_back({{}, *base});
  visited_exclusions.insert({});

  const int call_cap = std::max(256, 48 * k * t.link_count());
  int calls = 0;
  for (std::size_t qi = 0; qi < queue.size() && calls < call_cap; ++qi) {
    const auto [excl, parent] = queue[qi];
    std::vector<int> parent_links = parent.working_links;
    parent_links.insert(parent_links.end(), parent.backup_links.begin(), parent.backup_links.end());
    std::sort(parent_links.begin(), parent_links.end());
    for (int lid : parent_links) {
      std::vector<int> child = excl;
      child.push_back(lid);
      std::sort(child.begin(), child.end());
      child.erase(std::unique(child.begin(), child.end()), child.end());
      if (!visited_exclusions.insert(child).second) continue;
      std::vector<char> blocked(t.link_count(), 0);
      for (int e : child) blocked[e] = 1;
      ++calls;
      auto p = suurballe_pair(t, src, dst, blocked);
      if (!p) continue;
      record(*p);
      queue.push_back({child, *p});
    }
  }

  std::sort(found.begin(), found.end(), route_pair_order);
  // Keep the plain pair algorithm's tuple in front; among equal-cost
  // decompositions the ordering above may prefer a sibling.
  auto self = std::find_if(found.begin(), found.end(), [&](const RoutePair& p) {
    return p.working_nodes == base->working_nodes && p.backup_nodes == base->backup_nodes;
  });
  if (self != found.begin()) std::rotate(found.begin(), self, self + 1);
  if (static_cast<int>(found.size()) > k) found.resize(k);
  return found;
}

inline std::string path_to_string(const Topology& t, const std::vector<int>& nodes) {
  std::string s;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) s += "-";
    s += t.node_name(nodes[i]);
  }
  return s;
}

inline std::string pairs_to_csv(const Topology& t,
                                const std::vector<std::vector<RoutePair>>& pairs_per_demand) {
  std::string out = "demand,pair,working,backup,working_km,backup_km\n";
  for (std::size_t d = 0; d < pairs_per_demand.size(); ++d) {
    for (std::size_t p = 0; p < pairs_per_demand[d].size(); ++p) {
      const RoutePair& rp = pairs_per_demand[d][p];
      out += std::to_string(d) + "," + std::to_string(p) + "," + path_to_string(t, rp.working_nodes) +
             "," + path_to_string(t, rp.backup_nodes) + "," + format_length(rp.working_km) + "," +
             format_length(rp.backup_km) + "\n";
    }
  }
  return out;
}

}  // namespace eonplan
