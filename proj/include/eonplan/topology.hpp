// Fiber topology: undirected weighted graph with named nodes, plus the text
// file format used across the toolkit and the built-in COST239 reference net.

#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eonplan {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Link {
  int id = -1;
  int a = -1;
  int b = -1;
  double length_km = 0.0;

  int other(int node) const { return node == a ? b : a; }
};

class Topology {
 public:
  Topology() = default;

  static Topology build(std::vector<std::string> node_names,
                        const std::vector<std::tuple<std::string, std::string, double>>& link_list) {
    Topology t;
    t.names_ = std::move(node_names);
    for (std::size_t i = 0; i < t.names_.size(); ++i) {
      if (t.names_[i].empty()) throw ValidationError("topology: empty node name");
      if (!t.index_.emplace(t.names_[i], static_cast<int>(i)).second)
        throw ValidationError("topology: duplicate node '" + t.names_[i] + "'");
    }
    for (const auto& [na, nb, len] : link_list) {
      const int a = t.node_index(na);
      const int b = t.node_index(nb);
      if (a < 0) throw ValidationError("topology: link references unknown node '" + na + "'");
      if (b < 0) throw ValidationError("topology: link references unknown node '" + nb + "'");
      if (a == b) throw ValidationError("topology: self-loop at '" + na + "'");
      if (!(len > 0.0)) throw ValidationError("topology: non-positive length on link " + na + " " + nb);
      const auto key = std::minmax(a, b);
      for (const Link& l : t.links_) {
        if (std::minmax(l.a, l.b) == key)
          throw ValidationError("topology: duplicate link " + na + " " + nb);
      }
      t.links_.push_back(Link{static_cast<int>(t.links_.size()), a, b, len});
    }
    t.adj_.assign(t.names_.size(), {});
    for (const Link& l : t.links_) {
      t.adj_[l.a].emplace_back(l.b, l.id);
      t.adj_[l.b].emplace_back(l.a, l.id);
    }
    for (auto& nbrs : t.adj_) std::sort(nbrs.begin(), nbrs.end());
    if (!t.names_.empty() && !t.connected())
      throw ValidationError("topology: graph is not connected");
    return t;
  }

  int node_count() const { return static_cast<int>(names_.size()); }
  int link_count() const { return static_cast<int>(links_.size()); }
  const std::vector<std::string>& node_names() const { return names_; }
  const std::string& node_name(int i) const { return names_.at(i); }
  const std::vector<Link>& links() const { return links_; }
  const Link& link(int id) const { return links_.at(id); }

  int node_index(std::string_view name) const {
    auto it = index_.find(std::string(name));
    return it == index_.end() ? -1 : it->second;
  }

  // Per node: (neighbor, link id), sorted.
  const std::vector<std::pair<int, int>>& neighbors(int node) const { return adj_.at(node); }

  bool connected() const {
    if (names_.empty()) return true;
    std::vector<char> seen(names_.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const auto& [v, lid] : adj_[u]) {
        (void)lid;
        if (!seen[v]) { seen[v] = 1; ++count; stack.push_back(v); }
      }
    }
    return count == node_count();
  }

  double average_degree() const {
    if (names_.empty()) return 0.0;
    return 2.0 * link_count() / node_count();
  }

 private:
  std::vector<std::string> names_;
  std::vector<Link> links_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  std::map<std::string, int> index_;
};

// Text format, one directive per line:
//   node <name>
//   link <nameA> <nameB> <length_km>
// '#' starts a comment; blank lines ignored.  UTF-8, LF line ends.
inline Topology parse_topology(std::string_view text) {
  std::vector<std::string> nodes;
  std::vector<std::tuple<std::string, std::string, double>> links;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "node") {
      std::string name, extra;
      if (!(ls >> name) || (ls >> extra))
        throw ParseError("line " + std::to_string(lineno) + ": expected 'node <name>'");
      nodes.push_back(name);
    } else if (kw == "link") {
      std::string a, b, len_text, extra;
      if (!(ls >> a >> b >> len_text) || (ls >> extra))
        throw ParseError("line " + std::to_string(lineno) + ": expected 'link <a> <b> <length_km>'");
      std::size_t used = 0;
      double len = 0.0;
      try {
        len = std::stod(len_text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != len_text.size())
        throw ParseError("line " + std::to_string(lineno) + ": bad length '" + len_text + "'");
      links.emplace_back(a, b, len);
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown directive '" + kw + "'");
    }
  }
  try {
    return Topology::build(std::move(nodes), links);
  } catch (const ValidationError& e) {
    throw ParseError(std::string(e.what()));
  }
}

inline std::string format_length(double km) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", km);
  return buf;
}

/// Canonical form: all nodes first, then links in id order.  parse() of the
// output reproduces the same topology byte-for-byte on re-serialization.
inline std::string serialize_topology(const Topology& t) {
  std::string out;
  for (const auto& n : t.node_names()) out += "node " + n + "\n";
  for (const Link& l : t.links())
    out += "link " + t.node_name(l.a) + " " + t.node_name(l.b) + " " + format_length(l.length_km) + "\n";
  return out;
}

inline Topology load_topology_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open topology file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_topology(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// Pan-European 11-node reference network, 26 bidirectional fiber links.
// Lengths are a documented route-distance table (km), all within [200, 1000].
inline Topology cost239() {
  static const std::vector<std::string> kNodes = {
      "Amsterdam", "Berlin", "Brussels", "Copenhagen", "London", "Luxembourg",
      "Milan",     "Paris",  "Prague",   "Vienna",     "Zurich"};
  static const std::vector<std::tuple<std::string, std::string, double>> kLinks = {
      {"London", "Amsterdam", 390},     {"London", "Brussels", 340},
      {"London", "Paris", 410},         {"London", "Copenhagen", 1000},
      {"Amsterdam", "Brussels", 200},   {"Amsterdam", "Berlin", 660},
      {"Amsterdam", "Copenhagen", 750}, {"Amsterdam", "Luxembourg", 440},
      {"Amsterdam", "Paris", 490},      {"Brussels", "Paris", 270},
      {"Brussels", "Luxembourg", 230},  {"Brussels", "Berlin", 720},
      {"Paris", "Luxembourg", 380},     {"Paris", "Zurich", 600},
      {"Paris", "Milan", 850},          {"Luxembourg", "Zurich", 440},
      {"Luxembourg", "Prague", 650},    {"Berlin", "Copenhagen", 400},
      {"Berlin", "Prague", 330},        {"Berlin", "Vienna", 640},
      {"Copenhagen", "Prague", 760},    {"Prague", "Vienna", 310},
      {"Prague", "Milan", 870},         {"Vienna", "Zurich", 740},
      {"Vienna", "Milan", 860},         {"Zurich", "Milan", 280}};
  return Topology::build(kNodes, kLinks);
}

}  // namespace eonplan
