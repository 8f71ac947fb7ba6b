// Shared fixtures for the test suite: the two-demand worked example and a
// few small helpers.  The example lives in data/ as well; test_topology
// checks that the checked-in files match these strings.

#pragma once

#include <string>

#include "eonplan/instance.hpp"
#include "eonplan/topology.hpp"
#include "eonplan/traffic.hpp"

namespace testfix {

// Two demands, one route pair each.  A-Z can ride A-U-Z (1000 km) protected
// by A-P1-P-Z (1200 km); B-Z rides B-V-Z (450 km) protected by B-P2-P-Z
// (1250 km).  The backups share link P-Z.
inline const char* kExampleTopo =
    "node A\nnode B\nnode Z\nnode U\nnode V\nnode P1\nnode P2\nnode P\n"
    "link A U 500\nlink U Z 500\nlink A P1 400\nlink P1 P 400\nlink P Z 400\n"
    "link B V 225\nlink V Z 225\nlink B P2 430\nlink P2 P 420\n";

inline const char* kExampleDemands =
    "id,src,dst,rate_gbps\n"
    "0,A,Z,100\n"
    "1,B,Z,175\n";

inline eonplan::Topology example_topology() {
  return eonplan::parse_topology(kExampleTopo);
}

inline std::vector<eonplan::Demand> example_demands(const eonplan::Topology& t) {
  return eonplan::parse_demands_csv(kExampleDemands, t);
}

inline std::string repo_path(const std::string& rel) {
#ifdef EONPLAN_REPO_DIR
  return std::string(EONPLAN_REPO_DIR) + "/" + rel;
#else
  return rel;
#endif
}

}  // namespace testfix
