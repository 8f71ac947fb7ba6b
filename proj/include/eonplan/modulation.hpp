// Modulation formats, transparent reach, and slot sizing.
//
// Reach model (km) for a polarization-multiplexed format carrying BR Gbps at
// spectral efficiency n bit/s/Hz:
//     L(n, BR) = 145.741 + (n - 14.0344) * (60.2196 * ln(BR) - 465.82)
// Within the catalog's regime (n < 14.03) reach shrinks as either the bit
// rate or the spectral efficiency grows.

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eonplan/rational.hpp"

namespace eonplan {

inline constexpr std::int64_t kSliceMbps = 6250;  // 6.25 GHz slice granularity
inline constexpr double kReachToleranceKm = 1e-9;

struct ModulationFormat {
  std::string name;
  double bits_per_hz = 0.0;         // n in the reach model
  std::int64_t slot_cap_mbps = 0;   // n * 6.25 Gbps, exact
};

inline std::vector<ModulationFormat> default_catalog() {
  return {
      {"PM-BPSK", 2.0, 2 * kSliceMbps},   {"PM-QPSK", 4.0, 4 * kSliceMbps},
      {"PM-8QAM", 6.0, 6 * kSliceMbps},   {"PM-16QAM", 8.0, 8 * kSliceMbps},
      {"PM-32QAM", 10.0, 10 * kSliceMbps}, {"PM-64QAM", 12.0, 12 * kSliceMbps},
  };
}

inline void validate_catalog(const std::vector<ModulationFormat>& catalog) {
  if (catalog.empty()) throw std::invalid_argument("catalog: empty");
  double prev = 0.0;
  for (const auto& f : catalog) {
    if (!(f.bits_per_hz > prev))
      throw std::invalid_argument("catalog: formats must be sorted by ascending bits_per_hz");
    prev = f.bits_per_hz;
    const double want = f.bits_per_hz * kSliceMbps;
    if (std::abs(want - static_cast<double>(f.slot_cap_mbps)) > 1e-6)
      throw std::invalid_argument("catalog: slot capacity of " + f.name +
                                  " must equal bits_per_hz * 6.25 Gbps exactly");
  }
}

inline double optical_reach(double bits_per_hz, double bit_rate_gbps) {
  if (!(bit_rate_gbps > 0.0)) throw std::invalid_argument("optical_reach: bit rate must be positive");
  return 145.741 + (bits_per_hz - 14.0344) * (60.2196 * std::log(bit_rate_gbps) - 465.82);
}

// Highest-efficiency format whose reach covers the path, or nullopt.
// Index into `catalog`; comparison uses an absolute 1e-9 km tolerance.
inline std::optional<int> select_format(double path_km, const Frac& rate_mbps,
                                        const std::vector<ModulationFormat>& catalog) {
  if (!(path_km > 0.0)) throw std::invalid_argument("select_format: path length must be positive");
  if (!(Frac(0) < rate_mbps)) throw std::invalid_argument("select_format: rate must be positive");
  const double gbps = rate_mbps.to_double() / 1000.0;
  std::optional<int> best;
  for (int i = 0; i < static_cast<int>(catalog.size()); ++i) {
    if (optical_reach(catalog[i].bits_per_hz, gbps) + kReachToleranceKm >= path_km) best = i;
  }
  return best;
}

// ceil(rate / slot capacity), exact in integer arithmetic.
inline int slots_needed(const Frac& rate_mbps, const ModulationFormat& fmt) {
  if (!(Frac(0) < rate_mbps)) throw std::invalid_argument("slots_needed: rate must be positive");
  if (fmt.slot_cap_mbps <= 0) throw std::invalid_argument("slots_needed: bad slot capacity");
  return static_cast<int>(ceil_div(rate_mbps, fmt.slot_cap_mbps));
}

}  // namespace eonplan
