#include "eonplan/modulation.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

using namespace eonplan;

namespace {
const auto kCatalog = default_catalog();
Frac gbps(double g) { return Frac(static_cast<std::int64_t>(g * 1000)); }
}  // namespace

TEST(Catalog, DefaultIsValidAndOrdered) {
  ASSERT_EQ(kCatalog.size(), 6u);
  validate_catalog(kCatalog);
  EXPECT_EQ(kCatalog[0].name, "PM-BPSK");
  EXPECT_EQ(kCatalog[5].name, "PM-64QAM");
  // Slot capacity steps by 12.5 Gbps per catalog entry.
  for (std::size_t i = 0; i < kCatalog.size(); ++i) {
    EXPECT_DOUBLE_EQ(kCatalog[i].bits_per_hz, 2.0 * (i + 1));
    EXPECT_EQ(kCatalog[i].slot_cap_mbps, static_cast<std::int64_t>(12500 * (i + 1)));
  }
}

TEST(Catalog, ValidationRejectsBadEntries) {
  auto bad = kCatalog;
  std::swap(bad[0], bad[1]);  // out of order
  EXPECT_THROW(validate_catalog(bad), std::invalid_argument);

  bad = kCatalog;
  bad[2].slot_cap_mbps += 1;  // capacity no longer n * 6.25 Gbps
  EXPECT_THROW(validate_catalog(bad), std::invalid_argument);

  EXPECT_THROW(validate_catalog({}), std::invalid_argument);
}

TEST(OpticalReach, FrozenValues) {
  // Values frozen from an independent evaluation of the reach formula.
  EXPECT_NEAR(optical_reach(8.0, 100.0), 1283.216309, 1e-5);
  EXPECT_NEAR(optical_reach(12.0, 175.0), 460.663383, 1e-5);
  EXPECT_NEAR(optical_reach(12.0, 100.0), 529.222335, 1e-5);
  EXPECT_NEAR(optical_reach(6.0, 175.0), 1389.455310, 1e-5);
  EXPECT_NEAR(optical_reach(8.0, 175.0), 1079.858001, 1e-5);
  EXPECT_NEAR(optical_reach(2.0, 100.0), 2414.207270, 1e-5);
  EXPECT_NEAR(optical_reach(8.0, 106.25), 1261.185979, 1e-5);
  // At n = 14.0344 the rate term vanishes and only the constant remains.
  EXPECT_NEAR(optical_reach(14.0344, 50.0), 145.741, 1e-9);
  EXPECT_NEAR(optical_reach(14.0344, 175.0), 145.741, 1e-9);
  EXPECT_THROW(optical_reach(8.0, 0.0), std::invalid_argument);
  EXPECT_THROW(optical_reach(8.0, -5.0), std::invalid_argument);
}

TEST(OpticalReach, MonotoneInRegime) {
  // Below the pivot efficiency, reach shrinks with rate and with efficiency.
  for (double n : {2.0, 4.0, 6.0, 8.0, 10.0, 12.0}) {
    EXPECT_GT(optical_reach(n, 100.0), optical_reach(n, 175.0)) << n;
  }
  for (double br : {100.0, 150.0, 200.0}) {
    for (int i = 1; i < 6; ++i)
      EXPECT_GT(optical_reach(2.0 * i, br), optical_reach(2.0 * (i + 1), br)) << br;
  }
}

TEST(SelectFormat, PicksHighestEfficiencyWithinReach) {
  // 175 Gbps: PM-64QAM reaches to ~460.66 km, PM-32QAM to ~770.26 km,
  // PM-16QAM to ~1079.86 km, PM-8QAM to ~1389.46 km.
  EXPECT_EQ(select_format(450.0, gbps(175), kCatalog), 5);
  EXPECT_EQ(select_format(500.0, gbps(175), kCatalog), 4);
  EXPECT_EQ(select_format(1000.0, gbps(175), kCatalog), 3);
  EXPECT_EQ(select_format(1250.0, gbps(175), kCatalog), 2);
  // 100 Gbps at 1000 km: PM-16QAM (1283.2 km) fits, PM-32QAM (906.2) does not.
  EXPECT_EQ(select_format(1000.0, gbps(100), kCatalog), 3);
  // Past every format's reach there is no answer.
  EXPECT_EQ(select_format(6000.0, gbps(100), kCatalog), std::nullopt);
  EXPECT_THROW(select_format(0.0, gbps(100), kCatalog), std::invalid_argument);
  EXPECT_THROW(select_format(100.0, Frac(0), kCatalog), std::invalid_argument);
}

TEST(SelectFormat, BoundaryUsesTolerance) {
  const double reach = optical_reach(12.0, 175.0);
  // Exactly at the reach (and a hair beyond, within 1e-9 km) still qualifies.
  EXPECT_EQ(select_format(reach, gbps(175), kCatalog), 5);
  EXPECT_EQ(select_format(reach + 0.5e-9, gbps(175), kCatalog), 5);
  EXPECT_EQ(select_format(reach + 1e-6, gbps(175), kCatalog), 4);
}

TEST(SelectFormat, AntitoneInPathLength) {
  // Longer paths can never select a more efficient format.
  for (double rate : {100.0, 131.25, 175.0}) {
    std::optional<int> prev;
    bool first = true;
    for (double km = 100.0; km <= 3000.0; km += 50.0) {
      const auto cur = select_format(km, gbps(rate), kCatalog);
      if (!first) {
        if (!prev) {
          EXPECT_EQ(cur, std::nullopt);
        } else if (cur) {
          EXPECT_LE(*cur, *prev);
        }
      }
      prev = cur;
      first = false;
    }
  }
}

TEST(SlotsNeeded, WorkedExamples) {
  const auto& m8 = kCatalog[2];   // PM-8QAM, 37.5 Gbps per slot
  const auto& m16 = kCatalog[3];  // PM-16QAM, 50 Gbps per slot
  const auto& m64 = kCatalog[5];  // PM-64QAM, 75 Gbps per slot
  EXPECT_EQ(slots_needed(gbps(100), m16), 2);
  EXPECT_EQ(slots_needed(gbps(175), m64), 3);
  EXPECT_EQ(slots_needed(gbps(175), m8), 5);
  EXPECT_EQ(slots_needed(Frac(131250), m8), 4);   // 131.25 / 37.5 = 3.5
  EXPECT_EQ(slots_needed(Frac(106250), m8), 3);
  EXPECT_EQ(slots_needed(gbps(50), m16), 1);
  EXPECT_EQ(slots_needed(gbps(75), m16), 2);
  EXPECT_EQ(slots_needed(Frac(106250), m16), 3);  // 106.25 / 50 = 2.125
}

TEST(SlotsNeeded, ExactAtMultiples) {
  const auto& m16 = kCatalog[3];
  EXPECT_EQ(slots_needed(Frac(50000), m16), 1);
  EXPECT_EQ(slots_needed(Frac(50001), m16), 2);
  EXPECT_EQ(slots_needed(Frac(49999), m16), 1);
  // 17/28 of 175 Gbps = 106.25 Gbps exactly; the fraction path must agree.
  EXPECT_EQ(slots_needed(Frac(17, 28) * Frac(175000), m16), 3);
  EXPECT_THROW(slots_needed(Frac(0), m16), std::invalid_argument);
}
