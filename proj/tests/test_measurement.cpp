#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tdoa/error.hpp"
#include "tdoa/measurement.hpp"
#include "test_support.hpp"

namespace tdoa {
namespace {

TEST(SensorArray, RejectsWrongArity) {
  EXPECT_THROW(SensorArray({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}), Error);
  EXPECT_THROW(SensorArray(std::vector<Vec3>(6, Vec3{})), Error);
}

TEST(SensorArray, RejectsCoincidentSensors) {
  try {
    SensorArray({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
  }
}

TEST(SensorArray, MaxBaseline) {
  EXPECT_DOUBLE_EQ(SensorArray(test::kCanonicalFive).max_baseline(), std::sqrt(3.0));
}

TEST(Measurement, ReferenceFrameSubtractsFirstSensor) {
  const SensorArray s({{1, 1, 1}, {2, 1, 1}, {1, 2, 1}, {1, 1, 2}});
  const ReferencedArray rel = reference_frame(s);
  EXPECT_EQ(rel.origin, (Vec3{1, 1, 1}));
  EXPECT_EQ(rel.rel[0], (Vec3{0, 0, 0}));
  EXPECT_EQ(rel.rel[1], (Vec3{1, 0, 0}));
  EXPECT_EQ(rel.rel[3], (Vec3{0, 0, 1}));
}

TEST(Measurement, ReferenceFrameIdentityWhenAlreadyReferenced) {
  const ReferencedArray rel = reference_frame(SensorArray(test::kCanonicalFive));
  for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(rel.rel[k], test::kCanonicalFive[k]);
}

TEST(Measurement, ReferenceSensorAlwaysAtOrigin) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    std::vector<Vec3> pts;
    for (int k = 0; k < 5; ++k) pts.push_back(test::uniform_box(rng, 50.0));
    EXPECT_EQ(reference_frame(SensorArray(pts)).rel[0], (Vec3{}));
  }
}

TEST(Measurement, TrueRanges) {
  const Scenario a(SensorArray({{0, 0, 0}, {3, 0, 0}, {0, 1, 0}, {0, 0, 1}}), {3, 4, 0});
  const auto rho = true_ranges(a);
  EXPECT_DOUBLE_EQ(rho[0], 5.0);
  EXPECT_DOUBLE_EQ(rho[1], 4.0);

  const Scenario b(SensorArray(test::kCanonicalFour), {0, 0, 5});
  EXPECT_DOUBLE_EQ(true_ranges(b)[0], 5.0);
  for (double r : true_ranges(b)) EXPECT_GT(r, 0.0);
}

TEST(Measurement, RangeDifferences) {
  const Scenario a(SensorArray({{0, 0, 0}, {3, 0, 0}, {0, 1, 0}, {0, 0, 1}}), {3, 4, 0});
  EXPECT_DOUBLE_EQ(range_differences(a).of_sensor(1), -1.0);

  // Source on the bisector plane x = 0 of sensors at x = -1 and x = +1.
  const Scenario sym(SensorArray({{-1, 0, 0}, {1, 0, 0}, {0, 2, 0}, {0, 0, 2}}), {0, 0.3, -0.7});
  EXPECT_EQ(range_differences(sym).of_sensor(1), 0.0);
}

TEST(Measurement, CanonicalDeltasMatchOracle) {
  // tests/oracles/canonical.py, 50-digit arithmetic.
  const double expected[] = {-0.28614529354171920122, -0.48618532156814783486, -0.69474904731107447669,
                             -1.6435074203605626457};
  const RangeDifferences d = range_differences(Scenario(SensorArray(test::kCanonicalFive), test::kCanonicalSource));
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(d.values()[k], expected[k], 1e-15);
}

TEST(Measurement, TdoaToRangeDiff) {
  EXPECT_EQ(tdoa_to_range_diff(0.0, kSpeedOfLight), 0.0);
  EXPECT_EQ(tdoa_to_range_diff(1.0, 299792458.0), 299792458.0);
  EXPECT_DOUBLE_EQ(tdoa_to_range_diff(-1e-6, 343.0), -3.43e-4);
  for (double a : {2.0, -0.5, 4.0}) EXPECT_EQ(tdoa_to_range_diff(a * 1e-3, 343.0), a * tdoa_to_range_diff(1e-3, 343.0));
}

TEST(Measurement, Unreference) {
  EXPECT_EQ(unreference({1, 2, 3}, {0, 0, 0}), (Vec3{1, 2, 3}));
  EXPECT_EQ(unreference({1, 2, 3}, {-1, -2, -3}), (Vec3{0, 0, 0}));
  const Vec3 p{0.25, -4.5, 8.0}, o{1.0, 2.0, -3.0};
  EXPECT_EQ(unreference(p - o, o), p);
}

TEST(Measurement, TranslationInvariance) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    std::vector<Vec3> pts;
    for (int k = 0; k < 5; ++k) pts.push_back(test::uniform_box(rng, 0.5));
    const Vec3 src = test::uniform_box(rng, 2.0);
    const Vec3 shift = test::uniform_box(rng, 100.0);
    const RangeDifferences d0 = range_differences(Scenario(SensorArray(pts), src));
    const RangeDifferences d1 =
        range_differences(Scenario(SensorArray(test::transform(pts, Mat3::identity(), shift)), src + shift));
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_LT(std::abs(d0.values()[k] - d1.values()[k]), 1e-12 * std::max(1.0, std::abs(d0.values()[k])));
    }
  }
}

TEST(Measurement, TriangleInequality) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 500; ++i) {
    std::vector<Vec3> pts;
    for (int k = 0; k < 4; ++k) pts.push_back(test::uniform_box(rng, 0.5));
    const Scenario sc(SensorArray(pts), test::uniform_box(rng, 3.0));
    const RangeDifferences d = range_differences(sc);
    const ReferencedArray rel = reference_frame(sc.sensors);
    for (std::size_t k = 1; k < 4; ++k) EXPECT_LE(std::abs(d.of_sensor(k)), norm(rel.rel[k]) * (1 + 1e-15));
    EXPECT_NO_THROW(check_consistent(rel, d));
  }
}

TEST(Measurement, ConsistencyCheckRejectsImpossibleDelta) {
  const ReferencedArray rel = reference_frame(SensorArray(test::kCanonicalFour));
  EXPECT_THROW(check_consistent(rel, RangeDifferences({1.5, 0.0, 0.0})), Error);
  EXPECT_THROW(check_consistent(rel, RangeDifferences({0.0, 0.0, 0.0, 0.0})), Error);
}

TEST(Measurement, ScenarioRejectsSourceOnSensor) {
  EXPECT_THROW(Scenario(SensorArray(test::kCanonicalFour), {1, 0, 0}), Error);
}

}  // namespace
}  // namespace tdoa
