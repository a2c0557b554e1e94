#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tdoa/error.hpp"
#include "tdoa/montecarlo.hpp"
#include "tdoa/solver4.hpp"
#include "test_support.hpp"

namespace tdoa {
namespace {

RangeDifferences canonical_deltas() {
  return range_differences(Scenario(SensorArray(test::kCanonicalFour), test::kCanonicalSource));
}

FourSensorSystem system_from(const Vec3& xi, const Vec3& eta) {
  FourSensorSystem sys;
  sys.xi = xi;
  sys.eta = eta;
  return sys;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidInput;
}

TEST(Solver4, UnitAxisSensorsGiveDiagonalSystem) {
  const RangeDifferences d = canonical_deltas();
  const FourSensorSystem sys = build_system_4(reference_frame(SensorArray(test::kCanonicalFour)), d);
  EXPECT_EQ(sys.C, Mat3::diag(-2, -2, -2));
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(sys.xi[i], -sys.z[i] / 2);
    EXPECT_EQ(sys.eta[i], -sys.y[i] / 2);
  }
}

TEST(Solver4, CanonicalSystemMatchesOracle) {
  // tests/oracles/canonical.py
  const Vec3 xi{0.28614529354171920122, 0.48618532156814783486, 0.69474904731107447669};
  const Vec3 eta{-0.4590604354919616758, -0.38181191654583834187, -0.25866188063017719923};
  const FourSensorSystem sys = build_system_4(reference_frame(SensorArray(test::kCanonicalFour)), canonical_deltas());
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(sys.xi[i], xi[i], 1e-15);
    EXPECT_NEAR(sys.eta[i], eta[i], 1e-15);
  }
  EXPECT_LT(test::rel_error(sys.C * sys.xi, sys.z), 1e-10);
  EXPECT_LT(test::rel_error(sys.C * sys.eta, sys.y), 1e-10);

  const QuadraticRoots q = solve_rho1(sys, 1.0);
  EXPECT_NEAR(q.a, -0.1990684653359544338, 1e-14);
  EXPECT_NEAR(q.b_half, -0.49669442763513254222, 1e-14);
  EXPECT_NEAR(q.c_coef, 0.42342279154161576817, 1e-14);
  // The other root, -0.39497787..., is negative and dropped.
  ASSERT_EQ(q.roots.size(), 1u);
  EXPECT_NEAR(q.roots[0], std::sqrt(29.0), 1e-13);
  EXPECT_FALSE(q.linear_fallback);
}

TEST(Solver4, CoplanarSensorsAreSingular) {
  const SensorArray flat({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
  EXPECT_EQ(code_of([&] { build_system_4(reference_frame(flat), RangeDifferences({0.1, 0.1, 0.1})); }),
            ErrorCode::SingularMatrix);
}

TEST(Solver4, ZeroEtaGivesZeroRootOnly) {
  const QuadraticRoots q = solve_rho1(system_from({1, 1, 0}, {0, 0, 0}), 1.0);
  EXPECT_EQ(q.c_coef, 0.0);
  ASSERT_EQ(q.roots.size(), 1u);
  EXPECT_EQ(q.roots[0], 0.0);
}

TEST(Solver4, LinearFallback) {
  // |xi| = 1: a = 0, so 2 * b_half * rho = c_coef.
  const QuadraticRoots q = solve_rho1(system_from({1, 0, 0}, {2, 1, 0}), 1.0);
  EXPECT_TRUE(q.linear_fallback);
  ASSERT_EQ(q.roots.size(), 1u);
  EXPECT_DOUBLE_EQ(q.roots[0], 5.0 / 4.0);

  EXPECT_EQ(code_of([] { solve_rho1(system_from({1, 0, 0}, {0, 1, 0}), 1.0); }), ErrorCode::DegenerateLinear);
}

TEST(Solver4, NegativeDiscriminant) {
  // a = 3, b_half = 0, c = 1.
  EXPECT_EQ(code_of([] { solve_rho1(system_from({2, 0, 0}, {0, 1, 0}), 1.0); }), ErrorCode::NoRealSolution);
}

TEST(Solver4, NearTangencyIsClamped) {
  // a = 3, b_half = 2, c = 1 + t^2 with 1 - 3 t^2 = -1e-12.
  const QuadraticRoots q = solve_rho1(system_from({2, 0, 0}, {1, std::sqrt((1 + 1e-12) / 3), 0}), 1.0);
  EXPECT_EQ(q.discriminant, 0.0);
  ASSERT_EQ(q.roots.size(), 1u);
  EXPECT_NEAR(q.roots[0], 2.0 / 3.0, 1e-12);
}

TEST(Solver4, SlightlyNegativeRootClampedToZero) {
  // Roots 1 and -1e-8 with a = -1e-8; with a 1e6 baseline the negative root
  // is inside the clamp band, with a unit baseline it is discarded.
  const double a = -1e-8, eps = 1e-8, big = 1.0;
  const double b = a * (big - eps) / 2.0;
  const double c = -a * big * eps;
  const double xi_x = std::sqrt(1.0 + a);
  const double eta_x = b / xi_x;
  const FourSensorSystem sys = system_from({xi_x, 0, 0}, {eta_x, std::sqrt(c - eta_x * eta_x), 0});

  const QuadraticRoots wide = solve_rho1(sys, 1e6);
  ASSERT_EQ(wide.roots.size(), 2u);
  EXPECT_EQ(wide.roots[0], 0.0);
  EXPECT_NEAR(wide.roots[1], 1.0, 1e-6);

  const QuadraticRoots narrow = solve_rho1(sys, 1.0);
  ASSERT_EQ(narrow.roots.size(), 1u);
  EXPECT_NEAR(narrow.roots[0], 1.0, 1e-6);
}

TEST(Solver4, CandidatePositions) {
  const Vec3 origin{1, -2, 0.5};
  const FourSensorSystem sys = system_from({0.1, 0.2, 0.3}, {0.4, -0.5, 0.6});
  QuadraticRoots zero;
  zero.roots = {0.0};
  EXPECT_EQ(candidate_positions(sys, zero, origin)[0].position, -sys.eta + origin);

  const ReferencedArray rel = reference_frame(SensorArray(test::kCanonicalFour));
  const FourSensorSystem canon = build_system_4(rel, canonical_deltas());
  const auto cands = candidate_positions(canon, solve_rho1(canon, 1.0), rel.origin);
  ASSERT_EQ(cands.size(), 1u);
  EXPECT_LT(test::rel_error(cands[0].position, test::kCanonicalSource), 1e-12);
  EXPECT_NEAR(norm(cands[0].position - rel.origin), cands[0].rho1, 1e-8 * cands[0].rho1);
}

TEST(Solver4, ResolveSingleCandidate) {
  const ReferencedArray rel = reference_frame(SensorArray(test::kCanonicalFour));
  const std::vector<CandidatePosition> one{{std::sqrt(29.0), test::kCanonicalSource}};
  const LocalizationResult r = resolve_ambiguity(one, rel, canonical_deltas());
  EXPECT_EQ(r.resolved_by, AmbiguityResolution::SingleRoot);
  EXPECT_EQ(r.position, test::kCanonicalSource);
  EXPECT_FALSE(r.ambiguous);
}

TEST(Solver4, ResolveEmptyList) {
  const ReferencedArray rel = reference_frame(SensorArray(test::kCanonicalFour));
  EXPECT_EQ(code_of([&] { resolve_ambiguity({}, rel, canonical_deltas()); }), ErrorCode::NoCandidates);
}

TEST(Solver4, ResolveTieKeepsFirstAndFlags) {
  const ReferencedArray rel = reference_frame(SensorArray(test::kCanonicalFour));
  const std::vector<CandidatePosition> twins{{1.0, {5, 5, 5}}, {2.0, {5, 5, 5}}};
  const LocalizationResult r = resolve_ambiguity(twins, rel, canonical_deltas());
  EXPECT_EQ(r.selected, 0u);
  EXPECT_TRUE(r.ambiguous);
  EXPECT_EQ(r.resolved_by, AmbiguityResolution::Residual);
  EXPECT_EQ(r.candidates.size(), 2u);
}

TEST(Solver4, ResidualPicksTruthOverWrongCandidate) {
  // Truth listed second so the pick cannot come from the tie-break order.
  const ReferencedArray rel = reference_frame(SensorArray(test::kCanonicalFour));
  const std::vector<CandidatePosition> cands{{norm(Vec3{-1, 2, 0.5}), {-1, 2, 0.5}},
                                             {std::sqrt(29.0), test::kCanonicalSource}};
  const LocalizationResult r = resolve_ambiguity(cands, rel, canonical_deltas());
  EXPECT_EQ(r.selected, 1u);
  EXPECT_FALSE(r.ambiguous);
  EXPECT_LT(r.candidates[1].residual, 1e-28);
  EXPECT_GT(r.candidates[0].residual, 1e-3);
}

TEST(Solver4, NoiseFreeDualRootsAreBothExact) {
  // With consistent range differences, |r_k - r_S| = |rho1 + d_k| for every
  // candidate and |d_k| <= |r_k| rules out rho1 + d_k < 0, so a second
  // nonnegative root is a genuine solution: both residuals vanish and the
  // result is flagged ambiguous.
  std::mt19937_64 rng(77);
  int found = 0;
  for (int i = 0; i < 5000 && found < 50; ++i) {
    std::vector<Vec3> pts;
    for (int k = 0; k < 4; ++k) pts.push_back(test::uniform_box(rng, 0.5));
    const Vec3 src = test::uniform_box(rng, 0.5);
    const RangeDifferences d(test::oracle_deltas(pts, src));
    LocalizationResult r;
    try {
      r = solve_4(SensorArray(pts), d);
    } catch (const Error&) {
      continue;
    }
    if (r.candidates.size() != 2) continue;
    ++found;
    EXPECT_TRUE(r.ambiguous);
    EXPECT_EQ(r.selected, 0u);
    for (const Candidate& c : r.candidates) EXPECT_LT(c.residual, 1e-10 * d.sum_of_squares());
  }
  EXPECT_EQ(found, 50);
}

TEST(Solver4, TwoPositiveRootsSatisfyQuadratic) {
  std::mt19937_64 rng(78);
  int found = 0;
  for (int i = 0; i < 5000 && found < 100; ++i) {
    std::vector<Vec3> pts;
    for (int k = 0; k < 4; ++k) pts.push_back(test::uniform_box(rng, 0.5));
    const Vec3 src = test::uniform_box(rng, 0.5);
    const SensorArray arr(pts);
    const ReferencedArray rel = reference_frame(arr);
    FourSensorSystem sys;
    try {
      sys = build_system_4(rel, RangeDifferences(test::oracle_deltas(pts, src)));
    } catch (const Error&) {
      continue;
    }
    const QuadraticRoots q = solve_rho1(sys, arr.max_baseline());
    if (q.roots.size() != 2 || q.roots[0] <= 0.0) continue;
    ++found;
    for (double rho : q.roots) {
      const double scale = std::max(std::abs(q.a) * rho * rho, q.c_coef);
      EXPECT_LT(std::abs(q.a * rho * rho - 2 * q.b_half * rho + q.c_coef), 1e-8 * scale);
    }
  }
  EXPECT_EQ(found, 100);
}

TEST(Solver4, CanonicalRoundTrip) {
  const LocalizationResult r = solve_4(SensorArray(test::kCanonicalFour), canonical_deltas());
  EXPECT_LT(test::rel_error(r.position, test::kCanonicalSource), 1e-9);
  EXPECT_EQ(r.method, Method::FourSensor);
  EXPECT_EQ(r.resolved_by, AmbiguityResolution::SingleRoot);
}

TEST(Solver4, CollinearSensorsAreSingular) {
  const std::vector<Vec3> line{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {-1, -1, -1}};
  const SensorArray arr(line);
  EXPECT_EQ(code_of([&] { solve_4(arr, range_differences(Scenario(arr, {0.3, 2.0, -1.0}))); }),
            ErrorCode::SingularMatrix);
}

}  // namespace
}  // namespace tdoa
