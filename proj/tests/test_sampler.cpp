#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include <conewalk/exact_engine.hpp>
#include <conewalk/sampler.hpp>

using namespace conewalk;

namespace {

std::vector<int> every_step(int n) {
  std::vector<int> s;
  for (int k = 1; k <= n; ++k) s.push_back(k);
  return s;
}

void expect_all_inside(const PathEnsemble& ens, const Cone& cone, double sigma) {
  for (const NormalizedPath& p : ens.paths) {
    const double scale = sigma * std::sqrt(static_cast<double>(p.n));
    ASSERT_EQ(p.grid.size(), static_cast<std::size_t>(p.n) + 1);
    EXPECT_EQ(p.grid.front().norm(), 0.0);
    for (const Point& w : p.grid) EXPECT_TRUE(cone.contains(scale * w));
  }
}

bool same_paths(const PathEnsemble& a, const PathEnsemble& b) {
  if (a.paths.size() != b.paths.size()) return false;
  for (std::size_t i = 0; i < a.paths.size(); ++i)
    if (a.paths[i].grid != b.paths[i].grid) return false;
  return true;
}

}  // namespace

TEST(Rejection, AgreesWithExactTail) {
  const double exact = exact_tail(srw2d(), Cone::quarter_plane(), 100).values[100];
  const PathEnsemble ens = rejection_sample(srw2d(), Cone::quarter_plane(), 100, 3000, {5, 1});
  EXPECT_EQ(ens.paths.size(), 3000u);
  EXPECT_LT(std::abs(ens.tail_estimate - exact), 3 * ens.tail_stderr);
  expect_all_inside(ens, Cone::quarter_plane(), srw2d().sigma());
}

TEST(Rejection, OneStepEndpoints) {
  const PathEnsemble ens = rejection_sample(srw2d(), Cone::quarter_plane(), 1, 4000, {9, 1});
  int right = 0;
  for (const NormalizedPath& p : ens.paths) {
    const Point e = p.endpoint();
    ASSERT_TRUE((e[0] > 0 && e[1] == 0) || (e[0] == 0 && e[1] > 0));
    right += e[0] > 0;
  }
  const double f = right / 4000.0;
  EXPECT_LT(std::abs(f - 0.5), 3 * std::sqrt(0.25 / 4000));
}

TEST(Rejection, ScaledWalkGivesSameNormalizedPaths) {
  const StepDistribution doubled = StepDistribution::lattice(
      {{LatticePoint{2, 0}, 0.25}, {LatticePoint{-2, 0}, 0.25}, {LatticePoint{0, 2}, 0.25}, {LatticePoint{0, -2}, 0.25}});
  const StepDistribution base = StepDistribution::lattice(
      {{LatticePoint{1, 0}, 0.25}, {LatticePoint{-1, 0}, 0.25}, {LatticePoint{0, 1}, 0.25}, {LatticePoint{0, -1}, 0.25}});
  const PathEnsemble a = rejection_sample(base, Cone::octant(), 30, 200, {3, 1});
  const PathEnsemble b = rejection_sample(doubled, Cone::octant(), 30, 200, {3, 1});
  ASSERT_EQ(a.paths.size(), b.paths.size());
  for (std::size_t i = 0; i < a.paths.size(); ++i)
    for (int k = 0; k <= 30; ++k)
      for (int d = 0; d < 2; ++d) EXPECT_NEAR(a.paths[i].grid[k][d], b.paths[i].grid[k][d], 1e-15);
}

TEST(Rejection, RefusesBelowAcceptanceFloor) {
  try {
    rejection_sample(srw3d(), Cone::degenerate_axis_cone(), 20, 10, {1, 1});
    FAIL() << "expected AcceptanceFloorError";
  } catch (const AcceptanceFloorError& e) {
    EXPECT_LT(e.estimate(), kAcceptanceFloor);
  }
}

TEST(Rejection, ContinuousWalk) {
  const PathEnsemble ens = rejection_sample(StepDistribution::uniform_disk(1.0), Cone::quarter_plane(), 20, 300, {2, 1});
  expect_all_inside(ens, Cone::quarter_plane(), 1.0);
}

TEST(Splitting, DefaultSchedule) {
  EXPECT_EQ(default_schedule(8), (std::vector<int>{3, 6, 8}));
  EXPECT_EQ(default_schedule(1), (std::vector<int>{1}));
  const auto s = default_schedule(200);
  EXPECT_EQ(s.size(), 8u);
  EXPECT_EQ(s.back(), 200);
  const auto c = default_schedule(200, 2.0);
  EXPECT_LT(c.front(), s.front());
}

TEST(Splitting, RejectsBadInput) {
  EXPECT_THROW(splitting_sample(srw2d(), Cone::quarter_plane(), 10, 50, {10}, {}), std::invalid_argument);
  EXPECT_THROW(splitting_sample(srw2d(), Cone::quarter_plane(), 10, 100, {5, 5, 10}, {}), std::invalid_argument);
  EXPECT_THROW(splitting_sample(srw2d(), Cone::quarter_plane(), 10, 100, {5, 9}, {}), std::invalid_argument);
}

TEST(Splitting, AxisConeMatchesGeometricTail) {
  const PathEnsemble ens = splitting_sample(srw3d(), Cone::degenerate_axis_cone(), 20, 2000, every_step(20), {4, 1});
  const double exact = std::pow(3.0, -20);
  EXPECT_LT(std::abs(ens.tail_estimate - exact), 3 * ens.tail_stderr);
  expect_all_inside(ens, Cone::degenerate_axis_cone(), srw3d().sigma());
}

TEST(Splitting, OctantAgainstTruncatedBracket) {
  ExactOptions o;
  o.truncation = 1e-16;
  const TailSeries t = exact_tail(srw2d(), Cone::octant(), 200, o);
  const PathEnsemble ens = splitting_sample(srw2d(), Cone::octant(), 200, 3000, default_schedule(200), {8, 1});
  const double gap = std::max({0.0, t.lower(200) - ens.tail_estimate, ens.tail_estimate - t.upper(200)});
  EXPECT_LT(gap, 3 * ens.tail_stderr);
  EXPECT_GT(ens.effective_sample_size, 0.0);
  EXPECT_LE(ens.effective_sample_size, static_cast<double>(ens.paths.size()));
}

TEST(Splitting, SingleLevelIsRejection) {
  const double exact = exact_tail(srw2d(), Cone::quarter_plane(), 50).values[50];
  const PathEnsemble ens = splitting_sample(srw2d(), Cone::quarter_plane(), 50, 20000, {50}, {6, 1});
  ASSERT_EQ(ens.level_fractions.size(), 1u);
  EXPECT_DOUBLE_EQ(ens.tail_estimate, ens.level_fractions[0]);
  EXPECT_NEAR(ens.tail_stderr, std::sqrt(ens.tail_estimate * (1 - ens.tail_estimate) / 20000), 1e-15);
  EXPECT_LT(std::abs(ens.tail_estimate - exact), 3 * ens.tail_stderr);
}

TEST(Splitting, Extinction) {
  try {
    splitting_sample(srw3d(), Cone::degenerate_axis_cone(), 40, 100, {40}, {1, 1});
    FAIL() << "expected ExtinctionError";
  } catch (const ExtinctionError& e) {
    EXPECT_EQ(e.level(), 0);
    EXPECT_EQ(e.checkpoint(), 40);
  }
}

TEST(Estimators, AgreeOnQuarterPlane) {
  const TailSeries t = exact_tail(srw2d(), Cone::quarter_plane(), 200);
  for (int n : {50, 100, 200}) {
    const PathEnsemble r = rejection_sample(srw2d(), Cone::quarter_plane(), n, 1500, {21, 1});
    const PathEnsemble s = splitting_sample(srw2d(), Cone::quarter_plane(), n, 3000, default_schedule(n), {22, 1});
    const double combined = std::hypot(r.tail_stderr, s.tail_stderr);
    EXPECT_LT(std::abs(r.tail_estimate - s.tail_estimate), 3 * combined) << n;
    EXPECT_LT(std::abs(r.tail_estimate - t.values[n]), 3 * r.tail_stderr) << n;
    EXPECT_LT(std::abs(s.tail_estimate - t.values[n]), 3 * s.tail_stderr) << n;
  }
}

TEST(Determinism, ThreadCountDoesNotMatter) {
  const PathEnsemble r1 = rejection_sample(srw2d(), Cone::octant(), 60, 500, {77, 1});
  const PathEnsemble r4 = rejection_sample(srw2d(), Cone::octant(), 60, 500, {77, 4});
  EXPECT_TRUE(same_paths(r1, r4));
  EXPECT_EQ(r1.attempts, r4.attempts);
  const PathEnsemble s1 = splitting_sample(srw2d(), Cone::octant(), 60, 500, default_schedule(60), {77, 1});
  const PathEnsemble s4 = splitting_sample(srw2d(), Cone::octant(), 60, 500, default_schedule(60), {77, 4});
  EXPECT_TRUE(same_paths(s1, s4));
  EXPECT_EQ(s1.tail_estimate, s4.tail_estimate);
  const PathEnsemble other = rejection_sample(srw2d(), Cone::octant(), 60, 500, {78, 1});
  EXPECT_FALSE(same_paths(r1, other));
}

TEST(PathFunctionals, Basics) {
  const PathEnsemble ens = rejection_sample(srw2d(), Cone::quarter_plane(), 40, 200, {3, 1});
  const auto f = path_functionals(ens, Cone::quarter_plane(), 0.05);
  ASSERT_EQ(f.size(), ens.paths.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_EQ(f[i].endpoint, ens.paths[i].endpoint());
    EXPECT_GE(f[i].sup_norm, f[i].endpoint.norm());
    EXPECT_GE(f[i].boundary_fraction, 0.0);
    EXPECT_LE(f[i].boundary_fraction, 1.0);
  }
  const PathEnsemble axis = splitting_sample(srw3d(), Cone::degenerate_axis_cone(), 15, 300, every_step(15), {3, 1});
  for (const auto& g : path_functionals(axis, Cone::degenerate_axis_cone(), 0.0)) EXPECT_EQ(g.boundary_fraction, 1.0);
}

TEST(NormalizedPath, Interpolation) {
  NormalizedPath p;
  p.n = 2;
  p.grid = {Point{0, 0}, Point{1, 0}, Point{1, 1}};
  EXPECT_EQ(p.at(0.0), (Point{0, 0}));
  EXPECT_EQ(p.at(0.25), (Point{0.5, 0}));
  EXPECT_EQ(p.at(1.0), (Point{1, 1}));
}
