#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <gtest/gtest.h>

#include <conewalk/spec_parse.hpp>

using namespace conewalk;

TEST(ParseCone, Wedge) {
  const Cone c = parse_cone("wedge:beta=1.5707963267948966");
  ASSERT_TRUE(c.is_wedge());
  EXPECT_DOUBLE_EQ(c.as_wedge().beta, std::numbers::pi / 2);
  EXPECT_EQ(c.as_wedge().rotation, 0.0);
  const Cone r = parse_cone("wedge:beta=0.5,rot=0.25,eps=1e-3");
  EXPECT_DOUBLE_EQ(r.as_wedge().rotation, 0.25);
  EXPECT_DOUBLE_EQ(r.tolerance(), 1e-3);
  EXPECT_EQ(parse_cone(c.describe()).describe(), c.describe());
}

TEST(ParseCone, OtherShapes) {
  EXPECT_EQ(parse_cone("halfline").dimension(), 1);
  const Cone h = parse_cone("halfspaces:n1=1,0,0;n2=-1,2,0;n3=2,-1,0");
  EXPECT_EQ(h.dimension(), 3);
  EXPECT_EQ(h.constraint_count(), 3u);
  EXPECT_TRUE(h.contains(Point{0, 0, 5}));
  EXPECT_EQ(parse_cone("halfspaces:n1=0,1").dimension(), 2);
}

TEST(ParseCone, Errors) {
  for (const char* bad : {"", "wedge", "wedge:rot=1", "wedge:beta=abc", "wedge:beta=1,deg=3", "wedge:beta=9",
                          "halfline:x=1", "halfspaces:", "halfspaces:n1=1,0;n2=1,0,0", "halfspaces:m1=1,0",
                          "circle"}) {
    EXPECT_THROW(parse_cone(bad), std::invalid_argument) << bad;
  }
}

TEST(ParseWalk, BuiltIns) {
  EXPECT_EQ(parse_walk("srw1d").dimension(), 1);
  EXPECT_EQ(parse_walk("srw2d").atoms().size(), 4u);
  EXPECT_EQ(parse_walk("srw3d").atoms().size(), 6u);
  EXPECT_DOUBLE_EQ(parse_walk("srw2d-2step").sigma2(), 1.0);
  EXPECT_DOUBLE_EQ(parse_walk("disk").sigma2(), 1.0);
  EXPECT_DOUBLE_EQ(parse_walk("disk:sigma2=0.25").sigma2(), 0.25);
  EXPECT_THROW(parse_walk("srw4d"), std::invalid_argument);
  EXPECT_THROW(parse_walk("disk:radius=2"), std::invalid_argument);
}

TEST(ParseWalk, LatticeJson) {
  const StepDistribution d = parse_lattice_json("[[[2,0],0.125],[[-2,0],0.125],[[0,2],0.125],[[0,-2],0.125],[[0,0],0.5]]");
  EXPECT_EQ(d.atoms().size(), 5u);
  EXPECT_DOUBLE_EQ(d.sigma2(), 1.0);
  EXPECT_EQ(parse_lattice_json(R"({"atoms": [[[1],0.5],[[-1],0.5]]})").dimension(), 1);
  EXPECT_THROW(parse_lattice_json("[[[1.5,0],0.5],[[-1.5,0],0.5]]"), std::invalid_argument);
  EXPECT_THROW(parse_lattice_json("[[[1,0],0.5]]"), std::invalid_argument);
  EXPECT_THROW(parse_lattice_json("{"), std::invalid_argument);
  EXPECT_THROW(parse_lattice_json("[]"), std::invalid_argument);
}

TEST(ParseWalk, LatticeFile) {
  const auto path = std::filesystem::temp_directory_path() / "conewalk_test_atoms.json";
  {
    std::ofstream f(path);
    f << "[[[1,0],0.25],[[-1,0],0.25],[[0,1],0.25],[[0,-1],0.25]]";
  }
  const StepDistribution d = parse_walk("lattice:@" + path.string());
  EXPECT_DOUBLE_EQ(d.sigma2(), 0.5);
  std::filesystem::remove(path);
  EXPECT_THROW(parse_walk("lattice:@" + path.string()), std::invalid_argument);
}
