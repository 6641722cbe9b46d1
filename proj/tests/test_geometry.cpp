#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "vcsample/errors.hpp"
#include "vcsample/geometry.hpp"

using namespace vcsample;

TEST(Geometry, ContainsClosedRanges) {
  const RangeFamily line(RangeKind::intervals);
  EXPECT_TRUE(contains(line, Interval{2, 5}, Point::on_line(3)));
  EXPECT_TRUE(contains(line, Interval{2, 5}, Point::on_line(5)));
  EXPECT_FALSE(contains(line, Interval{2, 5}, Point::on_line(5.0001)));

  const RangeFamily half(RangeKind::halfplanes);
  EXPECT_FALSE(contains(half, Halfplane{0, 1, 0}, Point::in_plane(1, 1)));  // y <= 0
  EXPECT_TRUE(contains(half, Halfplane{0, 1, 0}, Point::in_plane(1, 0)));

  EXPECT_TRUE(contains(RangeFamily(RangeKind::rectangles), Rectangle{0, 1, 0, 1}, Point::in_plane(1, 0)));
  EXPECT_TRUE(contains(RangeFamily(RangeKind::disks), Disk{0, 0, 5}, Point::in_plane(3, 4)));
  EXPECT_FALSE(contains(RangeFamily(RangeKind::disks), Disk{0, 0, 5}, Point::in_plane(3, 4.01)));
}

TEST(Geometry, ContainsRejectsMismatch) {
  EXPECT_THROW(contains(RangeFamily(RangeKind::intervals), Disk{0, 0, 1}, Point::on_line(0)), ParameterError);
  EXPECT_THROW(contains(RangeFamily(RangeKind::disks), Disk{0, 0, 1}, Point::on_line(0)), ParameterError);
}

TEST(Geometry, VcDimensions) {
  EXPECT_EQ(RangeFamily(RangeKind::intervals).vc_dimension(), 2);
  EXPECT_EQ(RangeFamily(RangeKind::halfplanes).vc_dimension(), 3);
  EXPECT_EQ(RangeFamily(RangeKind::rectangles).vc_dimension(), 4);
  EXPECT_EQ(RangeFamily(RangeKind::disks).vc_dimension(), 3);
}

TEST(Geometry, ParseNames) {
  EXPECT_EQ(parse_range_kind("halfplanes"), RangeKind::halfplanes);
  EXPECT_THROW(parse_range_kind("triangles"), ParameterError);
  const auto r = parse_range_params(RangeKind::rectangles, "0,1,0.5,2");
  EXPECT_TRUE(r == RangeParams(Rectangle{0, 1, 0.5, 2}));
  EXPECT_THROW(parse_range_params(RangeKind::intervals, "1"), ParameterError);
  EXPECT_THROW(parse_range_params(RangeKind::disks, "0,0,-1"), ParameterError);
  EXPECT_THROW(parse_range_params(RangeKind::intervals, "1,abc"), ParameterError);
}

TEST(Geometry, CsvRoundTrip) {
  std::istringstream in("x,y\n0.1,0.2\n0.30000000000000004,1e-5\n");
  const GroundSet g = read_points_csv(in);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g.dim(), 2);
  std::ostringstream out;
  write_points_csv(out, g);
  std::istringstream back(out.str());
  const GroundSet h = read_points_csv(back);
  EXPECT_EQ(h.ys()[1], 1e-5);
  EXPECT_EQ(h.xs()[1], 0.30000000000000004);
}

TEST(Geometry, CsvErrors) {
  std::istringstream bad_header("a,b\n1,2\n");
  EXPECT_THROW(read_points_csv(bad_header), ParameterError);
  std::istringstream ragged("x\n1,2\n");
  EXPECT_THROW(read_points_csv(ragged), ParameterError);
  std::istringstream empty("x\n");
  EXPECT_THROW(read_points_csv(empty), ParameterError);
  EXPECT_THROW(read_points_csv_file("/nonexistent/points.csv"), ParameterError);
  EXPECT_THROW(GroundSet(1, {std::nan("")}), ParameterError);
}

TEST(Geometry, Select) {
  const GroundSet g(1, {0.5, 0.1, 0.9});
  const std::vector<std::size_t> idx{2, 2, 0};
  const GroundSet s = g.select(idx);
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.xs()[0], 0.9);
  EXPECT_EQ(s.xs()[2], 0.5);
}
