#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vcsample {

struct Point {
  std::array<double, 2> coords{0.0, 0.0};
  int dim = 1;

  static Point on_line(double x) { return Point{{x, 0.0}, 1}; }
  static Point in_plane(double x, double y) { return Point{{x, y}, 2}; }

  double x() const { return coords[0]; }
  double y() const { return coords[1]; }
};

// Finite point multiset X in R^1 or R^2, stored column-wise so kernels can
// stream the coordinates. For dim == 1 the y column is all zeros.
class GroundSet {
 public:
  GroundSet(int dim, std::vector<double> xs, std::vector<double> ys = {});

  static GroundSet from_points(std::span<const Point> points);

  int dim() const { return dim_; }
  std::size_t size() const { return xs_.size(); }
  std::span<const double> xs() const { return xs_; }
  std::span<const double> ys() const { return ys_; }
  Point point(std::size_t i) const { return Point{{xs_[i], ys_[i]}, dim_}; }

  // Same coordinate columns restricted to the given indices (with repetition).
  GroundSet select(std::span<const std::size_t> indices) const;

 private:
  int dim_;
  std::vector<double> xs_;
  std::vector<double> ys_;
};

enum class RangeKind { intervals, halfplanes, rectangles, disks };

std::string_view to_string(RangeKind kind);
RangeKind parse_range_kind(std::string_view name);

// A geometric range family together with its VC dimension.
class RangeFamily {
 public:
  explicit RangeFamily(RangeKind kind) : kind_(kind) {}

  RangeKind kind() const { return kind_; }
  int vc_dimension() const;
  int point_dimension() const { return kind_ == RangeKind::intervals ? 1 : 2; }

  friend bool operator==(const RangeFamily&, const RangeFamily&) = default;

 private:
  RangeKind kind_;
};

// Closed interval lo <= x <= hi.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Closed halfplane a*x + b*y <= c.
struct Halfplane {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  friend bool operator==(const Halfplane&, const Halfplane&) = default;
};

// Closed axis-parallel rectangle [x_lo, x_hi] x [y_lo, y_hi].
struct Rectangle {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

// Closed disk (x-cx)^2 + (y-cy)^2 <= r^2.
struct Disk {
  double cx = 0.0;
  double cy = 0.0;
  double r = 0.0;
  friend bool operator==(const Disk&, const Disk&) = default;
};

using RangeParams = std::variant<Interval, Halfplane, Rectangle, Disk>;

RangeKind kind_of(const RangeParams& params);

// Membership predicate. Throws ParameterError when the witness type or the
// point dimension does not match the family.
bool contains(const RangeFamily& family, const RangeParams& params, const Point& p);

// Parses "lo,hi" / "a,b,c" / "x_lo,x_hi,y_lo,y_hi" / "cx,cy,r".
RangeParams parse_range_params(RangeKind kind, std::string_view text);

// Points CSV with header `x` or `x,y`.
GroundSet read_points_csv(std::istream& in);
GroundSet read_points_csv_file(const std::string& path);
void write_points_csv(std::ostream& out, const GroundSet& points);

}  // namespace vcsample
