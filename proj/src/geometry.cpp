#include "vcsample/geometry.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "vcsample/errors.hpp"

namespace vcsample {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ParameterError(std::string(what) + " must be finite");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<double> parse_numbers(std::string_view text, const char* what) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view field = trim(text.substr(0, comma));
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
      throw ParameterError(std::string("malformed number in ") + what + ": '" + std::string(field) + "'");
    }
    require_finite(v, what);
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

GroundSet::GroundSet(int dim, std::vector<double> xs, std::vector<double> ys)
    : dim_(dim), xs_(std::move(xs)), ys_(std::move(ys)) {
  if (dim_ != 1 && dim_ != 2) throw ParameterError("ground set dimension must be 1 or 2");
  if (xs_.empty()) throw ParameterError("ground set must be non-empty");
  if (dim_ == 1) {
    if (!ys_.empty() && ys_.size() != xs_.size()) throw ParameterError("coordinate columns differ in length");
    ys_.assign(xs_.size(), 0.0);
  } else if (ys_.size() != xs_.size()) {
    throw ParameterError("coordinate columns differ in length");
  }
  for (double v : xs_) require_finite(v, "coordinate");
  for (double v : ys_) require_finite(v, "coordinate");
}

GroundSet GroundSet::from_points(std::span<const Point> points) {
  if (points.empty()) throw ParameterError("ground set must be non-empty");
  const int dim = points.front().dim;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const Point& p : points) {
    if (p.dim != dim) throw ParameterError("all points must share one dimension");
    xs.push_back(p.x());
    ys.push_back(dim == 2 ? p.y() : 0.0);
  }
  return GroundSet(dim, std::move(xs), std::move(ys));
}

GroundSet GroundSet::select(std::span<const std::size_t> indices) const {
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(indices.size());
  ys.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= size()) throw ParameterError("point index out of range");
    xs.push_back(xs_[i]);
    ys.push_back(ys_[i]);
  }
  return GroundSet(dim_, std::move(xs), std::move(ys));
}

std::string_view to_string(RangeKind kind) {
  switch (kind) {
    case RangeKind::intervals: return "intervals";
    case RangeKind::halfplanes: return "halfplanes";
    case RangeKind::rectangles: return "rectangles";
    case RangeKind::disks: return "disks";
  }
  return "?";
}

RangeKind parse_range_kind(std::string_view name) {
  if (name == "intervals") return RangeKind::intervals;
  if (name == "halfplanes") return RangeKind::halfplanes;
  if (name == "rectangles") return RangeKind::rectangles;
  if (name == "disks") return RangeKind::disks;
  throw ParameterError("unknown range family '" + std::string(name) + "'");
}

int RangeFamily::vc_dimension() const {
  switch (kind_) {
    case RangeKind::intervals: return 2;
    case RangeKind::halfplanes: return 3;
    case RangeKind::rectangles: return 4;
    case RangeKind::disks: return 3;
  }
  return 0;
}

RangeKind kind_of(const RangeParams& params) {
  return static_cast<RangeKind>(params.index());
}

bool contains(const RangeFamily& family, const RangeParams& params, const Point& p) {
  if (kind_of(params) != family.kind()) throw ParameterError("witness does not match the range family");
  if (p.dim != family.point_dimension()) throw ParameterError("point dimension does not match the range family");
  return std::visit(
      [&](const auto& w) -> bool {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, Interval>) {
          return w.lo <= p.x() && p.x() <= w.hi;
        } else if constexpr (std::is_same_v<W, Halfplane>) {
          return w.a * p.x() + w.b * p.y() <= w.c;
        } else if constexpr (std::is_same_v<W, Rectangle>) {
          return w.x_lo <= p.x() && p.x() <= w.x_hi && w.y_lo <= p.y() && p.y() <= w.y_hi;
        } else {
          const double dx = p.x() - w.cx;
          const double dy = p.y() - w.cy;
          return dx * dx + dy * dy <= w.r * w.r;
        }
      },
      params);
}

RangeParams parse_range_params(RangeKind kind, std::string_view text) {
  const std::vector<double> v = parse_numbers(text, "range parameters");
  auto need = [&](std::size_t count) {
    if (v.size() != count) {
      throw ParameterError(std::string(to_string(kind)) + " range needs " + std::to_string(count) + " numbers");
    }
  };
  switch (kind) {
    case RangeKind::intervals: need(2); return Interval{v[0], v[1]};
    case RangeKind::halfplanes: need(3); return Halfplane{v[0], v[1], v[2]};
    case RangeKind::rectangles: need(4); return Rectangle{v[0], v[1], v[2], v[3]};
    case RangeKind::disks:
      need(3);
      if (v[2] < 0.0) throw ParameterError("disk radius must be non-negative");
      return Disk{v[0], v[1], v[2]};
  }
  throw ParameterError("unknown range family");
}

GroundSet read_points_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("points file is empty");
  const std::string_view header = trim(line);
  int dim = 0;
  if (header == "x") dim = 1;
  else if (header == "x,y") dim = 2;
  else throw ParameterError("points header must be 'x' or 'x,y'");

  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<double> v = parse_numbers(line, "points file");
    if (static_cast<int>(v.size()) != dim) {
      throw ParameterError("row " + std::to_string(row) + " has " + std::to_string(v.size()) + " fields");
    }
    xs.push_back(v[0]);
    if (dim == 2) ys.push_back(v[1]);
  }
  return GroundSet(dim, std::move(xs), std::move(ys));
}

GroundSet read_points_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open points file " + path);
  return read_points_csv(in);
}

void write_points_csv(std::ostream& out, const GroundSet& points) {
  out << (points.dim() == 1 ? "x\n" : "x,y\n");
  char buf[64];
  auto put = [&](double v) {
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, res.ptr - buf);
  };
  for (std::size_t i = 0; i < points.size(); ++i) {
    put(points.xs()[i]);
    if (points.dim() == 2) {
      out << ',';
      put(points.ys()[i]);
    }
    out << '\n';
  }
}

}  // namespace vcsample
