// Brute-force reference implementations used to freeze expected values.
// They share no code with the library beyond GroundSet.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "vcsample/geometry.hpp"

namespace oracle {

using Subset = std::vector<std::size_t>;
using SubsetFamily = std::set<Subset>;

// Prefixes of `order` cut only between distinct keys.
inline void add_prefixes(const std::vector<std::pair<double, std::size_t>>& keyed, SubsetFamily& out) {
  auto sorted = keyed;
  std::sort(sorted.begin(), sorted.end());
  Subset current;
  out.insert(current);
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    current.push_back(sorted[k].second);
    if (k + 1 == sorted.size() || sorted[k + 1].first != sorted[k].first) {
      Subset s = current;
      std::sort(s.begin(), s.end());
      out.insert(std::move(s));
    }
  }
}

// Closed intervals [lo, hi] with endpoints at point coordinates.
inline SubsetFamily intervals(const vcsample::GroundSet& g) {
  SubsetFamily out{Subset{}};
  const auto xs = g.xs();
  for (double lo : xs)
    for (double hi : xs) {
      if (lo > hi) continue;
      Subset s;
      for (std::size_t i = 0; i < g.size(); ++i)
        if (xs[i] >= lo && xs[i] <= hi) s.push_back(i);
      out.insert(std::move(s));
    }
  return out;
}

// Axis-parallel boxes whose sides pass through point coordinates.
inline SubsetFamily rectangles(const vcsample::GroundSet& g) {
  SubsetFamily out{Subset{}};
  const auto xs = g.xs();
  const auto ys = g.ys();
  for (double x0 : xs)
    for (double x1 : xs) {
      if (x0 > x1) continue;
      for (double y0 : ys)
        for (double y1 : ys) {
          if (y0 > y1) continue;
          Subset s;
          for (std::size_t i = 0; i < g.size(); ++i)
            if (xs[i] >= x0 && xs[i] <= x1 && ys[i] >= y0 && ys[i] <= y1) s.push_back(i);
          out.insert(std::move(s));
        }
    }
  return out;
}

// Closed halfplanes: the prefix structure of the projections only changes
// at directions orthogonal to some p_i - p_j, so sweeping the critical
// directions and the midpoints between them sees every induced subset.
// Points must be in general position (no three collinear).
inline SubsetFamily halfplanes(const vcsample::GroundSet& g) {
  const auto xs = g.xs();
  const auto ys = g.ys();
  const std::size_t n = g.size();
  std::vector<double> angles;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dx = xs[j] - xs[i], dy = ys[j] - ys[i];
      if (dx == 0.0 && dy == 0.0) continue;
      angles.push_back(std::atan2(dx, -dy));  // normal of the segment
    }
  std::sort(angles.begin(), angles.end());
  std::vector<double> probes;
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const double next = k + 1 < angles.size() ? angles[k + 1] : angles[0] + two_pi;
    probes.push_back(0.5 * (angles[k] + next));
  }
  if (probes.empty()) probes.push_back(0.0);

  SubsetFamily out;
  for (double t : probes) {
    const double a = std::cos(t), b = std::sin(t);
    std::vector<std::pair<double, std::size_t>> keyed;
    for (std::size_t i = 0; i < n; ++i) keyed.push_back({a * xs[i] + b * ys[i], i});
    add_prefixes(keyed, out);
  }
  return out;
}

// Closed disks. Centred at c, disks induce the prefixes of the points sorted
// by distance to c; that order is constant on each cell of the arrangement
// of perpendicular bisectors. Every cell touches an arrangement vertex, so
// probing around each vertex (between consecutive lines through it) visits
// every cell. Points must be in generic position.
inline SubsetFamily disks(const vcsample::GroundSet& g) {
  const auto xs = g.xs();
  const auto ys = g.ys();
  const std::size_t n = g.size();
  struct Line {
    double a, b, c;  // a x + b y = c, (a, b) unit
  };
  std::vector<Line> lines;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double a = xs[j] - xs[i], b = ys[j] - ys[i];
      const double len = std::hypot(a, b);
      if (len == 0.0) continue;
      a /= len;
      b /= len;
      const double c = a * 0.5 * (xs[i] + xs[j]) + b * 0.5 * (ys[i] + ys[j]);
      lines.push_back({a, b, c});
    }

  SubsetFamily out;
  auto probe = [&](double cx, double cy) {
    std::vector<std::pair<double, std::size_t>> keyed;
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = xs[i] - cx, dy = ys[i] - cy;
      keyed.push_back({dx * dx + dy * dy, i});
    }
    add_prefixes(keyed, out);
  };

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 4.0);
  for (int k = 0; k < 64; ++k) probe(u(rng), u(rng));

  for (std::size_t p = 0; p < lines.size(); ++p)
    for (std::size_t q = p + 1; q < lines.size(); ++q) {
      const Line& l1 = lines[p];
      const Line& l2 = lines[q];
      const double det = l1.a * l2.b - l1.b * l2.a;
      if (std::abs(det) < 1e-12) continue;
      const double vx = (l1.c * l2.b - l1.b * l2.c) / det;
      const double vy = (l1.a * l2.c - l1.c * l2.a) / det;
      const double scale = 1.0 + std::abs(vx) + std::abs(vy);
      std::vector<double> dirs;
      double clearance = 1.0;
      for (const Line& l : lines) {
        const double dist = std::abs(l.a * vx + l.b * vy - l.c);
        if (dist <= 1e-9 * scale) {
          const double t = std::atan2(-l.a, l.b);
          dirs.push_back(t);
          dirs.push_back(t + std::numbers::pi);
        } else {
          clearance = std::min(clearance, dist);
        }
      }
      for (double& t : dirs) t = std::remainder(t, 2.0 * std::numbers::pi);
      std::sort(dirs.begin(), dirs.end());
      const double step = 0.25 * clearance;
      for (std::size_t k = 0; k < dirs.size(); ++k) {
        const double next = k + 1 < dirs.size() ? dirs[k + 1] : dirs[0] + 2.0 * std::numbers::pi;
        const double t = 0.5 * (dirs[k] + next);
        probe(vx + step * std::cos(t), vy + step * std::sin(t));
      }
    }
  return out;
}

inline SubsetFamily induced(vcsample::RangeKind kind, const vcsample::GroundSet& g) {
  switch (kind) {
    case vcsample::RangeKind::intervals: return intervals(g);
    case vcsample::RangeKind::halfplanes: return halfplanes(g);
    case vcsample::RangeKind::rectangles: return rectangles(g);
    case vcsample::RangeKind::disks: return disks(g);
  }
  return {};
}

// Independent evaluation of the closed forms with long double arithmetic.
inline std::size_t base_size(long double alpha, long double nu, long double delta, int d, long double C) {
  const long double v = (C / (alpha * alpha * nu)) * (d * std::log(1.0L / nu) + std::log(1.0L / delta));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(v)));
}

}  // namespace oracle
