#include "vcsample/range_space.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

#include "vcsample/errors.hpp"
#include "vcsample/simd/kernels.hpp"

namespace vcsample {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Points this close to a candidate boundary (relative to the coordinate scale)
// are treated as lying on it.
constexpr double kOnBoundary = 1e-12;

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

bool mask_less(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  for (std::size_t w = 0; w < words; ++w) {
    const std::uint64_t diff = a[w] ^ b[w];
    if (diff == 0) continue;
    const int bit = std::countr_zero(diff);
    auto has_above = [&](const std::uint64_t* s) {
      const std::uint64_t high = bit == 63 ? 0 : s[w] & (~std::uint64_t{0} << (bit + 1));
      if (high != 0) return true;
      for (std::size_t v = w + 1; v < words; ++v) {
        if (s[v] != 0) return true;
      }
      return false;
    };
    // The set owning the smallest differing index is smaller, unless the
    // other set ends before it (and is then a proper prefix).
    if ((a[w] >> bit) & 1U) return has_above(b);
    return !has_above(a);
  }
  return false;
}

// Distinct coordinates of a planar ground set; duplicates always share ranges.
struct Locations {
  std::vector<double> x;
  std::vector<double> y;
  double magnitude = 0.0;  // max |coordinate|

  std::size_t size() const { return x.size(); }
};

Locations distinct_locations(const GroundSet& g) {
  std::vector<std::size_t> idx(g.size());
  std::iota(idx.begin(), idx.end(), 0);
  const auto xs = g.xs();
  const auto ys = g.ys();
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return xs[a] != xs[b] ? xs[a] < xs[b] : ys[a] < ys[b];
  });
  Locations loc;
  for (std::size_t i : idx) {
    if (!loc.x.empty() && loc.x.back() == xs[i] && loc.y.back() == ys[i]) continue;
    loc.x.push_back(xs[i]);
    loc.y.push_back(ys[i]);
    loc.magnitude = std::max({loc.magnitude, std::fabs(xs[i]), std::fabs(ys[i])});
  }
  return loc;
}

// Deduplicates candidate masks by subset, keeping the first witness seen.
class MaskTable {
 public:
  explicit MaskTable(std::size_t words)
      : words_(words), index_(1024, Hash{this}, Equal{this}) {}

  void offer(std::span<const std::uint64_t> mask, const RangeParams& witness) {
    const auto id = static_cast<std::uint32_t>(witnesses_.size());
    arena_.insert(arena_.end(), mask.begin(), mask.end());
    if (index_.insert(id).second) {
      witnesses_.push_back(witness);
    } else {
      arena_.resize(arena_.size() - words_);
    }
  }

  std::vector<std::uint64_t> take_masks() { return std::move(arena_); }
  std::vector<RangeParams> take_witnesses() { return std::move(witnesses_); }

 private:
  struct Hash {
    const MaskTable* table;
    std::size_t operator()(std::uint32_t id) const {
      const std::uint64_t* m = table->arena_.data() + std::size_t{id} * table->words_;
      std::uint64_t h = 0x9e3779b97f4a7c15ULL;
      for (std::size_t w = 0; w < table->words_; ++w) {
        h ^= m[w] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
      }
      return static_cast<std::size_t>(h ^ (h >> 33));
    }
  };
  struct Equal {
    const MaskTable* table;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
      const std::uint64_t* base = table->arena_.data();
      return std::equal(base + std::size_t{a} * table->words_, base + (std::size_t{a} + 1) * table->words_,
                        base + std::size_t{b} * table->words_);
    }
  };

  std::size_t words_;
  std::vector<std::uint64_t> arena_;
  std::vector<RangeParams> witnesses_;
  std::unordered_set<std::uint32_t, Hash, Equal> index_;
};

class MaskEmitter {
 public:
  MaskEmitter(const GroundSet& g, MaskTable& table)
      : g_(g), table_(table), scratch_(words_for(g.size())) {}

  void halfplane(const Halfplane& h) {
    simd::halfplane_mask(h, g_.xs(), g_.ys(), scratch_);
    table_.offer(scratch_, h);
  }
  // Both closed sides of the line a*x + b*y = c.
  void both_sides(const Halfplane& h) {
    halfplane(h);
    halfplane(Halfplane{-h.a, -h.b, -h.c});
  }
  void disk(const Disk& d) {
    simd::disk_mask(d, g_.xs(), g_.ys(), scratch_);
    table_.offer(scratch_, d);
  }

 private:
  const GroundSet& g_;
  MaskTable& table_;
  std::vector<std::uint64_t> scratch_;
};

// Lines through pairs of locations, perturbed so that the locations on the
// line can be split at every gap (prefixes and suffixes along the line), on
// both sides. Complete for closed halfplanes: any realizable split can be
// moved until its boundary passes through two locations.
void enumerate_halfplanes(const GroundSet& g, MaskTable& table) {
  const Locations loc = distinct_locations(g);
  MaskEmitter emit(g, table);
  const double min_x = *std::min_element(g.xs().begin(), g.xs().end());
  const double max_x = *std::max_element(g.xs().begin(), g.xs().end());
  emit.halfplane(Halfplane{1.0, 0.0, min_x - 1.0 - std::fabs(min_x)});
  emit.halfplane(Halfplane{1.0, 0.0, max_x + 1.0 + std::fabs(max_x)});

  const std::size_t k = loc.size();
  std::vector<std::pair<double, std::size_t>> on_line;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double dx = loc.x[j] - loc.x[i];
      const double dy = loc.y[j] - loc.y[i];
      const double a = -dy;
      const double b = dx;
      const double c = a * loc.x[i] + b * loc.y[i];
      const double tol = kOnBoundary * (std::fabs(a) + std::fabs(b)) * (1.0 + loc.magnitude);

      on_line.clear();
      double gap = kInf;
      double reach = 0.0;
      bool first_pair_on_line = true;
      for (std::size_t l = 0; l < k && first_pair_on_line; ++l) {
        const double w = a * loc.x[l] + b * loc.y[l] - c;
        reach = std::max(reach, std::fabs(loc.x[l] - loc.x[i]) + std::fabs(loc.y[l] - loc.y[i]));
        if (l == i || l == j || std::fabs(w) <= tol) {
          if (l != i && l != j && l < j) first_pair_on_line = false;
          on_line.emplace_back(dx * (loc.x[l] - loc.x[i]) + dy * (loc.y[l] - loc.y[i]), l);
        } else {
          gap = std::min(gap, std::fabs(w));
        }
      }
      if (!first_pair_on_line) continue;  // the line was handled by an earlier pair
      const double d2 = dx * dx + dy * dy;
      if (!std::isfinite(gap)) gap = d2;

      const double shift = 0.5 * gap;
      emit.both_sides(Halfplane{a, b, c + shift});
      emit.both_sides(Halfplane{a, b, c - shift});

      std::sort(on_line.begin(), on_line.end());
      const double theta = gap / (8.0 * std::sqrt(d2) * reach);
      for (std::size_t t = 0; t + 1 < on_line.size(); ++t) {
        const double pivot = 0.5 * (on_line[t].first + on_line[t + 1].first) / d2;
        const double qx = loc.x[i] + pivot * dx;
        const double qy = loc.y[i] + pivot * dy;
        for (const double sign : {1.0, -1.0}) {
          const double ra = a - sign * theta * dx;
          const double rb = b - sign * theta * dy;
          emit.both_sides(Halfplane{ra, rb, ra * qx + rb * qy});
        }
      }
    }
  }
}

// Closed disks. Via the lifting map, disks are lower halfspaces below planes
// through lifted locations; circles through triples are perturbed to include
// or exclude each of the three, and pairs and singletons cover the
// collinear configurations.
void enumerate_disks(const GroundSet& g, MaskTable& table) {
  const Locations loc = distinct_locations(g);
  MaskEmitter emit(g, table);
  const auto [min_x, max_x] = std::minmax_element(loc.x.begin(), loc.x.end());
  const auto [min_y, max_y] = std::minmax_element(loc.y.begin(), loc.y.end());
  const double span = std::max(*max_x - *min_x, *max_y - *min_y);
  emit.disk(Disk{*max_x + span + 1.0, *max_y + span + 1.0, 0.0});
  const double half_diag = 0.5 * std::hypot(*max_x - *min_x, *max_y - *min_y);
  emit.disk(Disk{0.5 * (*min_x + *max_x), 0.5 * (*min_y + *max_y),
                 half_diag * (1.0 + 1e-9) + 1e-9 * (1.0 + loc.magnitude)});

  const std::size_t k = loc.size();
  for (std::size_t i = 0; i < k; ++i) emit.disk(Disk{loc.x[i], loc.y[i], 0.0});

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double cx = 0.5 * (loc.x[i] + loc.x[j]);
      const double cy = 0.5 * (loc.y[i] + loc.y[j]);
      const double ux = loc.x[j] - loc.x[i];
      const double uy = loc.y[j] - loc.y[i];
      const double r2 = 0.25 * (ux * ux + uy * uy);
      double gap = kInf;
      for (std::size_t l = 0; l < k; ++l) {
        if (l == i || l == j) continue;
        const double f = (loc.x[l] - cx) * (loc.x[l] - cx) + (loc.y[l] - cy) * (loc.y[l] - cy) - r2;
        if (std::fabs(f) > kOnBoundary * r2) gap = std::min(gap, std::fabs(f));
      }
      if (!std::isfinite(gap)) gap = r2;
      emit.disk(Disk{cx, cy, std::sqrt(r2 + 0.5 * gap)});
      emit.disk(Disk{cx, cy, std::sqrt(std::max(0.0, r2 - 0.5 * gap))});
    }
  }

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double ux = loc.x[j] - loc.x[i];
      const double uy = loc.y[j] - loc.y[i];
      const double u2 = ux * ux + uy * uy;
      for (std::size_t t = j + 1; t < k; ++t) {
        const double vx = loc.x[t] - loc.x[i];
        const double vy = loc.y[t] - loc.y[i];
        const double v2 = vx * vx + vy * vy;
        const double det = ux * vy - uy * vx;
        if (std::fabs(det) <= kOnBoundary * std::sqrt(u2 * v2)) continue;  // collinear

        // Lifted plane |q|^2 = alpha*qx + beta*qy through the three locations,
        // in coordinates centred on location i.
        const double alpha = (u2 * vy - uy * v2) / det;
        const double beta = (ux * v2 - vx * u2) / det;
        double gap = kInf;
        double reach = 0.0;
        for (std::size_t l = 0; l < k; ++l) {
          const double qx = loc.x[l] - loc.x[i];
          const double qy = loc.y[l] - loc.y[i];
          reach = std::max(reach, std::fabs(qx) + std::fabs(qy));
          if (l == i || l == j || l == t) continue;
          const double f = qx * qx + qy * qy - alpha * qx - beta * qy;
          const double scale = qx * qx + qy * qy + std::fabs(alpha * qx) + std::fabs(beta * qy);
          if (std::fabs(f) > kOnBoundary * scale) gap = std::min(gap, std::fabs(f));
        }
        if (!std::isfinite(gap)) gap = u2 + v2;
        const double inverse_norm = std::max(std::fabs(vy) + std::fabs(uy), std::fabs(vx) + std::fabs(ux)) /
                                    std::fabs(det);
        const double eta = gap / (4.0 * (1.0 + 2.0 * reach * inverse_norm));

        for (int combo = 0; combo < 8; ++combo) {
          const double si = (combo & 1) ? eta : -eta;
          const double sj = (combo & 2) ? eta : -eta;
          const double st = (combo & 4) ? eta : -eta;
          const double rj = u2 - si + sj;
          const double rt = v2 - si + st;
          const double pa = 0.5 * (rj * vy - uy * rt) / det;
          const double pb = 0.5 * (ux * rt - vx * rj) / det;
          const double radius2 = si + pa * pa + pb * pb;
          if (radius2 < 0.0) continue;
          emit.disk(Disk{loc.x[i] + pa, loc.y[i] + pb, std::sqrt(radius2)});
        }
      }
    }
  }
}

// Closed axis-parallel rectangles: every non-empty induced subset equals the
// points inside its own bounding box, whose sides are coordinate values.
void enumerate_rectangles(const GroundSet& g, MaskTable& table, std::size_t words) {
  const Locations loc = distinct_locations(g);
  const std::size_t k = loc.size();

  std::vector<std::uint64_t> loc_mask(k * words, 0);
  {
    for (std::size_t p = 0; p < g.size(); ++p) {
      // Locations are sorted by (x, y).
      const auto it = std::lower_bound(loc.x.begin(), loc.x.end(), g.xs()[p]);
      std::size_t l = static_cast<std::size_t>(it - loc.x.begin());
      while (loc.y[l] != g.ys()[p]) ++l;
      loc_mask[l * words + (p >> 6)] |= std::uint64_t{1} << (p & 63);
    }
  }

  std::vector<double> x_values(loc.x);
  x_values.erase(std::unique(x_values.begin(), x_values.end()), x_values.end());
  const double max_x = x_values.back();
  const double max_y = *std::max_element(loc.y.begin(), loc.y.end());
  const double far_x = max_x + 1.0 + std::fabs(max_x);
  const double far_y = max_y + 1.0 + std::fabs(max_y);
  table.offer(std::vector<std::uint64_t>(words, 0), Rectangle{far_x, far_x, far_y, far_y});

  // Location ranges per distinct x value (locations are x-sorted).
  std::vector<std::size_t> x_start(x_values.size() + 1, 0);
  for (std::size_t v = 0, l = 0; v < x_values.size(); ++v) {
    x_start[v] = l;
    while (l < k && loc.x[l] == x_values[v]) ++l;
  }
  x_start[x_values.size()] = k;

  std::vector<std::size_t> strip;  // locations sorted by y
  std::vector<std::uint64_t> mask(words);
  for (std::size_t a = 0; a < x_values.size(); ++a) {
    strip.clear();
    for (std::size_t b = a; b < x_values.size(); ++b) {
      for (std::size_t l = x_start[b]; l < x_start[b + 1]; ++l) {
        strip.insert(std::upper_bound(strip.begin(), strip.end(), l,
                                      [&](std::size_t u, std::size_t w) { return loc.y[u] < loc.y[w]; }),
                     l);
      }
      for (std::size_t c = 0; c < strip.size(); ++c) {
        if (c > 0 && loc.y[strip[c - 1]] == loc.y[strip[c]]) continue;
        std::fill(mask.begin(), mask.end(), 0);
        bool touches_left = false;
        bool touches_right = false;
        for (std::size_t d = c; d < strip.size(); ++d) {
          const std::size_t l = strip[d];
          for (std::size_t w = 0; w < words; ++w) mask[w] |= loc_mask[l * words + w];
          touches_left = touches_left || loc.x[l] == x_values[a];
          touches_right = touches_right || loc.x[l] == x_values[b];
          const bool group_ends = d + 1 == strip.size() || loc.y[strip[d + 1]] != loc.y[l];
          if (group_ends && touches_left && touches_right) {
            table.offer(mask, Rectangle{x_values[a], x_values[b], loc.y[strip[c]], loc.y[l]});
          }
        }
      }
    }
  }
}

}  // namespace

std::size_t EnumerationBudget::limit(RangeKind kind) const {
  switch (kind) {
    case RangeKind::intervals: return intervals;
    case RangeKind::halfplanes: return halfplanes;
    case RangeKind::rectangles: return rectangles;
    case RangeKind::disks: return disks;
  }
  return 0;
}

std::size_t sauer_shelah_bound(std::size_t n, int d) {
  std::size_t total = 0;
  std::size_t binom = 1;  // C(n, i)
  for (int i = 0; i <= d && static_cast<std::size_t>(i) <= n; ++i) {
    if (i > 0) {
      const std::size_t num = n - static_cast<std::size_t>(i) + 1;
      if (binom > std::numeric_limits<std::size_t>::max() / num) return std::numeric_limits<std::size_t>::max();
      binom = binom * num / static_cast<std::size_t>(i);
    }
    if (total > std::numeric_limits<std::size_t>::max() - binom) return std::numeric_limits<std::size_t>::max();
    total += binom;
  }
  return total;
}

double fractional_weight(const InducedRange& range, const GroundSet& points) {
  return static_cast<double>(range.members.size()) / static_cast<double>(points.size());
}

RangeSet enumerate_induced_ranges(const RangeFamily& family, const GroundSet& points,
                                  const EnumerationBudget& budget) {
  if (points.dim() != family.point_dimension()) {
    throw ParameterError(std::string(to_string(family.kind())) + " need " +
                         std::to_string(family.point_dimension()) + "-D points");
  }
  const std::size_t limit = budget.limit(family.kind());
  if (points.size() > limit) {
    throw BudgetExceeded(std::string(to_string(family.kind())) + " enumeration is limited to " +
                         std::to_string(limit) + " points, got " + std::to_string(points.size()));
  }
  RangeSet out(family, std::make_shared<const GroundSet>(points));
  if (family.kind() == RangeKind::intervals) {
    out.build_intervals();
    return out;
  }
  const std::size_t words = words_for(points.size());
  MaskTable table(words);
  switch (family.kind()) {
    case RangeKind::halfplanes: enumerate_halfplanes(points, table); break;
    case RangeKind::disks: enumerate_disks(points, table); break;
    case RangeKind::rectangles: enumerate_rectangles(points, table, words); break;
    case RangeKind::intervals: break;
  }
  out.words_ = words;
  out.finish_masks(table.take_masks(), table.take_witnesses());
  return out;
}

void RangeSet::build_intervals() {
  const auto xs = ground_->xs();
  const std::size_t n = xs.size();
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(), [&](std::int32_t a, std::int32_t b) { return xs[a] < xs[b]; });
  for (std::size_t pos = 0; pos < n; ++pos) {
    if (pos == 0 || xs[order_[pos]] != xs[order_[pos - 1]]) {
      group_start_.push_back(static_cast<std::int32_t>(pos));
      group_value_.push_back(xs[order_[pos]]);
    }
  }
  const auto groups = static_cast<std::int32_t>(group_value_.size());
  group_start_.push_back(static_cast<std::int32_t>(n));

  // Sparse tables for range-min / range-max over order_.
  min_table_.push_back(order_);
  max_table_.push_back(order_);
  for (std::size_t width = 1; 2 * width <= n; width *= 2) {
    const auto& pmin = min_table_.back();
    const auto& pmax = max_table_.back();
    std::vector<std::int32_t> lmin(n - 2 * width + 1);
    std::vector<std::int32_t> lmax(n - 2 * width + 1);
    for (std::size_t i = 0; i < lmin.size(); ++i) {
      lmin[i] = std::min(pmin[i], pmin[i + width]);
      lmax[i] = std::max(pmax[i], pmax[i + width]);
    }
    min_table_.push_back(std::move(lmin));
    max_table_.push_back(std::move(lmax));
  }

  std::vector<std::uint64_t> packed;
  packed.reserve(static_cast<std::size_t>(groups) * (groups + 1) / 2 + 1);
  packed.push_back(0);  // ∅
  for (std::int32_t a = 0; a < groups; ++a) {
    for (std::int32_t b = a + 1; b <= groups; ++b) {
      packed.push_back((static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b));
    }
  }
  std::sort(packed.begin(), packed.end(), [&](std::uint64_t u, std::uint64_t v) {
    return span_less(static_cast<std::int32_t>(u >> 32), static_cast<std::int32_t>(u & 0xffffffffU),
                     static_cast<std::int32_t>(v >> 32), static_cast<std::int32_t>(v & 0xffffffffU));
  });
  begin_.resize(packed.size());
  end_.resize(packed.size());
  for (std::size_t r = 0; r < packed.size(); ++r) {
    begin_[r] = static_cast<std::int32_t>(packed[r] >> 32);
    end_[r] = static_cast<std::int32_t>(packed[r] & 0xffffffffU);
  }
  ground_counts_.resize(packed.size());
  simd::span_counts(group_start_, begin_, end_, ground_counts_);
}

std::int32_t RangeSet::span_min(std::int32_t from, std::int32_t to) const {
  if (from >= to) return INT32_MAX;
  const int level = std::bit_width(static_cast<unsigned>(to - from)) - 1;
  const auto& t = min_table_[static_cast<std::size_t>(level)];
  return std::min(t[from], t[to - (1 << level)]);
}

std::int32_t RangeSet::span_max(std::int32_t from, std::int32_t to) const {
  if (from >= to) return -1;
  const int level = std::bit_width(static_cast<unsigned>(to - from)) - 1;
  const auto& t = max_table_[static_cast<std::size_t>(level)];
  return std::max(t[from], t[to - (1 << level)]);
}

bool RangeSet::span_less(std::int32_t begin_a, std::int32_t end_a, std::int32_t begin_b,
                         std::int32_t end_b) const {
  const std::int32_t pa = group_start_[begin_a];
  const std::int32_t qa = group_start_[end_a];
  const std::int32_t pb = group_start_[begin_b];
  const std::int32_t qb = group_start_[end_b];
  if (pa == qa) return pb != qb;
  if (pb == qb) return false;
  if (pa == pb && qa == qb) return false;
  const std::int32_t only_a = std::min(span_min(pa, std::min(qa, pb)), span_min(std::max(pa, qb), qa));
  const std::int32_t only_b = std::min(span_min(pb, std::min(qb, pa)), span_min(std::max(pb, qa), qb));
  if (only_a < only_b) return span_max(pb, qb) > only_a;
  return !(span_max(pa, qa) > only_b);
}

void RangeSet::finish_masks(std::vector<std::uint64_t> masks, std::vector<RangeParams> witnesses) {
  const std::size_t count = witnesses.size();
  std::vector<std::uint32_t> perm(count);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
    return mask_less(masks.data() + std::size_t{a} * words_, masks.data() + std::size_t{b} * words_, words_);
  });
  masks_.resize(count * words_);
  witnesses_.reserve(count);
  ground_counts_.resize(count);
  for (std::size_t r = 0; r < count; ++r) {
    const std::uint64_t* src = masks.data() + std::size_t{perm[r]} * words_;
    std::copy(src, src + words_, masks_.begin() + static_cast<std::ptrdiff_t>(r * words_));
    witnesses_.push_back(witnesses[perm[r]]);
    std::int32_t c = 0;
    for (std::size_t w = 0; w < words_; ++w) c += std::popcount(src[w]);
    ground_counts_[r] = c;
  }
}

bool RangeSet::canonical_less(std::size_t a, std::size_t b) const {
  if (family_.kind() == RangeKind::intervals) return span_less(begin_[a], end_[a], begin_[b], end_[b]);
  return mask_less(masks_.data() + a * words_, masks_.data() + b * words_, words_);
}

std::vector<std::size_t> RangeSet::members(std::size_t range) const {
  std::vector<std::size_t> out;
  if (family_.kind() == RangeKind::intervals) {
    for (std::int32_t pos = group_start_[begin_[range]]; pos < group_start_[end_[range]]; ++pos) {
      out.push_back(static_cast<std::size_t>(order_[pos]));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  const std::uint64_t* m = masks_.data() + range * words_;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t bits = m[w];
    while (bits != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

RangeParams RangeSet::witness(std::size_t range) const {
  if (family_.kind() != RangeKind::intervals) return witnesses_[range];
  if (begin_[range] == end_[range]) {
    const double below = group_value_.front() - 1.0 - std::fabs(group_value_.front());
    return Interval{below, below};
  }
  return Interval{group_value_[begin_[range]], group_value_[end_[range] - 1]};
}

std::vector<InducedRange> RangeSet::materialize() const {
  std::vector<InducedRange> out;
  out.reserve(size());
  for (std::size_t r = 0; r < size(); ++r) out.push_back(at(r));
  return out;
}

void RangeSet::sample_counts(std::span<const std::int32_t> multiplicity, std::span<std::int32_t> out) const {
  if (multiplicity.size() != ground_->size()) throw ParameterError("multiplicities do not match the ground set");
  if (out.size() != size()) throw ParameterError("output size does not match the range count");
  if (family_.kind() == RangeKind::intervals) {
    std::vector<std::int32_t> prefix(group_value_.size() + 1, 0);
    for (std::size_t grp = 0; grp < group_value_.size(); ++grp) {
      std::int32_t sum = 0;
      for (std::int32_t pos = group_start_[grp]; pos < group_start_[grp + 1]; ++pos) sum += multiplicity[order_[pos]];
      prefix[grp + 1] = prefix[grp] + sum;
    }
    simd::span_counts(prefix, begin_, end_, out);
    return;
  }
  const std::int32_t max_mult = multiplicity.empty() ? 0 : *std::max_element(multiplicity.begin(), multiplicity.end());
  const auto planes = static_cast<std::size_t>(std::bit_width(static_cast<std::uint32_t>(std::max(max_mult, 0))));
  std::vector<std::uint64_t> bitplanes(planes * words_, 0);
  for (std::size_t k = 0; k < multiplicity.size(); ++k) {
    const auto v = static_cast<std::uint32_t>(multiplicity[k]);
    for (std::size_t b = 0; b < planes; ++b) {
      if ((v >> b) & 1U) bitplanes[b * words_ + (k >> 6)] |= std::uint64_t{1} << (k & 63);
    }
  }
  simd::weighted_popcount(masks_, words_, bitplanes, planes, out);
}

std::vector<std::int32_t> RangeSet::sample_counts(std::span<const std::int32_t> multiplicity) const {
  std::vector<std::int32_t> out(size());
  sample_counts(multiplicity, out);
  return out;
}

}  // namespace vcsample
