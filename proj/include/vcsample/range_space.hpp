#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "vcsample/geometry.hpp"

namespace vcsample {

// One distinct subset R ∩ X, with a witness range realizing it.
struct InducedRange {
  std::vector<std::size_t> members;  // ascending point indices
  RangeParams witness;
};

// Largest ground sets accepted by exhaustive enumeration, per family.
struct EnumerationBudget {
  std::size_t intervals = 5000;
  std::size_t halfplanes = 500;
  std::size_t rectangles = 80;
  std::size_t disks = 200;

  std::size_t limit(RangeKind kind) const;
};

// Every distinct range induced by a family on a ground set, in canonical
// order (lexicographic on the ascending member index list, so ∅ comes first).
//
// Intervals are stored as spans of the x-sorted order; the planar families
// as bitsets over point indices. Per-range member counts are precomputed so
// verifiers only need the per-sample counts.
class RangeSet {
 public:
  const RangeFamily& family() const { return family_; }
  const GroundSet& ground() const { return *ground_; }
  std::size_t size() const { return ground_counts_.size(); }

  // |R ∩ X| for every range, counting duplicate points.
  std::span<const std::int32_t> ground_counts() const { return ground_counts_; }

  std::vector<std::size_t> members(std::size_t range) const;
  RangeParams witness(std::size_t range) const;
  InducedRange at(std::size_t range) const { return {members(range), witness(range)}; }
  std::vector<InducedRange> materialize() const;

  // For each range, the number of sample draws landing in it, given the
  // per-point draw multiplicities (one entry per ground point).
  void sample_counts(std::span<const std::int32_t> multiplicity, std::span<std::int32_t> out) const;
  std::vector<std::int32_t> sample_counts(std::span<const std::int32_t> multiplicity) const;

  // True iff range a precedes range b in canonical order.
  bool canonical_less(std::size_t a, std::size_t b) const;

 private:
  friend RangeSet enumerate_induced_ranges(const RangeFamily&, const GroundSet&,
                                           const EnumerationBudget&);

  RangeSet(RangeFamily family, std::shared_ptr<const GroundSet> ground)
      : family_(family), ground_(std::move(ground)) {}

  void build_intervals();
  void finish_masks(std::vector<std::uint64_t> masks, std::vector<RangeParams> witnesses);
  bool span_less(std::int32_t begin_a, std::int32_t end_a, std::int32_t begin_b,
                 std::int32_t end_b) const;
  std::int32_t span_min(std::int32_t from, std::int32_t to) const;
  std::int32_t span_max(std::int32_t from, std::int32_t to) const;

  RangeFamily family_;
  std::shared_ptr<const GroundSet> ground_;
  std::vector<std::int32_t> ground_counts_;

  // Interval representation: range k covers order_[group_start_[begin_[k]] ..
  // group_start_[end_[k]]).
  std::vector<std::int32_t> order_;
  std::vector<std::int32_t> group_start_;
  std::vector<double> group_value_;
  std::vector<std::int32_t> begin_;
  std::vector<std::int32_t> end_;
  std::vector<std::vector<std::int32_t>> min_table_;
  std::vector<std::vector<std::int32_t>> max_table_;

  // Bitset representation.
  std::size_t words_ = 0;
  std::vector<std::uint64_t> masks_;
  std::vector<RangeParams> witnesses_;
};

// Throws BudgetExceeded when |X| exceeds the family's budget and
// ParameterError when the ground set dimension does not match the family.
RangeSet enumerate_induced_ranges(const RangeFamily& family, const GroundSet& points,
                                  const EnumerationBudget& budget = {});

// r(R) = |R ∩ X| / |X|.
double fractional_weight(const InducedRange& range, const GroundSet& points);

// Sauer–Shelah bound sum_{i <= d} C(n, i), saturating at SIZE_MAX.
std::size_t sauer_shelah_bound(std::size_t n, int d);

}  // namespace vcsample
