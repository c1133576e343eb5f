#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pbtm {

/// Discrete tick on a linearly ordered time axis. The unit (days, hours,
/// billing periods) is whatever the dataset uses.
using TimePoint = int64_t;

/// One end of a closed interval; -inf/+inf live outside the tick range.
class IntervalEndpoint {
public:
  static IntervalEndpoint neg_inf() { return IntervalEndpoint(Kind::NegInf, 0); }
  static IntervalEndpoint pos_inf() { return IntervalEndpoint(Kind::PosInf, 0); }
  static IntervalEndpoint at(TimePoint tick) { return IntervalEndpoint(Kind::Finite, tick); }

  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_finite() const { return kind_ == Kind::Finite; }

  TimePoint tick() const;  // requires is_finite()

  // NegInf < every finite < PosInf; finite endpoints compare by tick.
  std::strong_ordering operator<=>(const IntervalEndpoint& other) const = default;
  bool operator==(const IntervalEndpoint& other) const = default;

  std::string str() const;

private:
  enum class Kind : int8_t { NegInf = -1, Finite = 0, PosInf = 1 };
  IntervalEndpoint(Kind kind, TimePoint tick) : kind_(kind), tick_(tick) {}

  Kind kind_;
  TimePoint tick_;  // 0 for the infinities so default comparison stays total
};

/// Closed interval [start, end] with start <= end.
class Interval {
public:
  Interval(IntervalEndpoint start, IntervalEndpoint end);
  static Interval finite(TimePoint a, TimePoint b) {
    return Interval(IntervalEndpoint::at(a), IntervalEndpoint::at(b));
  }
  static Interval all() { return Interval(IntervalEndpoint::neg_inf(), IntervalEndpoint::pos_inf()); }

  const IntervalEndpoint& start() const { return start_; }
  const IntervalEndpoint& end() const { return end_; }
  bool is_finite() const { return start_.is_finite() && end_.is_finite(); }

  bool contains(const Interval& other) const {
    return start_ <= other.start_ && other.end_ <= end_;
  }

  /// Smallest interval covering both.
  static Interval cover(const Interval& a, const Interval& b);

  bool operator==(const Interval& other) const = default;

  std::string str() const;

private:
  IntervalEndpoint start_;
  IntervalEndpoint end_;
};

enum class IntervalRelation {
  StartBeforeStart,  // a < a'
  EndBeforeStart,    // b < a'
  StartBeforeEnd,    // a < b'
  EndBeforeEnd,      // b < b'
};

/// Subset of the four order relations that hold between two intervals.
struct RelationSet {
  bool start_before_start = false;
  bool end_before_start = false;
  bool start_before_end = false;
  bool end_before_end = false;

  bool contains(IntervalRelation r) const;
  int size() const {
    return int(start_before_start) + int(end_before_start) + int(start_before_end) +
           int(end_before_end);
  }
  bool empty() const { return size() == 0; }
  bool operator==(const RelationSet& other) const = default;
};

/// Evaluates the four defining strict inequalities of x vs y.
RelationSet interval_relations(const Interval& x, const Interval& y);

struct PartitionInterval {
  std::string id;  // "D1", "D2", ...
  Interval interval;
};

/// Ordered list of disjoint finite intervals covering the analysis horizon.
/// Consecutive intervals are usually gap-free (end+1 == next start) but an
/// explicit interval list may leave gaps; expansion treats a gap as a break.
class IntervalPartition {
public:
  /// Validates finiteness, ordering and disjointness; assigns ids D1..Dn
  /// in start order.
  static IntervalPartition from_intervals(std::vector<Interval> intervals);
  static IntervalPartition uniform(TimePoint origin, TimePoint width, int count);

  const std::vector<PartitionInterval>& intervals() const { return intervals_; }
  std::size_t size() const { return intervals_.size(); }
  const PartitionInterval& at(std::size_t index) const { return intervals_.at(index); }

  std::optional<std::size_t> index_of(const std::string& id) const;

  /// Index of the unique interval fully containing `valid`, if any.
  std::optional<std::size_t> find_containing(const Interval& valid) const;

  /// True when intervals i and i+1 are integer-adjacent (end+1 == start).
  bool adjacent(std::size_t i, std::size_t j) const;

private:
  IntervalPartition() = default;
  std::vector<PartitionInterval> intervals_;
};

}  // namespace pbtm
