#include "pbtm/interval.hpp"

#include <algorithm>

#include "pbtm/error.hpp"

namespace pbtm {

TimePoint IntervalEndpoint::tick() const {
  if (!is_finite()) raise(Errc::InputError, "tick() on an infinite endpoint");
  return tick_;
}

std::string IntervalEndpoint::str() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "+inf";
    case Kind::Finite: return std::to_string(tick_);
  }
  return {};
}

Interval::Interval(IntervalEndpoint start, IntervalEndpoint end) : start_(start), end_(end) {
  if (end_ < start_) raise(Errc::InputError, "interval end " + end.str() + " before start " + start.str());
}

Interval Interval::cover(const Interval& a, const Interval& b) {
  return Interval(std::min(a.start(), b.start()), std::max(a.end(), b.end()));
}

std::string Interval::str() const { return "[" + start_.str() + "," + end_.str() + "]"; }

bool RelationSet::contains(IntervalRelation r) const {
  switch (r) {
    case IntervalRelation::StartBeforeStart: return start_before_start;
    case IntervalRelation::EndBeforeStart: return end_before_start;
    case IntervalRelation::StartBeforeEnd: return start_before_end;
    case IntervalRelation::EndBeforeEnd: return end_before_end;
  }
  return false;
}

RelationSet interval_relations(const Interval& x, const Interval& y) {
  RelationSet out;
  out.start_before_start = x.start() < y.start();
  out.end_before_start = x.end() < y.start();
  out.start_before_end = x.start() < y.end();
  out.end_before_end = x.end() < y.end();
  return out;
}

IntervalPartition IntervalPartition::from_intervals(std::vector<Interval> intervals) {
  if (intervals.empty()) raise(Errc::InputError, "partition needs at least one interval");
  for (const auto& iv : intervals) {
    if (!iv.is_finite()) raise(Errc::InputError, "partition interval " + iv.str() + " must be finite");
  }
  std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
    return a.start() < b.start();
  });
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    if (!(intervals[i - 1].end() < intervals[i].start())) {
      raise(Errc::InputError, "partition intervals " + intervals[i - 1].str() + " and " +
                                  intervals[i].str() + " overlap");
    }
  }
  IntervalPartition p;
  p.intervals_.reserve(intervals.size());
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    p.intervals_.push_back({"D" + std::to_string(i + 1), intervals[i]});
  }
  return p;
}

IntervalPartition IntervalPartition::uniform(TimePoint origin, TimePoint width, int count) {
  if (width <= 0 || count <= 0) raise(Errc::InputError, "uniform partition needs width > 0 and count > 0");
  std::vector<Interval> intervals;
  intervals.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    TimePoint s = origin + static_cast<TimePoint>(i) * width;
    intervals.push_back(Interval::finite(s, s + width - 1));
  }
  return from_intervals(std::move(intervals));
}

std::optional<std::size_t> IntervalPartition::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (intervals_[i].id == id) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> IntervalPartition::find_containing(const Interval& valid) const {
  // Disjointness makes the containing interval unique: the only candidate is
  // the last interval starting at or before valid.start.
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), valid.start(),
                             [](const IntervalEndpoint& s, const PartitionInterval& p) {
                               return s < p.interval.start();
                             });
  if (it == intervals_.begin()) return std::nullopt;
  --it;
  if (it->interval.contains(valid)) return static_cast<std::size_t>(it - intervals_.begin());
  return std::nullopt;
}

bool IntervalPartition::adjacent(std::size_t i, std::size_t j) const {
  if (j != i + 1 || j >= intervals_.size()) return false;
  return intervals_[i].interval.end().tick() + 1 == intervals_[j].interval.start().tick();
}

}  // namespace pbtm
