#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace tdx {

/// A discrete time point: a natural number or Infinity.
/// Infinity compares greater than every finite point.
class TimePoint {
 public:
  using rep = std::uint64_t;

  constexpr TimePoint() = default;
  constexpr explicit TimePoint(rep value) : value_(value) {}

  static constexpr TimePoint infinity() { return TimePoint(kInfinite); }

  constexpr bool is_infinite() const { return value_ == kInfinite; }
  constexpr bool is_finite() const { return value_ != kInfinite; }

  /// Raw value; meaningless for Infinity.
  constexpr rep value() const { return value_; }

  constexpr auto operator<=>(const TimePoint&) const = default;

  std::string to_string() const;

 private:
  static constexpr rep kInfinite = std::numeric_limits<rep>::max();
  rep value_ = 0;
};

/// A nonempty clopen interval [start, end). The start is always finite;
/// the end may be Infinity, in which case the interval is unbounded.
class Interval {
 public:
  /// Throws std::invalid_argument unless start is finite and start < end.
  Interval(TimePoint start, TimePoint end);
  Interval(TimePoint::rep start, TimePoint::rep end) : Interval(TimePoint(start), TimePoint(end)) {}

  static Interval unbounded(TimePoint::rep start) { return Interval(TimePoint(start), TimePoint::infinity()); }

  TimePoint start() const { return start_; }
  TimePoint end() const { return end_; }
  bool is_unbounded() const { return end_.is_infinite(); }

  auto operator<=>(const Interval&) const = default;

  std::string to_string() const;

 private:
  TimePoint start_;
  TimePoint end_;
};

std::ostream& operator<<(std::ostream& os, TimePoint t);
std::ostream& operator<<(std::ostream& os, const Interval& iv);

/// True iff start <= t < end. Throws std::invalid_argument for t = Infinity.
bool interval_contains(const Interval& iv, TimePoint t);

/// True iff the two point sets share no time point.
bool disjoint(const Interval& a, const Interval& b);

/// Sorted, duplicate-free list of every finite start and end in `intervals`.
std::vector<TimePoint> build_grid(std::span<const Interval> intervals);

/// Cuts `iv` at every grid point strictly inside it. `grid` must be sorted
/// and duplicate-free. The pieces are returned in order and partition iv.
std::vector<Interval> split_interval(const Interval& iv, std::span<const TimePoint> grid);

}  // namespace tdx
