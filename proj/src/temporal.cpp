#include "tdx/temporal.hpp"

#include <algorithm>
#include <stdexcept>

namespace tdx {

std::string TimePoint::to_string() const { return is_infinite() ? std::string("inf") : std::to_string(value_); }

Interval::Interval(TimePoint start, TimePoint end) : start_(start), end_(end) {
  if (start.is_infinite()) throw std::invalid_argument("interval start cannot be infinite");
  if (!(start < end))
    throw std::invalid_argument("empty interval [" + start.to_string() + "," + end.to_string() + ")");
}

std::string Interval::to_string() const { return "[" + start_.to_string() + "," + end_.to_string() + ")"; }

std::ostream& operator<<(std::ostream& os, TimePoint t) { return os << t.to_string(); }
std::ostream& operator<<(std::ostream& os, const Interval& iv) { return os << iv.to_string(); }

bool interval_contains(const Interval& iv, TimePoint t) {
  if (t.is_infinite()) throw std::invalid_argument("membership test with an infinite time point");
  return iv.start() <= t && t < iv.end();
}

bool disjoint(const Interval& a, const Interval& b) { return a.end() <= b.start() || b.end() <= a.start(); }

std::vector<TimePoint> build_grid(std::span<const Interval> intervals) {
  std::vector<TimePoint> grid;
  grid.reserve(intervals.size() * 2);
  for (const auto& iv : intervals) {
    grid.push_back(iv.start());
    if (iv.end().is_finite()) grid.push_back(iv.end());
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<Interval> split_interval(const Interval& iv, std::span<const TimePoint> grid) {
  std::vector<Interval> pieces;
  auto cut = std::upper_bound(grid.begin(), grid.end(), iv.start());
  TimePoint from = iv.start();
  for (; cut != grid.end() && *cut < iv.end(); ++cut) {
    pieces.emplace_back(from, *cut);
    from = *cut;
  }
  pieces.emplace_back(from, iv.end());
  return pieces;
}

}  // namespace tdx
