#include "tdx/eq_closure.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace tdx {

namespace {

std::optional<FactTime> null_context(const Value& v) {
  if (const auto* n = std::get_if<IntervalNull>(&v)) return FactTime{n->context};
  if (const auto* n = std::get_if<PointNull>(&v)) return FactTime{n->context};
  return std::nullopt;
}

// Constants beat nulls; among nulls the least (label, context) wins.
bool better_representative(const Value& a, const Value& b) {
  if (is_constant(a) != is_constant(b)) return is_constant(a);
  return a < b;
}

}  // namespace

std::string to_string(const Equality& e) { return to_string(e.lhs) + " = " + to_string(e.rhs); }

std::size_t EqClosure::id(const Value& v) {
  auto [it, fresh] = ids_.emplace(v, values_.size());
  if (fresh) {
    values_.push_back(v);
    parent_.push_back(it->second);
    best_.push_back(v);
    context_.push_back(null_context(v));
    edges_.emplace_back();
  }
  return it->second;
}

std::size_t EqClosure::root(std::size_t x) const {
  while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
  return x;
}

bool EqClosure::merge(const Value& a, const Value& b) {
  const auto ia = id(a), ib = id(b);
  const auto eq_index = input_.size();
  input_.push_back({a, b});
  edges_[ia].emplace_back(ib, eq_index);
  edges_[ib].emplace_back(ia, eq_index);

  auto ra = root(ia), rb = root(ib);
  if (ra == rb) return true;
  const Value& ba = best_[ra];
  const Value& bb = best_[rb];
  if (is_constant(ba) && is_constant(bb)) {
    if (!conflict_) {
      auto first = std::get<Constant>(ba).symbol, second = std::get<Constant>(bb).symbol;
      if (second < first) std::swap(first, second);
      conflict_ = Conflict{first, second, explain(ids_.at(ba), ids_.at(bb))};
    }
    return false;
  }
  // A constant may link nulls of any contexts; a null-only class has one.
  if (!is_constant(ba) && !is_constant(bb) && *context_[ra] != *context_[rb])
    throw std::logic_error("equality between nulls of different contexts: " + to_string(input_.back()));

  if (ra > rb) std::swap(ra, rb);
  parent_[rb] = ra;
  if (better_representative(best_[rb], best_[ra])) best_[ra] = best_[rb];
  return true;
}

Value EqClosure::representative(const Value& v) const {
  auto it = ids_.find(v);
  return it == ids_.end() ? v : best_[root(it->second)];
}

bool EqClosure::equivalent(const Value& a, const Value& b) const {
  if (a == b) return true;
  auto ia = ids_.find(a), ib = ids_.find(b);
  return ia != ids_.end() && ib != ids_.end() && root(ia->second) == root(ib->second);
}

std::vector<std::vector<Value>> EqClosure::classes() const {
  std::map<std::size_t, std::vector<Value>> by_root;
  for (std::size_t i = 0; i < values_.size(); ++i) by_root[root(i)].push_back(values_[i]);
  std::vector<std::vector<Value>> out;
  for (auto& [r, members] : by_root) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Shortest chain of input equalities between two values (BFS).
std::vector<Equality> EqClosure::explain(std::size_t from, std::size_t to) const {
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> via(values_.size());
  std::vector<bool> seen(values_.size(), false);
  std::deque<std::size_t> queue{from};
  seen[from] = true;
  while (!queue.empty() && !seen[to]) {
    const auto x = queue.front();
    queue.pop_front();
    for (const auto& [y, eq] : edges_[x]) {
      if (seen[y]) continue;
      seen[y] = true;
      via[y] = {x, eq};
      queue.push_back(y);
    }
  }
  std::vector<Equality> path;
  for (auto x = to; via[x]; x = via[x]->first) path.push_back(input_[via[x]->second]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace tdx
