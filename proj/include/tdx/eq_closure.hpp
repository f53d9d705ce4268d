#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdx/model.hpp"

namespace tdx {

struct Equality {
  Value lhs;
  Value rhs;

  auto operator<=>(const Equality&) const = default;
};

std::string to_string(const Equality& e);

/// Two distinct constants were equated. `trace` is a chain of input
/// equalities linking them.
struct Conflict {
  std::string first;
  std::string second;
  std::vector<Equality> trace;
};

/// Symmetric-transitive closure of a set of equalities over values, kept as
/// a disjoint-set forest.
///
/// Each class elects a representative: its constant if it has one, otherwise
/// the null that is least by (label, context). The nulls of a class without a
/// constant must share one context; equating two such classes across
/// contexts is a logic error. A constant may join nulls of any contexts.
class EqClosure {
 public:
  /// Adds a = b. Returns false if this equates two distinct constants; the
  /// first such conflict is kept and the two classes stay apart.
  bool merge(const Value& a, const Value& b);

  bool failed() const { return conflict_.has_value(); }
  const std::optional<Conflict>& conflict() const { return conflict_; }

  /// Representative of v's class; v itself if v was never merged.
  Value representative(const Value& v) const;
  bool equivalent(const Value& a, const Value& b) const;

  /// Every class with at least two members, each sorted, in sorted order.
  std::vector<std::vector<Value>> classes() const;

 private:
  std::size_t id(const Value& v);
  std::size_t root(std::size_t x) const;
  std::vector<Equality> explain(std::size_t from, std::size_t to) const;

  std::map<Value, std::size_t> ids_;
  std::vector<Value> values_;
  mutable std::vector<std::size_t> parent_;
  std::vector<Value> best_;                     // per root
  std::vector<std::optional<FactTime>> context_;  // per value; read at roots of null-only classes
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> edges_;  // (neighbour, equality index)
  std::vector<Equality> input_;
  std::optional<Conflict> conflict_;
};

}  // namespace tdx
