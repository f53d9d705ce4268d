#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tdx/chase_common.hpp"
#include "tdx/error.hpp"
#include "tdx/homomorphism.hpp"
#include "tdx/mapping.hpp"

// Helpers shared by the concrete and abstract chases. Both views group facts
// by (key values, time) and close the step equalities the same way; only the
// time representation differs.
namespace tdx::detail {

// Throws std::invalid_argument unless `h` maps every lhs atom into `inst`.
inline void check_lhs_binding(const Instance& inst, const SttTgd& rule, const Binding& h) {
  for (const auto& atom : rule.lhs) {
    const Fact f = instantiate(atom, h);
    if (!inst.contains(f)) throw std::invalid_argument("binding does not map the lhs into the instance: " + to_string(f));
  }
}

inline const RelationSchema& keyed_relation(const Instance& inst, const Tkc& k) {
  const auto* rel = inst.relation(k.relation);
  if (!rel) throw SchemaError("key constraint on " + k.relation + ", which is not in the instance schema");
  return *rel;
}

inline void check_key_not_null(const Fact& f, const KeyPositions& pos) {
  for (auto p : pos.key)
    if (is_null(f.values[p])) throw KeyNullViolation("null in a key position of " + to_string(f));
}

inline bool same_key(const Fact& a, const Fact& b, const KeyPositions& pos) {
  if (a.relation != b.relation || a.time != b.time) return false;
  return std::all_of(pos.key.begin(), pos.key.end(), [&](auto p) { return a.values[p] == b.values[p]; });
}

// Checks the step precondition shared by both views, then emits one equality
// per differing dependent position.
inline std::vector<Equality> tkc_step(const Fact& u1, const Fact& u2, const Tkc& k, const RelationSchema& rel,
                                      InstanceKind kind) {
  const auto pos = resolve_key(k, rel);
  const bool concrete = kind == InstanceKind::Concrete;
  for (const auto* f : {&u1, &u2}) {
    if (f->relation != k.relation || f->values.size() != rel.arity() || f->is_concrete() != concrete)
      throw std::invalid_argument("fact " + to_string(*f) + " is not a " + std::string(to_string(kind)) + " " +
                                  k.relation + " fact");
    check_key_not_null(*f, pos);
  }
  if (!same_key(u1, u2, pos) || u1 == u2)
    throw std::invalid_argument("facts do not conflict: " + to_string(u1) + ", " + to_string(u2));
  std::vector<Equality> out;
  for (auto p : pos.dependents)
    if (u1.values[p] != u2.values[p]) out.push_back({u1.values[p], u2.values[p]});
  return out;
}

// All step equalities: tkcs in order, groups in (key values, time) order,
// pairs i < j within a group. Every fact of a keyed relation is checked for
// nulls in key positions, conflicting or not.
inline std::vector<Equality> tkc_equalities(const Instance& inst, std::span<const Tkc> tkcs) {
  std::vector<Equality> out;
  for (const auto& k : tkcs) {
    const auto& rel = keyed_relation(inst, k);
    const auto pos = resolve_key(k, rel);
    std::map<std::pair<std::vector<Value>, FactTime>, std::vector<const Fact*>> groups;
    for (const auto& f : inst.facts(k.relation)) {
      check_key_not_null(f, pos);
      std::vector<Value> key;
      for (auto p : pos.key) key.push_back(f.values[p]);
      groups[{std::move(key), f.time}].push_back(&f);
    }
    for (const auto& [key, members] : groups)
      for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
          for (auto& e : tkc_step(*members[i], *members[j], k, rel, inst.kind())) out.push_back(std::move(e));
  }
  return out;
}

// Closes the equalities and replaces every null by its representative at once.
inline ChaseOutcome close_and_replace(const Instance& inst, const std::vector<Equality>& equalities) {
  EqClosure closure;
  for (const auto& e : equalities)
    if (!closure.merge(e.lhs, e.rhs)) return ChaseOutcome::failure(*closure.conflict());
  Instance out = inst.empty_copy();
  for (auto f : inst.all_facts()) {
    for (auto& v : f.values)
      if (is_null(v)) v = closure.representative(v);
    out.insert(std::move(f));
  }
  return ChaseOutcome::success(std::move(out));
}

}  // namespace tdx::detail
