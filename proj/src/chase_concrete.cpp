#include "tdx/chase_concrete.hpp"

#include <stdexcept>

#include "chase_internal.hpp"
#include "tdx/error.hpp"

namespace tdx {

Instance conform_to_source(const Instance& src, const Mapping& m) {
  Instance out(src.kind(), m.source);
  for (const auto& [name, rel] : src.schema()) {
    const auto* declared = m.source_relation(name);
    if (!declared) throw SchemaError("instance relation " + name + " is not a source relation of the mapping");
    if (*declared != rel) throw SchemaError("instance relation " + name + " does not match its source declaration");
  }
  for (const auto& f : src.all_facts()) out.insert(f);
  if (auto violations = validate_instance(out); !violations.empty())
    throw SchemaError(violations.front().fact + ": " + violations.front().detail);
  return out;
}

std::vector<Fact> st_step_concrete(const Instance& inst, const SttTgd& rule, const Binding& h, NullSequence& nulls) {
  if (!std::holds_alternative<Interval>(h.time))
    throw std::invalid_argument("concrete step needs an interval for the temporal variable");
  detail::check_lhs_binding(inst, rule, h);
  Binding extended = h;
  const auto& iv = std::get<Interval>(h.time);
  for (const auto& y : rule.existentials) extended.vars[y] = IntervalNull{nulls.fresh(), iv};
  std::vector<Fact> out;
  for (const auto& atom : rule.rhs) out.push_back(instantiate(atom, extended));
  return out;
}

Instance st_round_concrete(const Instance& src, std::span<const SttTgd> rules, std::span<const RelationSchema> target) {
  if (!src.is_concrete()) throw std::invalid_argument("concrete s-t round needs a concrete instance");
  if (!is_complete(src)) throw PreconditionError("the s-t ttgd round needs a complete source instance");
  if (!is_normalized(src)) throw PreconditionError("the concrete s-t ttgd round needs a normalized instance");
  Instance out(InstanceKind::Concrete, {target.begin(), target.end()});
  NullSequence nulls;
  for (const auto& rule : rules)
    for (const auto& h : enumerate_formula_homs(rule.lhs, src))
      for (auto& f : st_step_concrete(src, rule, h, nulls)) out.insert(std::move(f));
  return out;
}

std::vector<Equality> tkc_step_concrete(const Fact& u1, const Fact& u2, const Tkc& k, const RelationSchema& rel) {
  return detail::tkc_step(u1, u2, k, rel, InstanceKind::Concrete);
}

std::vector<Equality> tkc_equalities_concrete(const Instance& inst, std::span<const Tkc> tkcs) {
  if (!inst.is_concrete()) throw std::invalid_argument("concrete tkc equalities need a concrete instance");
  return detail::tkc_equalities(inst, tkcs);
}

ChaseOutcome tkc_round_concrete(const Instance& inst, std::span<const Tkc> tkcs) {
  if (!inst.is_concrete()) throw std::invalid_argument("concrete tkc round needs a concrete instance");
  if (!is_normalized(inst)) throw PreconditionError("the concrete tkc round needs a normalized instance");
  return detail::close_and_replace(inst, tkc_equalities_concrete(inst, tkcs));
}

ChaseOutcome chase_concrete(const Instance& src, const Mapping& m) {
  if (!src.is_concrete()) throw std::invalid_argument("the concrete chase needs a concrete source");
  const Instance conformed = conform_to_source(src, m);
  if (!is_complete(conformed)) throw PreconditionError("source instances must be complete");
  const Instance target = st_round_concrete(normalize_instance(conformed), m.sttgds, m.target);
  return tkc_round_concrete(target, m.tkcs);
}

}  // namespace tdx
