#include "tdx/chase_abstract.hpp"

#include <stdexcept>

#include "chase_internal.hpp"
#include "tdx/chase_concrete.hpp"
#include "tdx/error.hpp"

namespace tdx {

std::vector<Fact> st_step_abstract(const Instance& inst, const SttTgd& rule, const Binding& h, NullSequence& nulls) {
  if (!std::holds_alternative<TimePoint>(h.time))
    throw std::invalid_argument("abstract step needs a time point for the temporal variable");
  detail::check_lhs_binding(inst, rule, h);
  Binding extended = h;
  const auto t = std::get<TimePoint>(h.time);
  for (const auto& y : rule.existentials) extended.vars[y] = PointNull{nulls.fresh(), t};
  std::vector<Fact> out;
  for (const auto& atom : rule.rhs) out.push_back(instantiate(atom, extended));
  return out;
}

Instance st_round_abstract(const Instance& src, std::span<const SttTgd> rules, std::span<const RelationSchema> target) {
  if (!src.is_abstract()) throw std::invalid_argument("abstract s-t round needs an abstract instance");
  if (!is_complete(src)) throw PreconditionError("the s-t ttgd round needs a complete source instance");
  Instance out(InstanceKind::Abstract, {target.begin(), target.end()});
  NullSequence nulls;
  for (const auto& rule : rules)
    for (const auto& h : enumerate_formula_homs(rule.lhs, src))
      for (auto& f : st_step_abstract(src, rule, h, nulls)) out.insert(std::move(f));
  return out;
}

std::vector<Equality> tkc_step_abstract(const Fact& w1, const Fact& w2, const Tkc& k, const RelationSchema& rel) {
  return detail::tkc_step(w1, w2, k, rel, InstanceKind::Abstract);
}

std::vector<Equality> tkc_equalities_abstract(const Instance& inst, std::span<const Tkc> tkcs) {
  if (!inst.is_abstract()) throw std::invalid_argument("abstract tkc equalities need an abstract instance");
  return detail::tkc_equalities(inst, tkcs);
}

ChaseOutcome tkc_round_abstract(const Instance& inst, std::span<const Tkc> tkcs) {
  return detail::close_and_replace(inst, tkc_equalities_abstract(inst, tkcs));
}

ChaseOutcome chase_abstract(const Instance& src, const Mapping& m) {
  if (!src.is_abstract()) throw std::invalid_argument("the abstract chase needs an abstract source");
  const Instance conformed = conform_to_source(src, m);
  if (!is_complete(conformed)) throw PreconditionError("source instances must be complete");
  return tkc_round_abstract(st_round_abstract(conformed, m.sttgds, m.target), m.tkcs);
}

}  // namespace tdx
