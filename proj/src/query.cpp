#include "tdx/query.hpp"

#include <algorithm>
#include <stdexcept>

#include "tdx/chase_abstract.hpp"
#include "tdx/chase_concrete.hpp"
#include "tdx/error.hpp"
#include "tdx/homomorphism.hpp"

namespace tdx {

namespace {

AnswerSet empty_answers(const Ucq& q, InstanceKind kind) {
  AnswerSet out;
  out.query = q.name;
  out.kind = kind;
  if (!q.disjuncts.empty()) out.head = q.disjuncts.front().head;
  return out;
}

CertainAnswers evaluate_outcome(const Ucq& q, const ChaseOutcome& outcome) {
  if (!outcome.ok()) return NoSolution{outcome.failure()};
  return naive_eval(q, outcome.instance());
}

}  // namespace

AnswerSet naive_eval(const Ucq& q, const Instance& inst) {
  if (inst.is_concrete() && !is_normalized(inst))
    throw PreconditionError("naive evaluation needs a normalized concrete instance");
  AnswerSet out = empty_answers(q, inst.kind());
  for (const auto& cq : q.disjuncts) {
    if (cq.head.empty()) throw std::invalid_argument("query " + q.name + " has an empty head");
    for (const auto& h : enumerate_formula_homs(cq.body, inst)) {
      Answer a{{}, h.time};
      bool complete = true;
      for (std::size_t i = 0; i + 1 < cq.head.size() && complete; ++i) {
        const auto it = h.vars.find(cq.head[i]);
        if (it == h.vars.end()) throw std::invalid_argument("unsafe head variable " + cq.head[i]);
        if (const auto* c = std::get_if<Constant>(&it->second))
          a.values.push_back(c->symbol);
        else
          complete = false;
      }
      if (complete) out.answers.insert(std::move(a));
    }
  }
  return out;
}

AnswerSet answers_sem(const AnswerSet& ans, TimePoint horizon) {
  if (ans.kind != InstanceKind::Concrete) throw std::invalid_argument("answers_sem needs concrete answers");
  if (horizon.is_infinite()) throw InvalidHorizon("horizon must be finite");
  AnswerSet out = ans;
  out.kind = InstanceKind::Abstract;
  out.answers.clear();
  for (const auto& a : ans.answers) {
    const auto& iv = std::get<Interval>(a.time);
    if (horizon < iv.start() || (iv.end().is_finite() && horizon < iv.end()))
      throw InvalidHorizon("horizon " + horizon.to_string() + " is below an endpoint of " + iv.to_string());
    const auto stop = std::min(iv.end(), horizon);
    for (auto t = iv.start().value(); t < stop.value(); ++t) out.answers.insert({a.values, TimePoint(t)});
  }
  return out;
}

CertainAnswers certain_concrete(const Ucq& q, const Instance& src, const Mapping& m) {
  return evaluate_outcome(q, chase_concrete(src, m));
}

CertainAnswers certain_abstract(const Ucq& q, const Instance& src, const Mapping& m) {
  return evaluate_outcome(q, chase_abstract(src, m));
}

}  // namespace tdx
