#pragma once

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tdx/chase_common.hpp"
#include "tdx/mapping.hpp"
#include "tdx/model.hpp"

namespace tdx {

/// One complete answer: constants for the non-temporal head variables plus
/// the time value (an interval for concrete answers, a point for abstract).
struct Answer {
  std::vector<std::string> values;
  FactTime time;

  auto operator<=>(const Answer&) const = default;
};

struct AnswerSet {
  std::string query;
  std::vector<std::string> head;  // temporal variable last
  InstanceKind kind = InstanceKind::Concrete;
  std::set<Answer> answers;

  bool operator==(const AnswerSet&) const = default;
};

/// The exchange has no solution; the query is not evaluated.
struct NoSolution {
  Conflict conflict;
};

using CertainAnswers = std::variant<AnswerSet, NoSolution>;

/// Naive evaluation: nulls only ever match themselves, so they behave as
/// distinct fresh constants, and any answer binding a head variable to a null
/// is dropped. A concrete instance must be normalized (PreconditionError);
/// relations unknown to the instance raise SchemaError.
AnswerSet naive_eval(const Ucq& q, const Instance& inst);

/// Expands concrete answers point by point below `horizon`. Throws
/// InvalidHorizon if horizon is infinite or below a finite endpoint.
AnswerSet answers_sem(const AnswerSet& ans, TimePoint horizon);

/// Chase then naive evaluation; NoSolution if the chase fails.
CertainAnswers certain_concrete(const Ucq& q, const Instance& src, const Mapping& m);
CertainAnswers certain_abstract(const Ucq& q, const Instance& src, const Mapping& m);

}  // namespace tdx
