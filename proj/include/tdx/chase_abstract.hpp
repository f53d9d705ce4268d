#pragma once

#include <span>
#include <vector>

#include "tdx/chase_common.hpp"
#include "tdx/homomorphism.hpp"
#include "tdx/mapping.hpp"

namespace tdx {

// The abstract chase runs on finite abstract instances only. Unbounded
// concrete data reaches it through sem_instance at an explicit horizon.

/// Extends `h` with one fresh point-annotated null (context h(t)) per
/// existential and instantiates the rhs. Throws std::invalid_argument if `h`
/// does not map the lhs into `inst`.
std::vector<Fact> st_step_abstract(const Instance& inst, const SttTgd& rule, const Binding& h, NullSequence& nulls);

/// Union of all steps; labels N1, N2, ... in rule order, then binding order,
/// then rhs order. Throws PreconditionError for an incomplete instance.
Instance st_round_abstract(const Instance& src, std::span<const SttTgd> rules, std::span<const RelationSchema> target);

std::vector<Equality> tkc_step_abstract(const Fact& w1, const Fact& w2, const Tkc& k, const RelationSchema& rel);
std::vector<Equality> tkc_equalities_abstract(const Instance& inst, std::span<const Tkc> tkcs);

/// Throws KeyNullViolation if a keyed relation has a null in a key position.
ChaseOutcome tkc_round_abstract(const Instance& inst, std::span<const Tkc> tkcs);

ChaseOutcome chase_abstract(const Instance& src, const Mapping& m);

}  // namespace tdx
