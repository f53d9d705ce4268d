#pragma once

#include <span>
#include <vector>

#include "tdx/chase_common.hpp"
#include "tdx/homomorphism.hpp"
#include "tdx/mapping.hpp"

namespace tdx {

/// One s-t ttgd step on a normalized complete concrete instance: extends `h`
/// with one fresh interval-annotated null (context h(t)) per existential
/// variable and instantiates the rhs. A null is shared by every occurrence of
/// its variable. Throws std::invalid_argument if `h` does not map the lhs
/// into `inst`.
std::vector<Fact> st_step_concrete(const Instance& inst, const SttTgd& rule, const Binding& h, NullSequence& nulls);

/// Union of all steps for every rule (file order) and every lhs binding
/// (sorted order). The result is over `target` and stays normalized.
/// Throws PreconditionError unless `src` is normalized and complete.
Instance st_round_concrete(const Instance& src, std::span<const SttTgd> rules, std::span<const RelationSchema> target);

/// Equalities between the dependent values of two conflicting facts,
/// identical pairs omitted. Throws KeyNullViolation if a key position holds
/// a null and std::invalid_argument if the facts do not conflict.
std::vector<Equality> tkc_step_concrete(const Fact& u1, const Fact& u2, const Tkc& k, const RelationSchema& rel);

/// Every step equality over all conflicting pairs and all tkcs, in
/// deterministic order.
std::vector<Equality> tkc_equalities_concrete(const Instance& inst, std::span<const Tkc> tkcs);

/// Closes the step equalities; fails if two distinct constants are equated,
/// otherwise replaces every null by its class representative at once.
/// Throws PreconditionError on non-normalized input and KeyNullViolation if a
/// keyed relation has a null in a key position.
ChaseOutcome tkc_round_concrete(const Instance& inst, std::span<const Tkc> tkcs);

/// normalize, s-t ttgd round, tkc round. Throws PreconditionError for an
/// incomplete source and SchemaError if it does not fit the source schema.
ChaseOutcome chase_concrete(const Instance& src, const Mapping& m);

/// Source instance re-declared over the mapping's full source schema.
/// Shared by both chases; throws SchemaError on mismatch.
Instance conform_to_source(const Instance& src, const Mapping& m);

}  // namespace tdx
