#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdx/mapping.hpp"
#include "tdx/model.hpp"

namespace tdx {

/// A formula homomorphism: values for the data variables of a conjunction of
/// atoms plus the value of its single temporal variable (an interval on a
/// concrete instance, a point on an abstract one).
struct Binding {
  std::map<std::string, Value> vars;
  FactTime time;

  auto operator<=>(const Binding&) const = default;
};

/// The fact `atom` denotes under `b`. Throws std::invalid_argument if a
/// variable of the atom is unbound.
Fact instantiate(const Atom& atom, const Binding& b);

/// All bindings under which every atom is a fact of `inst`, sorted.
/// Constants in atoms are matched, never bound. On a concrete instance all
/// atoms must sit on the very same interval, so un-normalized instances may
/// yield fewer bindings than their semantics would.
/// Throws SchemaError for relations unknown to `inst` or arity mismatches.
std::vector<Binding> enumerate_formula_homs(std::span<const Atom> atoms, const Instance& inst);

/// Abstract homomorphism restricted to nulls: constants and time points are
/// fixed implicitly. Every null of the source instance has an entry.
using AbstractHom = std::map<PointNull, Value>;

/// Image of an abstract instance under `h`; nulls without an entry are kept.
Instance apply_hom(const AbstractHom& h, const Instance& inst);

/// Searches for an abstract homomorphism from `a` into `b`: constants and
/// time points map to themselves, each N^t maps to a constant or to a null
/// with context t, and every fact of `a` lands in `b`.
///
/// The search splits `a` into components of facts linked by shared nulls and
/// solves each by backtracking over candidate facts of `b`, always branching
/// on the fact with the fewest consistent candidates. Ties fall back to
/// canonical fact order, so the result is reproducible.
///
/// Throws std::invalid_argument unless both instances are abstract.
std::optional<AbstractHom> find_abstract_hom(const Instance& a, const Instance& b);

/// Homomorphisms exist in both directions.
bool hom_equivalent(const Instance& a, const Instance& b);

}  // namespace tdx
