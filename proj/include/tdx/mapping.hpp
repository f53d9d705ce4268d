#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdx/model.hpp"

namespace tdx {

/// A non-temporal argument of an atom: a variable or a quoted constant.
struct Term {
  enum class Kind { Variable, Constant };
  Kind kind = Kind::Variable;
  std::string text;

  static Term variable(std::string name) { return {Kind::Variable, std::move(name)}; }
  static Term constant(std::string symbol) { return {Kind::Constant, std::move(symbol)}; }
  bool is_variable() const { return kind == Kind::Variable; }

  auto operator<=>(const Term&) const = default;
};

/// R(args..., t): the temporal argument is always a variable in last position.
struct Atom {
  std::string relation;
  std::vector<Term> args;
  std::string time_var;

  auto operator<=>(const Atom&) const = default;
};

/// Source-to-target temporal tgd: lhs(x, t) -> exists y. rhs(x, y, t).
struct SttTgd {
  std::vector<Atom> lhs;
  std::vector<Atom> rhs;
  /// In order of first occurrence in the rhs.
  std::vector<std::string> existentials;

  bool is_existential(std::string_view var) const;
  auto operator<=>(const SttTgd&) const = default;
};

/// Temporal key constraint: the key attributes (which always include the
/// temporal attribute) determine the remaining (dependent) attributes.
struct Tkc {
  std::string relation;
  /// Key attributes as written; the temporal attribute appears with a
  /// leading '@' (e.g. {"name", "@time"}).
  std::vector<std::string> key;

  auto operator<=>(const Tkc&) const = default;
};

/// Key and dependent positions of a tkc resolved against its relation.
/// Positions index the non-temporal values of a fact; time is always keyed.
struct KeyPositions {
  std::vector<std::size_t> key;
  std::vector<std::size_t> dependents;
};

/// Throws SchemaError if the tkc does not fit the relation.
KeyPositions resolve_key(const Tkc& tkc, const RelationSchema& rel);

/// One disjunct: head(vars..., t) :- body. Body variables not in the head
/// are existentially quantified.
struct ConjunctiveQuery {
  std::vector<std::string> head;
  std::vector<Atom> body;

  const std::string& time_var() const { return head.back(); }
  auto operator<=>(const ConjunctiveQuery&) const = default;
};

struct Ucq {
  std::string name;
  std::vector<ConjunctiveQuery> disjuncts;

  /// Non-temporal head arity.
  std::size_t arity() const { return disjuncts.empty() ? 0 : disjuncts.front().head.size() - 1; }
  auto operator<=>(const Ucq&) const = default;
};

struct Mapping {
  std::vector<RelationSchema> source;
  std::vector<RelationSchema> target;
  std::vector<SttTgd> sttgds;
  std::vector<Tkc> tkcs;
  std::vector<Ucq> queries;

  const RelationSchema* source_relation(std::string_view name) const;
  const RelationSchema* target_relation(std::string_view name) const;
  const Ucq* query(std::string_view name) const;

  auto operator<=>(const Mapping&) const = default;
};

struct MappingViolation {
  enum class Item { Schema, Rule, Key, Query };
  std::string code;
  std::string message;
  Item item;
  /// Index into the corresponding Mapping vector (source then target for Schema).
  std::size_t index;
};

/// Checks schema sides, arities, the single temporal variable, safety and
/// existential placement, tkc shape and query heads.
std::vector<MappingViolation> validate_mapping(const Mapping& m);

/// Parses the line-oriented mapping language; '#' starts a comment.
///
///   source Employee1(name, company, @time).
///   target Emp(name, position, company, @time).
///   rule Employee1(n, c, t) -> Emp(n, ?p, c, t), Sal(n, ?p, ?s, t).
///   key Emp(name, @time).
///   query q1(n, p, t) :- Emp(n, p, c, t).
///
/// Query statements sharing a name become disjuncts of one UCQ. The result is
/// validated; the first violation is thrown as a ParseError located at the
/// offending statement.
Mapping parse_mapping(std::string_view text);

/// Canonical text form; parse_mapping(render_mapping(m)) == m for valid m.
std::string render_mapping(const Mapping& m);

}  // namespace tdx
