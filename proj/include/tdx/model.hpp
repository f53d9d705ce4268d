#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tdx/temporal.hpp"

namespace tdx {

struct Constant {
  std::string symbol;
  auto operator<=>(const Constant&) const = default;
};

/// Null annotated with the interval of the concrete fact it occurs in.
struct IntervalNull {
  std::string label;
  Interval context;
  auto operator<=>(const IntervalNull&) const = default;
};

/// Null annotated with the time point of the abstract fact it occurs in.
struct PointNull {
  std::string label;
  TimePoint context;
  auto operator<=>(const PointNull&) const = default;
};

/// Annotated nulls are equal iff label and context are identical.
using Value = std::variant<Constant, IntervalNull, PointNull>;

inline Value constant(std::string symbol) { return Constant{std::move(symbol)}; }
inline bool is_constant(const Value& v) { return std::holds_alternative<Constant>(v); }
inline bool is_null(const Value& v) { return !is_constant(v); }
std::string to_string(const Value& v);

/// Time of a fact: a point (abstract) or a clopen interval (concrete).
using FactTime = std::variant<TimePoint, Interval>;
std::string to_string(const FactTime& t);

enum class InstanceKind { Concrete, Abstract };
std::string_view to_string(InstanceKind kind);

/// A relation symbol with its ordered non-temporal attributes; the temporal
/// attribute is always the last position.
struct RelationSchema {
  std::string name;
  std::vector<std::string> attributes;
  std::string temporal_attribute;

  std::size_t arity() const { return attributes.size(); }
  /// Position of a non-temporal attribute, or nullopt.
  std::optional<std::size_t> position_of(std::string_view attribute) const;
  auto operator<=>(const RelationSchema&) const = default;
};

struct Fact {
  std::string relation;
  std::vector<Value> values;
  FactTime time;

  bool is_concrete() const { return std::holds_alternative<Interval>(time); }
  const Interval& interval() const { return std::get<Interval>(time); }
  TimePoint point() const { return std::get<TimePoint>(time); }
  bool has_null() const;

  /// Canonical order: relation, then values, then time.
  auto operator<=>(const Fact&) const = default;
};

std::string to_string(const Fact& f);
std::ostream& operator<<(std::ostream& os, const Fact& f);

/// A finite set of facts grouped by relation symbol, tagged concrete or
/// abstract. Facts are kept in canonical order so iteration and output are
/// deterministic. Insertion does not validate; see validate_instance.
class Instance {
 public:
  explicit Instance(InstanceKind kind, const std::vector<RelationSchema>& schema = {});

  InstanceKind kind() const { return kind_; }
  bool is_concrete() const { return kind_ == InstanceKind::Concrete; }
  bool is_abstract() const { return kind_ == InstanceKind::Abstract; }

  const std::map<std::string, RelationSchema, std::less<>>& schema() const { return schema_; }
  std::vector<RelationSchema> schema_list() const;
  const RelationSchema* relation(std::string_view name) const;
  void add_relation(const RelationSchema& rel);

  /// Returns false if the fact was already present.
  bool insert(Fact fact);
  bool contains(const Fact& fact) const;

  const std::set<Fact>& facts(std::string_view relation) const;
  /// Facts of every relation, in canonical order.
  std::vector<Fact> all_facts() const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  /// Same kind and schema, no facts.
  Instance empty_copy() const { return Instance(kind_, schema_list()); }

  bool operator==(const Instance&) const = default;

 private:
  InstanceKind kind_;
  std::map<std::string, RelationSchema, std::less<>> schema_;
  std::map<std::string, std::set<Fact>, std::less<>> facts_;
};

struct InstanceViolation {
  enum class Rule { UnknownRelation, ArityMismatch, KindViolation, ContextMismatch, InvalidTime };
  Rule rule;
  std::string fact;
  std::string detail;
};
std::string_view to_string(InstanceViolation::Rule rule);

/// Checks arity, kind homogeneity and context coherence of every fact.
std::vector<InstanceViolation> validate_instance(const Instance& inst);

/// True iff no fact contains an annotated null.
bool is_complete(const Instance& inst);

/// True iff every two intervals occurring in the (concrete) instance, across
/// all relations, are equal or disjoint.
bool is_normalized(const Instance& inst);

/// Largest finite time point occurring in the instance (interval starts and
/// finite ends, or abstract time points); nullopt for an empty instance.
std::optional<TimePoint> max_finite_endpoint(const Instance& inst);

/// The abstract facts denoted by a concrete fact, restricted to points below
/// `horizon`. Each interval-annotated null N^[s,e) becomes N^t at point t.
/// Throws InvalidHorizon if horizon is infinite or below a finite endpoint.
std::vector<Fact> sem_fact(const Fact& fact, TimePoint horizon);

/// Union of sem_fact over all facts; the schema is carried over.
Instance sem_instance(const Instance& inst, TimePoint horizon);

/// Splits every fact over the endpoint grid of all intervals of the whole
/// instance. Interval-annotated nulls in a split fact keep their label and
/// take the sub-interval as context.
Instance normalize_instance(const Instance& inst);

}  // namespace tdx
