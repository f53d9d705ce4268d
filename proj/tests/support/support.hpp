#pragma once

// Test-only fixtures, oracles and random generators. The oracles here are
// deliberately naive and share no search code with the library.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tdx/mapping.hpp"
#include "tdx/model.hpp"

namespace tdx::test {

// ---- fixtures --------------------------------------------------------------

std::string data_path(const std::string& name);
std::string read_file(const std::string& path);
Instance load_instance(const std::string& name);
Mapping load_mapping(const std::string& name);

// ---- construction shorthands -------------------------------------------------

Value c(const std::string& symbol);
Value inull(const std::string& label, TimePoint::rep s, TimePoint::rep e);
Value pnull(const std::string& label, TimePoint::rep t);
Fact cfact(const std::string& rel, std::vector<Value> values, TimePoint::rep s, TimePoint::rep e);
Fact cfact_unbounded(const std::string& rel, std::vector<Value> values, TimePoint::rep s);
Fact afact(const std::string& rel, std::vector<Value> values, TimePoint::rep t);
RelationSchema schema(const std::string& name, std::vector<std::string> attrs);
Instance make_instance(InstanceKind kind, std::vector<RelationSchema> rels, const std::vector<Fact>& facts);

// ---- oracles ----------------------------------------------------------------

/// Finite points of an interval below `horizon`, by enumeration.
std::set<TimePoint::rep> points_below(const Interval& iv, TimePoint::rep horizon);

/// (relation, constant-or-null-label values, time point) triples of the
/// abstract view, built point by point without touching sem_instance.
/// Null labels are kept, so two views compare equal only under identical
/// labelling.
std::set<std::tuple<std::string, std::vector<std::string>, TimePoint::rep>> expand_points(const Instance& concrete,
                                                                                        TimePoint::rep horizon);

/// Exhaustive existence test for an abstract homomorphism a -> b. Each null
/// N^t of `a` ranges over every constant of `b` and every null of `b` with
/// context t; nulls are assigned in first-occurrence order and a fact is
/// checked as soon as its last null is fixed.
bool brute_force_hom_exists(const Instance& a, const Instance& b);

/// Total number of null-assignment nodes the last brute_force_hom_exists
/// call visited (for reporting only).
std::uint64_t brute_force_last_nodes();

/// Checks every condition an abstract homomorphism must meet and that the
/// image of every fact of `a` lies in `b`.
bool is_valid_abstract_hom(const std::map<PointNull, Value>& h, const Instance& a, const Instance& b);

/// True iff some pair of same-relation facts agree on the key positions and
/// time but differ elsewhere.
bool violates_tkc(const Instance& inst, const Tkc& k);

// ---- random generation ---------------------------------------------------------

struct Case {
  Mapping mapping;
  Instance source{InstanceKind::Concrete};  // complete, concrete
};

struct GenLimits {
  int max_source_relations = 3;
  int max_target_relations = 3;
  int max_facts = 5;
  TimePoint::rep max_endpoint = 8;
  int max_rules = 3;
  int max_existentials = 2;
  int max_disjuncts = 2;
  int max_query_atoms = 3;
  bool normalized = true;
};

class Generator {
 public:
  explicit Generator(std::uint64_t seed, GenLimits limits = {}) : rng_(seed), limits_(limits) {}

  /// A valid mapping with tkcs whose key positions never receive
  /// existentials, a complete source (normalized when limits.normalized)
  /// and 1 to 3 UCQs over the target.
  Case next_case();

  /// A UCQ over the target schema of `m`.
  Ucq random_ucq(const Mapping& m, const std::string& name);

  std::mt19937_64& rng() { return rng_; }
  int uniform(int lo, int hi);
  bool chance(double p);

 private:
  std::vector<RelationSchema> random_schema(const std::string& prefix, int max_relations);
  Instance random_source(const std::vector<RelationSchema>& rels);
  Atom random_lhs_atom(const RelationSchema& rel, std::vector<std::string>& vars);
  std::string pick(const std::vector<std::string>& pool);

  std::mt19937_64 rng_;
  GenLimits limits_;
};

/// Constant pool shared by generated sources, rules and queries.
const std::vector<std::string>& constant_pool();

}  // namespace tdx::test
