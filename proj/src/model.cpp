#include "tdx/model.hpp"

#include <algorithm>
#include <sstream>

#include "tdx/error.hpp"

namespace tdx {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const std::set<Fact> kNoFacts;

std::vector<Interval> intervals_of(const Instance& inst) {
  std::vector<Interval> out;
  for (const auto& f : inst.all_facts())
    if (f.is_concrete()) out.push_back(f.interval());
  return out;
}

void check_horizon(const Fact& fact, TimePoint horizon) {
  if (horizon.is_infinite()) throw InvalidHorizon("horizon must be finite");
  if (!fact.is_concrete()) throw std::invalid_argument("sem_fact expects a concrete fact: " + to_string(fact));
  const auto& iv = fact.interval();
  if (horizon < iv.start() || (iv.end().is_finite() && horizon < iv.end()))
    throw InvalidHorizon("horizon " + horizon.to_string() + " is below an endpoint of " + to_string(fact));
}

}  // namespace

std::string to_string(const Value& v) {
  return std::visit(overloaded{
                        [](const Constant& c) { return c.symbol; },
                        [](const IntervalNull& n) { return n.label + "^" + n.context.to_string(); },
                        [](const PointNull& n) { return n.label + "^" + n.context.to_string(); },
                    },
                    v);
}

std::string to_string(const FactTime& t) {
  return std::visit([](const auto& x) { return x.to_string(); }, t);
}

std::string_view to_string(InstanceKind kind) { return kind == InstanceKind::Concrete ? "concrete" : "abstract"; }

std::optional<std::size_t> RelationSchema::position_of(std::string_view attribute) const {
  auto it = std::find(attributes.begin(), attributes.end(), attribute);
  if (it == attributes.end()) return std::nullopt;
  return static_cast<std::size_t>(it - attributes.begin());
}

bool Fact::has_null() const { return std::any_of(values.begin(), values.end(), is_null); }

std::string to_string(const Fact& f) {
  std::ostringstream os;
  os << f.relation << '(';
  for (const auto& v : f.values) os << to_string(v) << ", ";
  os << to_string(f.time) << ')';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Fact& f) { return os << to_string(f); }

Instance::Instance(InstanceKind kind, const std::vector<RelationSchema>& schema) : kind_(kind) {
  for (const auto& rel : schema) add_relation(rel);
}

std::vector<RelationSchema> Instance::schema_list() const {
  std::vector<RelationSchema> out;
  for (const auto& [name, rel] : schema_) out.push_back(rel);
  return out;
}

const RelationSchema* Instance::relation(std::string_view name) const {
  auto it = schema_.find(name);
  return it == schema_.end() ? nullptr : &it->second;
}

void Instance::add_relation(const RelationSchema& rel) {
  auto [it, inserted] = schema_.emplace(rel.name, rel);
  if (!inserted && it->second != rel) throw SchemaError("conflicting declarations of relation " + rel.name);
}

bool Instance::insert(Fact fact) {
  auto& bucket = facts_[fact.relation];
  return bucket.insert(std::move(fact)).second;
}

bool Instance::contains(const Fact& fact) const {
  auto it = facts_.find(fact.relation);
  return it != facts_.end() && it->second.count(fact) > 0;
}

const std::set<Fact>& Instance::facts(std::string_view relation) const {
  auto it = facts_.find(relation);
  return it == facts_.end() ? kNoFacts : it->second;
}

std::vector<Fact> Instance::all_facts() const {
  std::vector<Fact> out;
  out.reserve(size());
  for (const auto& [name, bucket] : facts_) out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

std::size_t Instance::size() const {
  std::size_t n = 0;
  for (const auto& [name, bucket] : facts_) n += bucket.size();
  return n;
}

std::string_view to_string(InstanceViolation::Rule rule) {
  switch (rule) {
    case InstanceViolation::Rule::UnknownRelation: return "unknown-relation";
    case InstanceViolation::Rule::ArityMismatch: return "arity-mismatch";
    case InstanceViolation::Rule::KindViolation: return "kind-violation";
    case InstanceViolation::Rule::ContextMismatch: return "context-mismatch";
    case InstanceViolation::Rule::InvalidTime: return "invalid-time";
  }
  return "unknown";
}

std::vector<InstanceViolation> validate_instance(const Instance& inst) {
  using Rule = InstanceViolation::Rule;
  std::vector<InstanceViolation> out;
  for (const auto& f : inst.all_facts()) {
    const std::string where = to_string(f);
    const auto* rel = inst.relation(f.relation);
    if (!rel) {
      out.push_back({Rule::UnknownRelation, where, "relation " + f.relation + " is not declared"});
    } else if (rel->arity() != f.values.size()) {
      out.push_back({Rule::ArityMismatch, where,
                     "expected " + std::to_string(rel->arity()) + " values, got " + std::to_string(f.values.size())});
    }
    if (inst.is_concrete() != f.is_concrete()) {
      out.push_back({Rule::KindViolation, where, "fact time does not match a " + std::string(to_string(inst.kind())) +
                                                     " instance"});
      continue;
    }
    if (!f.is_concrete() && f.point().is_infinite())
      out.push_back({Rule::InvalidTime, where, "abstract fact at infinity"});
    for (const auto& v : f.values) {
      if (const auto* in = std::get_if<IntervalNull>(&v)) {
        if (!f.is_concrete())
          out.push_back({Rule::KindViolation, where, "interval-annotated null in an abstract fact"});
        else if (in->context != f.interval())
          out.push_back({Rule::ContextMismatch, where, "null " + to_string(v) + " is not annotated with the fact interval"});
      } else if (const auto* pn = std::get_if<PointNull>(&v)) {
        if (f.is_concrete())
          out.push_back({Rule::KindViolation, where, "point-annotated null in a concrete fact"});
        else if (pn->context != f.point())
          out.push_back({Rule::ContextMismatch, where, "null " + to_string(v) + " is not annotated with the fact time"});
      }
    }
  }
  return out;
}

bool is_complete(const Instance& inst) {
  for (const auto& f : inst.all_facts())
    if (f.has_null()) return false;
  return true;
}

bool is_normalized(const Instance& inst) {
  auto ivs = intervals_of(inst);
  std::sort(ivs.begin(), ivs.end());
  ivs.erase(std::unique(ivs.begin(), ivs.end()), ivs.end());
  // Distinct intervals sorted by start: pairwise disjoint iff neighbours are.
  for (std::size_t i = 1; i < ivs.size(); ++i)
    if (!disjoint(ivs[i - 1], ivs[i])) return false;
  return true;
}

std::optional<TimePoint> max_finite_endpoint(const Instance& inst) {
  std::optional<TimePoint> best;
  auto see = [&](TimePoint t) {
    if (t.is_finite() && (!best || *best < t)) best = t;
  };
  for (const auto& f : inst.all_facts()) {
    if (f.is_concrete()) {
      see(f.interval().start());
      see(f.interval().end());
    } else {
      see(f.point());
    }
  }
  return best;
}

std::vector<Fact> sem_fact(const Fact& fact, TimePoint horizon) {
  check_horizon(fact, horizon);
  const auto& iv = fact.interval();
  const auto stop = std::min(iv.end(), horizon).value();
  std::vector<Fact> out;
  for (auto t = iv.start().value(); t < stop; ++t) {
    Fact point_fact{fact.relation, {}, TimePoint(t)};
    point_fact.values.reserve(fact.values.size());
    for (const auto& v : fact.values) {
      if (const auto* n = std::get_if<IntervalNull>(&v))
        point_fact.values.emplace_back(PointNull{n->label, TimePoint(t)});
      else
        point_fact.values.push_back(v);
    }
    out.push_back(std::move(point_fact));
  }
  return out;
}

Instance sem_instance(const Instance& inst, TimePoint horizon) {
  if (!inst.is_concrete()) throw std::invalid_argument("sem_instance expects a concrete instance");
  Instance out(InstanceKind::Abstract, inst.schema_list());
  for (const auto& f : inst.all_facts())
    for (auto& g : sem_fact(f, horizon)) out.insert(std::move(g));
  return out;
}

Instance normalize_instance(const Instance& inst) {
  if (!inst.is_concrete()) throw std::invalid_argument("normalize_instance expects a concrete instance");
  const auto ivs = intervals_of(inst);
  const auto grid = build_grid(ivs);
  Instance out = inst.empty_copy();
  for (const auto& f : inst.all_facts()) {
    for (const auto& piece : split_interval(f.interval(), grid)) {
      Fact g{f.relation, f.values, piece};
      for (auto& v : g.values)
        if (auto* n = std::get_if<IntervalNull>(&v)) n->context = piece;
      out.insert(std::move(g));
    }
  }
  return out;
}

}  // namespace tdx
