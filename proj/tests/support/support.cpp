#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tdx/json_io.hpp"

#ifndef TDX_DATA_DIR
#error "TDX_DATA_DIR must point at the fixture directory"
#endif

namespace tdx::test {

std::string data_path(const std::string& name) { return std::string(TDX_DATA_DIR) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Instance load_instance(const std::string& name) { return parse_instance_json(read_file(data_path(name))); }
Mapping load_mapping(const std::string& name) { return parse_mapping(read_file(data_path(name))); }

Value c(const std::string& symbol) { return Constant{symbol}; }
Value inull(const std::string& label, TimePoint::rep s, TimePoint::rep e) { return IntervalNull{label, Interval(s, e)}; }
Value pnull(const std::string& label, TimePoint::rep t) { return PointNull{label, TimePoint(t)}; }

// Nulls passed in with any context are re-annotated with the fact's time.
static std::vector<Value> recontext(std::vector<Value> values, const FactTime& time) {
  for (auto& v : values) {
    if (auto* n = std::get_if<IntervalNull>(&v)) n->context = std::get<Interval>(time);
    if (auto* n = std::get_if<PointNull>(&v)) n->context = std::get<TimePoint>(time);
  }
  return values;
}

Fact cfact(const std::string& rel, std::vector<Value> values, TimePoint::rep s, TimePoint::rep e) {
  const FactTime t = Interval(s, e);
  return {rel, recontext(std::move(values), t), t};
}

Fact cfact_unbounded(const std::string& rel, std::vector<Value> values, TimePoint::rep s) {
  const FactTime t = Interval::unbounded(s);
  return {rel, recontext(std::move(values), t), t};
}

Fact afact(const std::string& rel, std::vector<Value> values, TimePoint::rep t) {
  const FactTime time = TimePoint(t);
  return {rel, recontext(std::move(values), time), time};
}

RelationSchema schema(const std::string& name, std::vector<std::string> attrs) {
  return {name, std::move(attrs), "time"};
}

Instance make_instance(InstanceKind kind, std::vector<RelationSchema> rels, const std::vector<Fact>& facts) {
  Instance inst(kind, rels);
  for (const auto& f : facts) inst.insert(f);
  return inst;
}

// ---- oracles ----------------------------------------------------------------

std::set<TimePoint::rep> points_below(const Interval& iv, TimePoint::rep horizon) {
  std::set<TimePoint::rep> out;
  for (TimePoint::rep t = iv.start().value(); t < horizon; ++t)
    if (iv.is_unbounded() || t < iv.end().value()) out.insert(t);
  return out;
}

std::set<std::tuple<std::string, std::vector<std::string>, TimePoint::rep>> expand_points(const Instance& concrete,
                                                                                        TimePoint::rep horizon) {
  std::set<std::tuple<std::string, std::vector<std::string>, TimePoint::rep>> out;
  for (const auto& f : concrete.all_facts()) {
    std::vector<std::string> vals;
    for (const auto& v : f.values) {
      if (const auto* k = std::get_if<Constant>(&v))
        vals.push_back(k->symbol);
      else
        vals.push_back("_" + std::get<IntervalNull>(v).label);
    }
    for (auto t : points_below(f.interval(), horizon)) out.insert({f.relation, vals, t});
  }
  return out;
}

namespace {

std::uint64_t g_nodes = 0;

struct BruteForce {
  const Instance& b;
  std::vector<PointNull> nulls;
  std::vector<std::vector<Value>> domains;
  std::vector<std::vector<const Fact*>> checks;  // facts completed by null i
  std::map<PointNull, Value> assignment;

  Fact image(const Fact& f) const {
    Fact g = f;
    for (auto& v : g.values)
      if (const auto* n = std::get_if<PointNull>(&v)) v = assignment.at(*n);
    return g;
  }

  bool solve(std::size_t i) {
    if (i == nulls.size()) return true;
    for (const auto& candidate : domains[i]) {
      ++g_nodes;
      assignment[nulls[i]] = candidate;
      bool ok = true;
      for (const auto* f : checks[i])
        if (!b.contains(image(*f))) {
          ok = false;
          break;
        }
      if (ok && solve(i + 1)) return true;
    }
    assignment.erase(nulls[i]);
    return false;
  }
};

}  // namespace

bool brute_force_hom_exists(const Instance& a, const Instance& b) {
  g_nodes = 0;
  BruteForce bf{b, {}, {}, {}, {}};
  std::map<PointNull, std::size_t> index;
  const auto a_facts = a.all_facts();
  for (const auto& f : a_facts)
    for (const auto& v : f.values)
      if (const auto* n = std::get_if<PointNull>(&v); n && !index.count(*n)) {
        index[*n] = bf.nulls.size();
        bf.nulls.push_back(*n);
      }

  std::set<Value> constants;
  std::map<TimePoint, std::set<Value>> nulls_at;
  for (const auto& f : b.all_facts())
    for (const auto& v : f.values) {
      if (is_constant(v))
        constants.insert(v);
      else
        nulls_at[std::get<PointNull>(v).context].insert(v);
    }
  for (const auto& n : bf.nulls) {
    std::vector<Value> dom(constants.begin(), constants.end());
    for (const auto& m : nulls_at[n.context]) dom.push_back(m);
    bf.domains.push_back(std::move(dom));
  }

  bf.checks.resize(bf.nulls.size());
  for (const auto& f : a_facts) {
    std::optional<std::size_t> last;
    for (const auto& v : f.values)
      if (const auto* n = std::get_if<PointNull>(&v)) last = std::max(last.value_or(0), index[*n]);
    if (!last) {
      if (!b.contains(f)) return false;
      continue;
    }
    bf.checks[*last].push_back(&f);
  }
  return bf.solve(0);
}

std::uint64_t brute_force_last_nodes() { return g_nodes; }

bool is_valid_abstract_hom(const std::map<PointNull, Value>& h, const Instance& a, const Instance& b) {
  for (const auto& [n, v] : h)
    if (const auto* m = std::get_if<PointNull>(&v); m && m->context != n.context) return false;
  for (auto f : a.all_facts()) {
    for (auto& v : f.values) {
      if (const auto* n = std::get_if<PointNull>(&v)) {
        auto it = h.find(*n);
        if (it == h.end()) return false;
        v = it->second;
      }
    }
    if (!b.contains(f)) return false;
  }
  return true;
}

bool violates_tkc(const Instance& inst, const Tkc& k) {
  const auto* rel = inst.relation(k.relation);
  if (!rel) return false;
  std::vector<bool> keyed(rel->arity(), false);
  for (const auto& name : k.key)
    for (std::size_t i = 0; i < rel->arity(); ++i)
      if (rel->attributes[i] == name) keyed[i] = true;
  const auto& facts = inst.facts(k.relation);
  for (auto x = facts.begin(); x != facts.end(); ++x)
    for (auto y = std::next(x); y != facts.end(); ++y) {
      if (x->time != y->time) continue;
      bool same_key = true, differ = false;
      for (std::size_t i = 0; i < rel->arity(); ++i) {
        if (keyed[i] && x->values[i] != y->values[i]) same_key = false;
        if (!keyed[i] && x->values[i] != y->values[i]) differ = true;
      }
      if (same_key && differ) return true;
    }
  return false;
}

// ---- random generation ---------------------------------------------------------

const std::vector<std::string>& constant_pool() {
  static const std::vector<std::string> pool{"a", "b", "c"};
  return pool;
}

int Generator::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
bool Generator::chance(double p) { return std::bernoulli_distribution(p)(rng_); }
std::string Generator::pick(const std::vector<std::string>& pool) {
  return pool[static_cast<std::size_t>(uniform(0, static_cast<int>(pool.size()) - 1))];
}

std::vector<RelationSchema> Generator::random_schema(const std::string& prefix, int max_relations) {
  std::vector<RelationSchema> out;
  const int n = uniform(1, max_relations);
  for (int r = 0; r < n; ++r) {
    RelationSchema rel{prefix + std::to_string(r), {}, "time"};
    const int arity = uniform(1, 3);
    for (int i = 0; i < arity; ++i) rel.attributes.push_back("a" + std::to_string(i));
    out.push_back(std::move(rel));
  }
  return out;
}

Instance Generator::random_source(const std::vector<RelationSchema>& rels) {
  Instance inst(InstanceKind::Concrete, rels);
  const auto max_e = static_cast<int>(limits_.max_endpoint);
  std::vector<Interval> cells;
  if (limits_.normalized) {
    std::set<int> grid;
    const int points = uniform(2, 4);
    while (static_cast<int>(grid.size()) < points) grid.insert(uniform(0, max_e));
    for (auto it = grid.begin(); std::next(it) != grid.end(); ++it)
      cells.emplace_back(static_cast<TimePoint::rep>(*it), static_cast<TimePoint::rep>(*std::next(it)));
    if (chance(0.3)) cells.push_back(Interval::unbounded(static_cast<TimePoint::rep>(*grid.rbegin())));
  }
  const int facts = uniform(0, limits_.max_facts);
  for (int i = 0; i < facts; ++i) {
    const auto& rel = rels[static_cast<std::size_t>(uniform(0, static_cast<int>(rels.size()) - 1))];
    std::vector<Value> values;
    for (std::size_t k = 0; k < rel.arity(); ++k) values.push_back(Constant{pick(constant_pool())});
    FactTime time = TimePoint{};
    if (limits_.normalized) {
      time = cells[static_cast<std::size_t>(uniform(0, static_cast<int>(cells.size()) - 1))];
    } else {
      const int s = uniform(0, max_e - 1);
      if (chance(0.2))
        time = Interval::unbounded(static_cast<TimePoint::rep>(s));
      else
        time = Interval(static_cast<TimePoint::rep>(s), static_cast<TimePoint::rep>(uniform(s + 1, max_e)));
    }
    inst.insert({rel.name, std::move(values), time});
  }
  return inst;
}

Atom Generator::random_lhs_atom(const RelationSchema& rel, std::vector<std::string>& vars) {
  static const std::vector<std::string> pool{"x0", "x1", "x2", "x3"};
  Atom atom{rel.name, {}, "t"};
  for (std::size_t i = 0; i < rel.arity(); ++i) {
    if (chance(0.85)) {
      auto v = pick(pool);
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
      atom.args.push_back(Term::variable(v));
    } else {
      atom.args.push_back(Term::constant(pick(constant_pool())));
    }
  }
  return atom;
}

Case Generator::next_case() {
  Case out;
  Mapping& m = out.mapping;
  m.source = random_schema("S", limits_.max_source_relations);
  m.target = random_schema("T", limits_.max_target_relations);

  std::map<std::string, std::vector<bool>> keyed;
  for (const auto& rel : m.target) {
    keyed[rel.name].assign(rel.arity(), false);
    if (!chance(0.7)) continue;
    Tkc k{rel.name, {}};
    const int key_size = uniform(0, static_cast<int>(rel.arity()) - 1);
    std::vector<std::size_t> positions(rel.arity());
    for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = i;
    std::shuffle(positions.begin(), positions.end(), rng_);
    positions.resize(static_cast<std::size_t>(key_size));
    std::sort(positions.begin(), positions.end());
    for (auto p : positions) {
      keyed[rel.name][p] = true;
      k.key.push_back(rel.attributes[p]);
    }
    k.key.push_back("@" + rel.temporal_attribute);
    m.tkcs.push_back(std::move(k));
  }

  const int rules = uniform(1, limits_.max_rules);
  for (int r = 0; r < rules; ++r) {
    SttTgd rule;
    std::vector<std::string> vars;
    const int lhs = uniform(1, 2);
    for (int i = 0; i < lhs; ++i) {
      const auto& rel = m.source[static_cast<std::size_t>(uniform(0, static_cast<int>(m.source.size()) - 1))];
      rule.lhs.push_back(random_lhs_atom(rel, vars));
    }
    const int existentials = uniform(0, limits_.max_existentials);
    const int rhs = uniform(1, 2);
    for (int i = 0; i < rhs; ++i) {
      const auto& rel = m.target[static_cast<std::size_t>(uniform(0, static_cast<int>(m.target.size()) - 1))];
      Atom atom{rel.name, {}, "t"};
      for (std::size_t p = 0; p < rel.arity(); ++p) {
        if (!keyed[rel.name][p] && existentials > 0 && chance(0.4)) {
          const auto y = "y" + std::to_string(uniform(0, existentials - 1));
          if (std::find(rule.existentials.begin(), rule.existentials.end(), y) == rule.existentials.end())
            rule.existentials.push_back(y);
          atom.args.push_back(Term::variable(y));
        } else if (!vars.empty() && chance(0.85)) {
          atom.args.push_back(Term::variable(pick(vars)));
        } else {
          atom.args.push_back(Term::constant(pick(constant_pool())));
        }
      }
      rule.rhs.push_back(std::move(atom));
    }
    m.sttgds.push_back(std::move(rule));
  }

  const int queries = uniform(1, 3);
  for (int q = 0; q < queries; ++q) m.queries.push_back(random_ucq(m, "q" + std::to_string(q)));

  if (const auto violations = validate_mapping(m); !violations.empty())
    throw std::logic_error("generator produced an invalid mapping: " + violations.front().code + ": " +
                           violations.front().message);
  out.source = random_source(m.source);
  return out;
}

Ucq Generator::random_ucq(const Mapping& m, const std::string& name) {
  static const std::vector<std::string> pool{"v0", "v1", "v2", "v3"};
  Ucq q{name, {}};
  const int head_arity = uniform(0, 2);
  const int disjuncts = uniform(1, limits_.max_disjuncts);
  while (static_cast<int>(q.disjuncts.size()) < disjuncts) {
    ConjunctiveQuery cq;
    std::vector<std::string> vars;
    const int atoms = uniform(1, limits_.max_query_atoms);
    for (int i = 0; i < atoms; ++i) {
      const auto& rel = m.target[static_cast<std::size_t>(uniform(0, static_cast<int>(m.target.size()) - 1))];
      Atom atom{rel.name, {}, "t"};
      for (std::size_t p = 0; p < rel.arity(); ++p) {
        if (chance(0.85)) {
          auto v = pick(pool);
          if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
          atom.args.push_back(Term::variable(v));
        } else {
          atom.args.push_back(Term::constant(pick(constant_pool())));
        }
      }
      cq.body.push_back(std::move(atom));
    }
    if (static_cast<int>(vars.size()) < head_arity) continue;
    std::shuffle(vars.begin(), vars.end(), rng_);
    cq.head.assign(vars.begin(), vars.begin() + head_arity);
    cq.head.push_back("t");
    q.disjuncts.push_back(std::move(cq));
  }
  return q;
}

}  // namespace tdx::test
