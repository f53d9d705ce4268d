#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include "tdx/error.hpp"
#include "tdx/mapping.hpp"

namespace tdx {

namespace {

using Item = MappingViolation::Item;

const RelationSchema* find_rel(const std::vector<RelationSchema>& rels, std::string_view name) {
  auto it = std::find_if(rels.begin(), rels.end(), [&](const auto& r) { return r.name == name; });
  return it == rels.end() ? nullptr : &*it;
}

struct KeyProblem {
  std::string code;
  std::string message;
};

// Describes why the key does not fit, or nullopt.
std::optional<KeyProblem> resolve_key_into(const Tkc& tkc, const RelationSchema& rel, KeyPositions& out) {
  if (tkc.relation != rel.name)
    return KeyProblem{"key-invalid", "key for " + tkc.relation + " resolved against " + rel.name};
  bool has_temporal = false;
  std::set<std::size_t> keyed;
  for (const auto& attr : tkc.key) {
    if (!attr.empty() && attr.front() == '@') {
      if (attr.substr(1) != rel.temporal_attribute)
        return KeyProblem{"key-invalid", "key of " + rel.name + " names " + attr +
                                             " but the temporal attribute is @" + rel.temporal_attribute};
      has_temporal = true;
      continue;
    }
    const auto pos = rel.position_of(attr);
    if (!pos) return KeyProblem{"key-invalid", "key of " + rel.name + " names unknown attribute " + attr};
    if (!keyed.insert(*pos).second) return KeyProblem{"key-invalid", "key of " + rel.name + " repeats attribute " + attr};
  }
  if (!has_temporal)
    return KeyProblem{"key-missing-temporal", "key of " + rel.name + " must include the temporal attribute"};
  out.key.assign(keyed.begin(), keyed.end());
  out.dependents.clear();
  for (std::size_t p = 0; p < rel.arity(); ++p)
    if (!keyed.count(p)) out.dependents.push_back(p);
  if (out.dependents.empty())
    return KeyProblem{"key-no-dependents", "key of " + rel.name + " covers every attribute; it needs a dependent"};
  return std::nullopt;
}

class Checker {
 public:
  explicit Checker(const Mapping& m) : m_(m) {}

  std::vector<MappingViolation> run() {
    schemas();
    for (std::size_t i = 0; i < m_.sttgds.size(); ++i) rule(i);
    for (std::size_t i = 0; i < m_.tkcs.size(); ++i) key(i);
    for (std::size_t i = 0; i < m_.queries.size(); ++i) query(i);
    return std::move(out_);
  }

 private:
  void add(Item item, std::size_t index, std::string code, std::string message) {
    out_.push_back({std::move(code), std::move(message), item, index});
  }

  void schemas() {
    std::set<std::string> seen;
    const auto all = [&] {
      auto v = m_.source;
      v.insert(v.end(), m_.target.begin(), m_.target.end());
      return v;
    }();
    for (std::size_t i = 0; i < all.size(); ++i) {
      const auto& rel = all[i];
      if (!seen.insert(rel.name).second) add(Item::Schema, i, "duplicate-relation", "relation " + rel.name + " is declared twice");
      if (rel.temporal_attribute.empty())
        add(Item::Schema, i, "missing-temporal-attribute", "relation " + rel.name + " has no temporal attribute");
      std::set<std::string> attrs{rel.temporal_attribute};
      for (const auto& a : rel.attributes)
        if (!attrs.insert(a).second)
          add(Item::Schema, i, "duplicate-attribute", "relation " + rel.name + " repeats attribute " + a);
    }
  }

  // Checks side and arity; returns false if the atom cannot be checked further.
  bool atom(Item item, std::size_t index, const Atom& a, bool want_source) {
    const auto* own = want_source ? m_.source_relation(a.relation) : m_.target_relation(a.relation);
    if (!own) {
      const auto* other = want_source ? m_.target_relation(a.relation) : m_.source_relation(a.relation);
      if (other)
        add(item, index, "wrong-schema-side",
            a.relation + " is a " + (want_source ? "target" : "source") + " relation, expected a " +
                (want_source ? "source" : "target") + " relation");
      else
        add(item, index, "unknown-relation", "relation " + a.relation + " is not declared");
      return false;
    }
    if (own->arity() != a.args.size()) {
      add(item, index, "arity-mismatch",
          a.relation + " takes " + std::to_string(own->arity()) + " non-temporal arguments, got " +
              std::to_string(a.args.size()));
      return false;
    }
    return true;
  }

  // Every atom must share one temporal variable, which never appears as data.
  void temporal(Item item, std::size_t index, const std::vector<const Atom*>& atoms) {
    std::set<std::string> tvars;
    for (const auto* a : atoms) tvars.insert(a->time_var);
    if (tvars.size() > 1) {
      std::string names;
      for (const auto& t : tvars) names += (names.empty() ? "" : ", ") + t;
      add(item, index, "multiple-temporal-variables", "exactly one temporal variable is allowed, found " + names);
      return;
    }
    const auto& t = *tvars.begin();
    for (const auto* a : atoms)
      for (const auto& term : a->args)
        if (term.is_variable() && term.text == t)
          add(item, index, "temporal-variable-misuse", "temporal variable " + t + " is used as a non-temporal argument");
  }

  void rule(std::size_t i) {
    const auto& r = m_.sttgds[i];
    if (r.lhs.empty() || r.rhs.empty()) {
      add(Item::Rule, i, "empty-side", "both sides of a rule need at least one atom");
      return;
    }
    std::vector<const Atom*> atoms;
    for (const auto& a : r.lhs) {
      atom(Item::Rule, i, a, true);
      atoms.push_back(&a);
    }
    for (const auto& a : r.rhs) {
      atom(Item::Rule, i, a, false);
      atoms.push_back(&a);
    }
    temporal(Item::Rule, i, atoms);

    std::set<std::string> lhs_vars;
    for (const auto& a : r.lhs)
      for (const auto& t : a.args)
        if (t.is_variable()) lhs_vars.insert(t.text);
    std::set<std::string> rhs_vars;
    for (const auto& a : r.rhs)
      for (const auto& t : a.args)
        if (t.is_variable()) rhs_vars.insert(t.text);
    for (const auto& y : r.existentials) {
      if (!rhs_vars.count(y)) add(Item::Rule, i, "unused-existential", "existential variable " + y + " does not occur in the rhs");
      if (lhs_vars.count(y)) add(Item::Rule, i, "existential-in-lhs", "existential variable " + y + " occurs in the lhs");
      if (y == r.lhs.front().time_var)
        add(Item::Rule, i, "existential-temporal", "existential variable " + y + " is used as the temporal variable");
    }
    for (const auto& a : r.rhs)
      for (const auto& t : a.args)
        if (t.is_variable() && !lhs_vars.count(t.text) && !r.is_existential(t.text))
          add(Item::Rule, i, "unsafe-variable",
              "variable " + t.text + " in the rhs is neither bound by the lhs nor existential");
  }

  void key(std::size_t i) {
    const auto& k = m_.tkcs[i];
    if (!m_.target_relation(k.relation)) {
      add(Item::Key, i, m_.source_relation(k.relation) ? "wrong-schema-side" : "unknown-relation",
          "key constraints apply to target relations; " + k.relation + " is not one");
      return;
    }
    KeyPositions positions;
    if (auto problem = resolve_key_into(k, *m_.target_relation(k.relation), positions))
      add(Item::Key, i, problem->code, problem->message);
  }

  void query(std::size_t i) {
    const auto& q = m_.queries[i];
    if (q.disjuncts.empty()) {
      add(Item::Query, i, "empty-query", "query " + q.name + " has no disjuncts");
      return;
    }
    const auto head_size = q.disjuncts.front().head.size();
    for (std::size_t d = 0; d < q.disjuncts.size(); ++d) {
      const auto& cq = q.disjuncts[d];
      const std::string where = "query " + q.name + " (disjunct " + std::to_string(d + 1) + ")";
      if (cq.head.empty() || cq.body.empty()) {
        add(Item::Query, i, "empty-query", where + " needs a head with the temporal variable and a body");
        continue;
      }
      if (cq.head.size() != head_size) add(Item::Query, i, "head-arity-mismatch", where + " has a different head arity");
      std::vector<const Atom*> atoms;
      for (const auto& a : cq.body) {
        atom(Item::Query, i, a, false);
        atoms.push_back(&a);
      }
      temporal(Item::Query, i, atoms);
      const auto& t = cq.body.front().time_var;
      if (cq.time_var() != t)
        add(Item::Query, i, "query-temporal-head",
            where + ": the last head variable must be the temporal variable " + t);
      std::set<std::string> body_vars;
      for (const auto& a : cq.body)
        for (const auto& term : a.args)
          if (term.is_variable()) body_vars.insert(term.text);
      for (std::size_t h = 0; h + 1 < cq.head.size(); ++h)
        if (!body_vars.count(cq.head[h]))
          add(Item::Query, i, "unsafe-head-variable", where + ": head variable " + cq.head[h] + " does not occur in the body");
    }
  }

  const Mapping& m_;
  std::vector<MappingViolation> out_;
};

std::string render_term(const Term& t, const SttTgd* rule) {
  if (!t.is_variable()) {
    std::string s = "'";
    for (char c : t.text) {
      if (c == '\'' || c == '\\') s += '\\';
      s += c;
    }
    return s + "'";
  }
  return (rule && rule->is_existential(t.text) ? "?" : "") + t.text;
}

void render_atom(std::ostream& os, const Atom& a, const SttTgd* rule) {
  os << a.relation << '(';
  for (const auto& t : a.args) os << render_term(t, rule) << ", ";
  os << a.time_var << ')';
}

void render_atoms(std::ostream& os, const std::vector<Atom>& atoms, const SttTgd* rule) {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) os << ", ";
    render_atom(os, atoms[i], rule);
  }
}

void render_schema(std::ostream& os, const char* side, const RelationSchema& rel) {
  os << side << ' ' << rel.name << '(';
  for (const auto& a : rel.attributes) os << a << ", ";
  os << '@' << rel.temporal_attribute << ").\n";
}

}  // namespace

bool SttTgd::is_existential(std::string_view var) const {
  return std::find(existentials.begin(), existentials.end(), var) != existentials.end();
}

KeyPositions resolve_key(const Tkc& tkc, const RelationSchema& rel) {
  KeyPositions out;
  if (auto problem = resolve_key_into(tkc, rel, out)) throw SchemaError(problem->message);
  return out;
}

const RelationSchema* Mapping::source_relation(std::string_view name) const { return find_rel(source, name); }
const RelationSchema* Mapping::target_relation(std::string_view name) const { return find_rel(target, name); }

const Ucq* Mapping::query(std::string_view name) const {
  auto it = std::find_if(queries.begin(), queries.end(), [&](const auto& q) { return q.name == name; });
  return it == queries.end() ? nullptr : &*it;
}

std::vector<MappingViolation> validate_mapping(const Mapping& m) { return Checker(m).run(); }

std::string render_mapping(const Mapping& m) {
  std::ostringstream os;
  for (const auto& rel : m.source) render_schema(os, "source", rel);
  for (const auto& rel : m.target) render_schema(os, "target", rel);
  for (const auto& r : m.sttgds) {
    os << "rule ";
    render_atoms(os, r.lhs, nullptr);
    os << " -> ";
    render_atoms(os, r.rhs, &r);
    os << ".\n";
  }
  for (const auto& k : m.tkcs) {
    os << "key " << k.relation << '(';
    for (std::size_t i = 0; i < k.key.size(); ++i) os << (i ? ", " : "") << k.key[i];
    os << ").\n";
  }
  for (const auto& q : m.queries) {
    for (const auto& cq : q.disjuncts) {
      os << "query " << q.name << '(';
      for (std::size_t i = 0; i < cq.head.size(); ++i) os << (i ? ", " : "") << cq.head[i];
      os << ") :- ";
      render_atoms(os, cq.body, nullptr);
      os << ".\n";
    }
  }
  return os.str();
}

}  // namespace tdx
