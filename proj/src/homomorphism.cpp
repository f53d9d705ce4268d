#include "tdx/homomorphism.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "tdx/error.hpp"

namespace tdx {

namespace {

// Depth-first join of the atoms against the instance.
class FormulaMatcher {
 public:
  FormulaMatcher(std::span<const Atom> atoms, const Instance& inst) : atoms_(atoms), inst_(inst) {}

  std::vector<Binding> run() {
    if (atoms_.empty()) return {};
    match(0);
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return std::move(out_);
  }

 private:
  void match(std::size_t depth) {
    if (depth == atoms_.size()) {
      out_.push_back(Binding{vars_, *time_});
      return;
    }
    const Atom& atom = atoms_[depth];
    for (const auto& fact : inst_.facts(atom.relation)) {
      if (time_ && fact.time != *time_) continue;
      if (fact.values.size() != atom.args.size()) continue;
      std::vector<std::string> bound_here;
      bool ok = true;
      for (std::size_t i = 0; i < atom.args.size() && ok; ++i) {
        const Term& term = atom.args[i];
        const Value& v = fact.values[i];
        if (!term.is_variable()) {
          ok = is_constant(v) && std::get<Constant>(v).symbol == term.text;
        } else if (auto it = vars_.find(term.text); it != vars_.end()) {
          ok = it->second == v;
        } else {
          vars_.emplace(term.text, v);
          bound_here.push_back(term.text);
        }
      }
      if (ok) {
        const bool set_time = !time_;
        if (set_time) time_ = fact.time;
        match(depth + 1);
        if (set_time) time_.reset();
      }
      for (const auto& name : bound_here) vars_.erase(name);
    }
  }

  std::span<const Atom> atoms_;
  const Instance& inst_;
  std::map<std::string, Value> vars_;
  std::optional<FactTime> time_;
  std::vector<Binding> out_;
};

bool may_map_to(const PointNull& from, const Value& to) {
  if (is_constant(to)) return true;
  const auto* p = std::get_if<PointNull>(&to);
  return p && p->context == from.context;
}

const PointNull& as_point_null(const Value& v) {
  const auto* p = std::get_if<PointNull>(&v);
  if (!p) throw std::invalid_argument("abstract instance contains a non point-annotated null: " + to_string(v));
  return *p;
}

// Backtracking search for one component of facts connected by shared nulls.
class ComponentSearch {
 public:
  ComponentSearch(std::vector<const Fact*> facts, std::vector<std::vector<const Fact*>> candidates)
      : facts_(std::move(facts)), candidates_(std::move(candidates)), done_(facts_.size(), false) {}

  bool solve() { return step(facts_.size()); }
  const AbstractHom& assignment() const { return assign_; }

 private:
  // Tries to extend the assignment so that `from` maps onto `to`; records
  // new entries in `trail`.
  bool extend(const Fact& from, const Fact& to, std::vector<PointNull>& trail) {
    for (std::size_t i = 0; i < from.values.size(); ++i) {
      const Value& v = from.values[i];
      if (is_constant(v)) {
        if (v != to.values[i]) return false;
        continue;
      }
      const PointNull& n = as_point_null(v);
      if (auto it = assign_.find(n); it != assign_.end()) {
        if (it->second != to.values[i]) return false;
      } else {
        if (!may_map_to(n, to.values[i])) return false;
        assign_.emplace(n, to.values[i]);
        trail.push_back(n);
      }
    }
    return true;
  }

  void undo(std::vector<PointNull>& trail) {
    for (const auto& n : trail) assign_.erase(n);
    trail.clear();
  }

  bool consistent(const Fact& from, const Fact& to) {
    std::vector<PointNull> trail;
    const bool ok = extend(from, to, trail);
    undo(trail);
    return ok;
  }

  bool step(std::size_t remaining) {
    if (remaining == 0) return true;
    // Most constrained fact first.
    std::size_t best = facts_.size();
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < facts_.size(); ++i) {
      if (done_[i]) continue;
      std::size_t count = 0;
      for (const Fact* c : candidates_[i])
        if (consistent(*facts_[i], *c)) ++count;
      if (count == 0) return false;
      if (best == facts_.size() || count < best_count) {
        best = i;
        best_count = count;
      }
    }
    done_[best] = true;
    std::vector<PointNull> trail;
    for (const Fact* c : candidates_[best]) {
      if (extend(*facts_[best], *c, trail) && step(remaining - 1)) return true;
      undo(trail);
    }
    done_[best] = false;
    return false;
  }

  std::vector<const Fact*> facts_;
  std::vector<std::vector<const Fact*>> candidates_;
  std::vector<bool> done_;
  AbstractHom assign_;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

Fact instantiate(const Atom& atom, const Binding& b) {
  Fact f{atom.relation, {}, b.time};
  f.values.reserve(atom.args.size());
  for (const auto& term : atom.args) {
    if (!term.is_variable()) {
      f.values.push_back(constant(term.text));
      continue;
    }
    auto it = b.vars.find(term.text);
    if (it == b.vars.end()) throw std::invalid_argument("variable " + term.text + " is unbound");
    f.values.push_back(it->second);
  }
  return f;
}

std::vector<Binding> enumerate_formula_homs(std::span<const Atom> atoms, const Instance& inst) {
  for (const auto& a : atoms) {
    const auto* rel = inst.relation(a.relation);
    if (!rel) throw SchemaError("relation " + a.relation + " is not in the instance schema");
    if (rel->arity() != a.args.size())
      throw SchemaError("atom over " + a.relation + " has " + std::to_string(a.args.size()) +
                        " non-temporal arguments, relation has " + std::to_string(rel->arity()));
    if (a.time_var != atoms.front().time_var)
      throw std::invalid_argument("atoms use more than one temporal variable");
  }
  return FormulaMatcher(atoms, inst).run();
}

Instance apply_hom(const AbstractHom& h, const Instance& inst) {
  Instance out = inst.empty_copy();
  for (auto f : inst.all_facts()) {
    for (auto& v : f.values)
      if (const auto* n = std::get_if<PointNull>(&v))
        if (auto it = h.find(*n); it != h.end()) v = it->second;
    out.insert(std::move(f));
  }
  return out;
}

std::optional<AbstractHom> find_abstract_hom(const Instance& a, const Instance& b) {
  if (!a.is_abstract() || !b.is_abstract()) throw std::invalid_argument("abstract homomorphisms need abstract instances");

  std::map<std::tuple<std::string, TimePoint>, std::vector<const Fact*>> by_slot;
  const auto b_facts = b.all_facts();
  for (const auto& g : b_facts) by_slot[{g.relation, g.point()}].push_back(&g);

  const auto a_facts = a.all_facts();
  std::vector<const Fact*> open;
  for (const auto& f : a_facts) {
    if (!f.has_null()) {
      if (!b.contains(f)) return std::nullopt;
    } else {
      open.push_back(&f);
    }
  }

  // Facts sharing a null belong to one component.
  std::vector<std::size_t> parent(open.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::map<PointNull, std::size_t> first_seen;
  for (std::size_t i = 0; i < open.size(); ++i)
    for (const auto& v : open[i]->values)
      if (is_null(v)) {
        auto [it, fresh] = first_seen.emplace(as_point_null(v), i);
        if (!fresh) parent[find_root(parent, i)] = find_root(parent, it->second);
      }

  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t i = 0; i < open.size(); ++i) components[find_root(parent, i)].push_back(i);

  AbstractHom hom;
  for (const auto& [root, members] : components) {
    std::vector<const Fact*> facts;
    std::vector<std::vector<const Fact*>> candidates;
    for (auto i : members) {
      const Fact& f = *open[i];
      facts.push_back(&f);
      auto& cands = candidates.emplace_back();
      auto slot = by_slot.find({f.relation, f.point()});
      if (slot == by_slot.end()) return std::nullopt;
      for (const Fact* g : slot->second) {
        if (g->values.size() != f.values.size()) continue;
        AbstractHom local;
        bool ok = true;
        for (std::size_t p = 0; p < f.values.size() && ok; ++p) {
          const Value& v = f.values[p];
          if (is_constant(v)) {
            ok = v == g->values[p];
          } else {
            const auto& n = as_point_null(v);
            auto [it, fresh] = local.emplace(n, g->values[p]);
            ok = fresh ? may_map_to(n, g->values[p]) : it->second == g->values[p];
          }
        }
        if (ok) cands.push_back(g);
      }
      if (cands.empty()) return std::nullopt;
    }
    ComponentSearch search(std::move(facts), std::move(candidates));
    if (!search.solve()) return std::nullopt;
    hom.insert(search.assignment().begin(), search.assignment().end());
  }
  return hom;
}

bool hom_equivalent(const Instance& a, const Instance& b) {
  return find_abstract_hom(a, b).has_value() && find_abstract_hom(b, a).has_value();
}

}  // namespace tdx
