#include "tdx/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "tdx/chase_abstract.hpp"
#include "tdx/chase_concrete.hpp"
#include "tdx/error.hpp"
#include "tdx/homomorphism.hpp"
#include "tdx/json_io.hpp"
#include "tdx/mapping.hpp"
#include "tdx/query.hpp"

namespace tdx {

namespace {

// An error already tied to a file, reported as "path: message".
struct FileError : Error {
  FileError(const std::string& path, const std::string& message) : Error(path + ": " + message) {}
};

struct Options {
  std::string input = "-";
  std::string output = "-";
  std::string mapping;
  std::string query;
  std::string a;
  std::string b;
  std::optional<TimePoint::rep> horizon;
};

class Session {
 public:
  Session(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {
    const char* color = std::getenv("TDX_COLOR");
    color_ = !(color && std::string_view(color) == "0");
  }

  std::ostream& err() { return err_; }

  void diagnose(const std::string& what) {
    err_ << (color_ ? "\x1b[1;31merror:\x1b[0m " : "error: ") << what << '\n';
  }

  std::string read(const std::string& path) {
    if (path == "-") {
      std::ostringstream buf;
      buf << in_.rdbuf();
      return buf.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw FileError(path, "cannot open for reading");
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
  }

  void write(const std::string& path, const std::string& text) {
    if (path == "-") {
      out_ << text;
      out_.flush();
      return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << text)) throw FileError(path, "cannot write");
  }

  Instance load_instance(const std::string& path) {
    const auto text = read(path);
    try {
      return parse_instance_json(text);
    } catch (const ParseError& e) {
      throw FileError(path, e.what());
    } catch (const SchemaError& e) {
      throw FileError(path, e.what());
    }
  }

  Mapping load_mapping(const std::string& path) {
    const auto text = read(path);
    try {
      return parse_mapping(text);
    } catch (const ParseError& e) {
      throw FileError(path, e.what());
    }
  }

  int report_failure(const std::string& path, const Conflict& c) {
    write(path, render_failure_json(c));
    diagnose("no solution: constants " + c.first + " and " + c.second + " are equated");
    for (const auto& e : c.trace) err_ << "  " << to_string(e) << '\n';
    return kExitNoSolution;
  }

 private:
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  bool color_ = true;
};

TimePoint default_horizon(std::initializer_list<const Instance*> instances) {
  TimePoint::rep h = 0;
  for (const auto* inst : instances)
    if (auto m = max_finite_endpoint(*inst)) h = std::max(h, m->value() + 1);
  return TimePoint(h);
}

TimePoint pick_horizon(const Options& o, std::initializer_list<const Instance*> instances) {
  return o.horizon ? TimePoint(*o.horizon) : default_horizon(instances);
}

const Ucq& find_query(const Mapping& m, const std::string& name) {
  const auto* q = m.query(name);
  if (!q) throw SchemaError("the mapping defines no query named " + name);
  return *q;
}

int cmd_normalize(Session& s, const Options& o) {
  const auto inst = s.load_instance(o.input);
  if (!inst.is_concrete()) throw SchemaError("normalize needs a concrete instance");
  s.write(o.output, render_instance_json(normalize_instance(inst)));
  return kExitOk;
}

int cmd_chase(Session& s, const Options& o, bool abstract) {
  const auto m = s.load_mapping(o.mapping);
  const auto src = s.load_instance(o.input);
  if (src.is_abstract() != abstract)
    throw SchemaError(std::string(abstract ? "achase" : "chase") + " needs an " + (abstract ? "abstract" : "concrete") +
                      " source instance");
  const auto outcome = abstract ? chase_abstract(src, m) : chase_concrete(src, m);
  if (!outcome.ok()) return s.report_failure(o.output, outcome.failure());
  s.write(o.output, render_instance_json(outcome.instance()));
  return kExitOk;
}

int cmd_sem(Session& s, const Options& o) {
  const auto inst = s.load_instance(o.input);
  if (!inst.is_concrete()) throw SchemaError("sem needs a concrete instance");
  const auto h = pick_horizon(o, {&inst});
  s.write(o.output, render_instance_json(sem_instance(inst, h), h));
  return kExitOk;
}

int cmd_query(Session& s, const Options& o) {
  const auto m = s.load_mapping(o.mapping);
  const auto inst = s.load_instance(o.input);
  s.write(o.output, render_answers_json(naive_eval(find_query(m, o.query), inst)));
  return kExitOk;
}

int cmd_certain(Session& s, const Options& o) {
  const auto m = s.load_mapping(o.mapping);
  const auto src = s.load_instance(o.input);
  const auto& q = find_query(m, o.query);
  const auto result = src.is_concrete() ? certain_concrete(q, src, m) : certain_abstract(q, src, m);
  if (const auto* none = std::get_if<NoSolution>(&result)) return s.report_failure(o.output, none->conflict);
  s.write(o.output, render_answers_json(std::get<AnswerSet>(result)));
  return kExitOk;
}

int cmd_equiv(Session& s, const Options& o) {
  const auto a = s.load_instance(o.a);
  const auto b = s.load_instance(o.b);
  const auto h = pick_horizon(o, {&a, &b});
  const auto view = [&](const Instance& inst) { return inst.is_concrete() ? sem_instance(inst, h) : inst; };
  const auto va = view(a), vb = view(b);
  const bool forward = find_abstract_hom(va, vb).has_value();
  const bool backward = forward && find_abstract_hom(vb, va).has_value();
  std::ostringstream line;
  if (forward && backward)
    line << "equivalent";
  else
    line << "not equivalent: no homomorphism " << (forward ? "from b to a" : "from a to b");
  line << " (horizon " << h.to_string() << ")\n";
  s.write("-", line.str());
  return forward && backward ? kExitOk : kExitNotEquivalent;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Session session(in, out, err);
  Options o;
  CLI::App app{"Temporal data exchange: normalization, chase, semantics, queries and equivalence", "tdx"};
  app.require_subcommand(1);

  const auto add_io = [&](CLI::App* cmd, bool output) {
    cmd->add_option("-i,--input", o.input, "input instance (JSON, '-' for stdin)")->required();
    if (output) cmd->add_option("-o,--output", o.output, "output file ('-' for stdout)");
  };
  const auto add_mapping = [&](CLI::App* cmd) {
    cmd->add_option("-m,--mapping", o.mapping, "mapping file (.tdx)")->required();
  };
  const auto add_horizon = [&](CLI::App* cmd) {
    cmd->add_option("--horizon", o.horizon, "materialization horizon (default: max finite endpoint + 1)");
  };

  auto* normalize = app.add_subcommand("normalize", "split a concrete instance over its endpoint grid");
  add_io(normalize, true);
  auto* chase = app.add_subcommand("chase", "concrete chase of a complete concrete source");
  add_mapping(chase);
  add_io(chase, true);
  auto* achase = app.add_subcommand("achase", "abstract chase of a complete finite abstract source");
  add_mapping(achase);
  add_io(achase, true);
  auto* sem = app.add_subcommand("sem", "abstract view of a concrete instance up to a horizon");
  add_io(sem, true);
  add_horizon(sem);
  auto* query = app.add_subcommand("query", "naive evaluation of a named query");
  add_mapping(query);
  add_io(query, true);
  query->add_option("-q,--query", o.query, "query name")->required();
  auto* certain = app.add_subcommand("certain", "certain answers of a named query over a source");
  add_mapping(certain);
  add_io(certain, true);
  certain->add_option("-q,--query", o.query, "query name")->required();
  auto* equiv = app.add_subcommand("equiv", "homomorphic equivalence of two instances");
  equiv->add_option("-a", o.a, "first instance")->required();
  equiv->add_option("-b", o.b, "second instance")->required();
  add_horizon(equiv);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (normalize->parsed()) return cmd_normalize(session, o);
    if (chase->parsed()) return cmd_chase(session, o, false);
    if (achase->parsed()) return cmd_chase(session, o, true);
    if (sem->parsed()) return cmd_sem(session, o);
    if (query->parsed()) return cmd_query(session, o);
    if (certain->parsed()) return cmd_certain(session, o);
    if (equiv->parsed()) return cmd_equiv(session, o);
  } catch (const std::exception& e) {
    session.diagnose(e.what());
    return kExitError;
  }
  return kExitError;
}

}  // namespace tdx
