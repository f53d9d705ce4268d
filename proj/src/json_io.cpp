#include "tdx/json_io.hpp"

#include <json.hpp>

#include "tdx/error.hpp"

namespace tdx {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& what) { throw SchemaError(path + ": " + what); }

const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) bad(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(path, std::string("missing \"") + key + "\"");
  return *it;
}

TimePoint::rep point_value(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) bad(path, "expected a non-negative integer time point");
  const auto v = j.get<TimePoint::rep>();
  if (TimePoint(v).is_infinite()) bad(path, "time point out of range");
  return v;
}

TimePoint end_value(const json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "inf") return TimePoint::infinity();
  return TimePoint(point_value(j, path));
}

InstanceKind kind_of(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "concrete") return InstanceKind::Concrete;
    if (j.get<std::string>() == "abstract") return InstanceKind::Abstract;
  }
  bad("kind", "expected \"concrete\" or \"abstract\"");
}

RelationSchema schema_of(const std::string& name, const json& attrs, const std::string& path) {
  if (!attrs.is_array() || attrs.empty()) bad(path, "expected a nonempty attribute list");
  RelationSchema rel{name, {}, {}};
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    if (!attrs[i].is_string()) bad(path, "attribute names must be strings");
    auto a = attrs[i].get<std::string>();
    const bool temporal = !a.empty() && a.front() == '@';
    if (temporal != (i + 1 == attrs.size())) bad(path, "exactly the last attribute must be temporal (\"@name\")");
    if (temporal)
      rel.temporal_attribute = a.substr(1);
    else
      rel.attributes.push_back(std::move(a));
  }
  return rel;
}

Fact fact_of(const RelationSchema& rel, InstanceKind kind, const json& j, const std::string& path) {
  const auto& values = member(j, "values", path);
  if (!values.is_array()) bad(path, "\"values\" must be an array");
  if (values.size() != rel.arity())
    bad(path, "expected " + std::to_string(rel.arity()) + " values, got " + std::to_string(values.size()));

  Fact f{rel.name, {}, TimePoint{}};
  if (kind == InstanceKind::Concrete) {
    if (j.contains("time")) bad(path, "concrete facts carry an \"interval\", not a \"time\"");
    const auto& iv = member(j, "interval", path);
    const auto ipath = path + ".interval";
    const auto start = TimePoint(point_value(member(iv, "start", ipath), ipath + ".start"));
    const auto end = end_value(member(iv, "end", ipath), ipath + ".end");
    if (!(start < end)) bad(ipath, "interval must be nonempty");
    f.time = Interval(start, end);
  } else {
    if (j.contains("interval")) bad(path, "abstract facts carry a \"time\", not an \"interval\"");
    f.time = TimePoint(point_value(member(j, "time", path), path + ".time"));
  }

  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& v = values[i];
    const auto vpath = path + ".values[" + std::to_string(i) + "]";
    if (v.is_string()) {
      f.values.push_back(Constant{v.get<std::string>()});
      continue;
    }
    const auto& label = member(v, "null", vpath);
    if (!label.is_string() || label.get<std::string>().empty()) bad(vpath, "null label must be a nonempty string");
    if (v.size() != 1) bad(vpath, "a null is written {\"null\": label}");
    if (kind == InstanceKind::Concrete)
      f.values.push_back(IntervalNull{label.get<std::string>(), f.interval()});
    else
      f.values.push_back(PointNull{label.get<std::string>(), f.point()});
  }
  return f;
}

json value_json(const Value& v) {
  if (const auto* c = std::get_if<Constant>(&v)) return c->symbol;
  if (const auto* n = std::get_if<IntervalNull>(&v)) return json{{"null", n->label}};
  return json{{"null", std::get<PointNull>(v).label}};
}

json end_json(TimePoint e) { return e.is_infinite() ? json("inf") : json(e.value()); }

void put_time(json& fact, const FactTime& t) {
  if (const auto* iv = std::get_if<Interval>(&t))
    fact["interval"] = json{{"start", iv->start().value()}, {"end", end_json(iv->end())}};
  else
    fact["time"] = std::get<TimePoint>(t).value();
}

json attributes_json(const std::vector<std::string>& attrs, const std::string& temporal) {
  json out = json::array();
  for (const auto& a : attrs) out.push_back(a);
  out.push_back("@" + temporal);
  return out;
}

std::string dump(json& doc, std::optional<TimePoint> horizon) {
  if (horizon) doc["horizon"] = horizon->value();
  return doc.dump(2) + "\n";
}

// Line and column (1-based) of a byte offset.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

Instance parse_instance_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    if (auto p = what.find("; "); p != std::string::npos) what = what.substr(p + 2);
    throw ParseError(line, column, what);
  }
  if (!doc.is_object()) bad("$", "expected an object");
  Instance inst(kind_of(member(doc, "kind", "$")));
  const auto& relations = member(doc, "relations", "$");
  if (!relations.is_object()) bad("relations", "expected an object");
  for (const auto& [name, body] : relations.items()) {
    const auto path = "relations." + name;
    const auto rel = schema_of(name, member(body, "attributes", path), path + ".attributes");
    inst.add_relation(rel);
    if (!body.contains("facts")) continue;
    const auto& facts = body.at("facts");
    if (!facts.is_array()) bad(path + ".facts", "expected an array");
    for (std::size_t i = 0; i < facts.size(); ++i)
      inst.insert(fact_of(rel, inst.kind(), facts[i], path + ".facts[" + std::to_string(i) + "]"));
  }
  return inst;
}

std::string render_instance_json(const Instance& inst, std::optional<TimePoint> horizon) {
  json relations = json::object();
  for (const auto& [name, rel] : inst.schema()) {
    json facts = json::array();
    for (const auto& f : inst.facts(name)) {
      json fact;
      fact["values"] = json::array();
      for (const auto& v : f.values) fact["values"].push_back(value_json(v));
      put_time(fact, f.time);
      facts.push_back(std::move(fact));
    }
    relations[name] = json{{"attributes", attributes_json(rel.attributes, rel.temporal_attribute)},
                           {"facts", std::move(facts)}};
  }
  json doc{{"kind", std::string(to_string(inst.kind()))}, {"relations", std::move(relations)}};
  return dump(doc, horizon);
}

std::string render_answers_json(const AnswerSet& ans, std::optional<TimePoint> horizon) {
  json facts = json::array();
  for (const auto& a : ans.answers) {
    json fact{{"values", a.values}};
    put_time(fact, a.time);
    facts.push_back(std::move(fact));
  }
  std::vector<std::string> attrs(ans.head.begin(), ans.head.empty() ? ans.head.end() : ans.head.end() - 1);
  const std::string temporal = ans.head.empty() ? "t" : ans.head.back();
  json relation{{"attributes", attributes_json(attrs, temporal)}, {"facts", std::move(facts)}};
  json doc{{"kind", std::string(to_string(ans.kind))}, {"relations", json{{ans.query, std::move(relation)}}}};
  return dump(doc, horizon);
}

std::string render_failure_json(const Conflict& c) {
  json trace = json::array();
  for (const auto& e : c.trace) trace.push_back(to_string(e));
  json doc{{"failure", json{{"constants", json::array({c.first, c.second})}, {"trace", std::move(trace)}}}};
  return doc.dump(2) + "\n";
}

}  // namespace tdx
