#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "tdx/eq_closure.hpp"
#include "tdx/model.hpp"
#include "tdx/query.hpp"

namespace tdx {

/// Reads the instance format:
///
///   {"kind": "concrete",
///    "relations": {"Emp": {"attributes": ["name", "company", "@time"],
///                          "facts": [{"values": ["Ada", {"null": "N1"}],
///                                     "interval": {"start": 8, "end": "inf"}}]}}}
///
/// Abstract facts carry "time": t instead of "interval". A null's context is
/// the time of its fact. Malformed JSON raises ParseError with the line and
/// column; structural problems raise SchemaError naming the JSON path.
Instance parse_instance_json(std::string_view text);

/// Canonical form: sorted keys, canonical fact order, two-space indent,
/// trailing newline. `horizon` is recorded at the top level when given.
std::string render_instance_json(const Instance& inst, std::optional<TimePoint> horizon = std::nullopt);

/// Answers as a one-relation instance named after the query.
std::string render_answers_json(const AnswerSet& ans, std::optional<TimePoint> horizon = std::nullopt);

/// {"failure": {"constants": [c1, c2], "trace": ["a = b", ...]}}
std::string render_failure_json(const Conflict& c);

}  // namespace tdx
