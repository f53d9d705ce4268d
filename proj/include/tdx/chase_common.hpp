#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>

#include "tdx/eq_closure.hpp"
#include "tdx/model.hpp"

namespace tdx {

/// Result of a tkc round or a full chase: a solution or a constant clash.
class ChaseOutcome {
 public:
  static ChaseOutcome success(Instance inst) { return ChaseOutcome(std::move(inst)); }
  static ChaseOutcome failure(Conflict c) { return ChaseOutcome(std::move(c)); }

  bool ok() const { return std::holds_alternative<Instance>(result_); }
  const Instance& instance() const { return std::get<Instance>(result_); }
  const Conflict& failure() const { return std::get<Conflict>(result_); }

 private:
  explicit ChaseOutcome(Instance inst) : result_(std::move(inst)) {}
  explicit ChaseOutcome(Conflict c) : result_(std::move(c)) {}

  std::variant<Instance, Conflict> result_;
};

/// Issues fresh null labels N1, N2, ... in request order.
class NullSequence {
 public:
  std::string fresh() { return "N" + std::to_string(next_++); }

 private:
  std::size_t next_ = 1;
};

}  // namespace tdx
