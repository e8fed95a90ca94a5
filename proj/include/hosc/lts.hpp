#pragma once

// Labelled transition system of a single contract and strong bisimilarity.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hosc/term.hpp"

namespace hosc {

enum class ActionKind { InLabel, OutLabel, InBase, OutBase, InCtr, OutCtr, Tau, Ok };

struct Action {
  ActionKind kind = ActionKind::Tau;
  std::string name;  // label or base type
  ContractTerm msg;  // InCtr / OutCtr only

  static Action tau() { return {}; }
  static Action ok() { return {ActionKind::Ok, {}, {}}; }

  bool visible() const { return kind != ActionKind::Tau && kind != ActionKind::Ok; }
  friend bool operator==(const Action& a, const Action& b) {
    return a.kind == b.kind && a.name == b.name && a.msg == b.msg;
  }
};

std::string to_string(const Action& a);

struct Transition {
  Action action;
  // nullopt after `ok`: the process has terminated and has no further moves.
  std::optional<ContractTerm> target;
};

// Raised when an exploration exceeds its state budget.
class StateLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultStateCap = 100000;

// Throws InvalidTerm on open or unguarded input.
std::vector<Transition> step(const ContractTerm& c);

// States reachable from c, c first, in breadth-first order. The post-ok sink
// is not included.
std::vector<ContractTerm> reachable(const ContractTerm& c, std::size_t cap = kDefaultStateCap);

bool can_ok(const ContractTerm& c);
bool is_stable(const ContractTerm& c);

bool bisimilar(const ContractTerm& a, const ContractTerm& b, std::size_t cap = kDefaultStateCap);

enum class LtsFormat { Dot, Json };

// States are numbered in the order of their canonical print; the initial
// state is flagged and states able to perform `ok` carry an ok attribute.
std::string export_lts(const ContractTerm& c, LtsFormat format);

}  // namespace hosc
