#pragma once

// Duality operators on contracts (and the standard one on types), together
// with the endpoint side condition used when restricting a channel.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hosc/interaction.hpp"
#include "hosc/term.hpp"

namespace hosc {

// Swaps inputs with outputs and branch with choice; messages are unchanged.
TypeTerm stdual(const TypeTerm& t);
ContractTerm stdual(const ContractTerm& c);
// The same operator obtained by going through the type language.
ContractTerm stdual_via_types(const ContractTerm& c);

// t with r put in place of the free occurrences of x that sit inside message
// fields. Occurrences in continuations are left alone; binders of x stop it.
ContractTerm inner_subst(const ContractTerm& t, std::string_view x, const ContractTerm& r);

// Applies the accumulated unfolding substitution to messages only.
// Throws InvalidTerm unless the free variables of c are bound by s.
ContractTerm mclo(const ContractTerm& c, const Substitution<ContractLang>& s);
// mclo(c, {}) for closed c.
ContractTerm mcl(const ContractTerm& c);
// stdual(mcl(c)).
ContractTerm dual(const ContractTerm& c);
ContractTerm cplmt(const ContractTerm& c);

enum class DualOp { StDual, Dual, Cplmt };
std::string_view to_string(DualOp d);
// Throws std::invalid_argument on an unknown name.
DualOp dual_op_from_string(std::string_view name);
ContractTerm apply_dual(DualOp d, const ContractTerm& c);

// decode(d(encode(plus))) is subtyping-equivalent to minus.
bool endpoints_dual(const TypeTerm& plus, const TypeTerm& minus, DualOp d,
                    const BaseOrder& base = BaseOrder::standard());

struct ReasonablenessViolation {
  ContractTerm left;
  ContractTerm right;
  std::string clause;
};

// Checks the reasonableness clauses on every related pair of samples.
std::optional<ReasonablenessViolation> is_reasonable_refutation(
    const BOracle& b, const std::vector<ContractTerm>& samples);

}  // namespace hosc
