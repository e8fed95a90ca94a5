#pragma once

// The B-syntactic peer preorder, the peer subcontract preorder, and a bounded
// search for peers that separate two contracts.

#include <optional>

#include "hosc/interaction.hpp"
#include "hosc/term.hpp"

namespace hosc {

// Greatest relation closed under the simulation clauses where higher-order
// messages are compared with b. Throws InvalidTerm on open or unguarded input.
bool syn_peer_leq(const ContractTerm& a, const ContractTerm& b, const BOracle& oracle,
                  const BaseOrder& base = BaseOrder::standard());

// Same clauses, but message pairs are compared with the relation being built.
bool peer_leq(const ContractTerm& a, const ContractTerm& b,
              const BaseOrder& base = BaseOrder::standard());

bool peer_equiv(const ContractTerm& a, const ContractTerm& b,
                const BaseOrder& base = BaseOrder::standard());

// Decodes both sides and runs type subtyping.
bool peer_leq_via_subtyping(const ContractTerm& a, const ContractTerm& b,
                            const BaseOrder& base = BaseOrder::standard());

// Searches peers of bounded depth, built from the symbols of a and b, that
// comply with a but not with b. No result is not a proof of a <= b.
std::optional<ContractTerm> falsify_set_leq(const ContractTerm& a, const ContractTerm& b,
                                            const BOracle& oracle, const BaseOrder& base,
                                            int depth);

}  // namespace hosc
