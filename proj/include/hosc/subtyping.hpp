#pragma once

// Coinductive subtyping on session types and the induced equivalence.

#include <optional>
#include <utility>
#include <vector>

#include "hosc/term.hpp"

namespace hosc {

using TypePair = std::pair<TypeTerm, TypeTerm>;

// S <= T. Throws InvalidTerm on open or unguarded input.
bool subtype(const TypeTerm& s, const TypeTerm& t, const BaseOrder& base = BaseOrder::standard());

// A type simulation containing (s, t) when s <= t; nullopt otherwise.
std::optional<std::vector<TypePair>> subtype_witness(const TypeTerm& s, const TypeTerm& t,
                                                     const BaseOrder& base = BaseOrder::standard());

bool type_equiv(const TypeTerm& s, const TypeTerm& t, const BaseOrder& base = BaseOrder::standard());

// True iff every pair of r satisfies the simulation clauses with all the
// required sub-pairs again in r.
bool check_type_simulation(const std::vector<TypePair>& r,
                           const BaseOrder& base = BaseOrder::standard());

}  // namespace hosc
