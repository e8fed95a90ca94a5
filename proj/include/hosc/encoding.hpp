#pragma once

// Structural translation between session types and session contracts.
//
// end -> 1, branch -> external sum, choice -> internal sum, prefixes and
// recursion are mapped homomorphically. Variable names swap the case of their
// first character (X <-> x), which keeps the map bijective.

#include <string>

#include "hosc/term.hpp"

namespace hosc {

ContractTerm encode(const TypeTerm& s);
TypeTerm decode(const ContractTerm& c);

std::string encode_var(const std::string& type_var);
std::string decode_var(const std::string& contract_var);

}  // namespace hosc
