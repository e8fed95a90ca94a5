#pragma once

// Concrete syntax for both languages.
//
//   Type      S ::= end | ?m.S | !m.S | &{l:S, ...} | +{l:S, ...} | rec X.S | X
//   Contract  c ::= 1 | ?m.c | !m.c | &[?l:c, ...] | (+)[!l:c, ...] | rec x.c | x
//   m ::= base | "(" term ")"
//
// Type variables start with an uppercase letter and contract variables with a
// lowercase one. In a type, a bare message may also be a type variable or
// `end`. In a contract, `?l.c` / `!l.c` with l not a base type abbreviates the
// singleton external / internal sum on label l.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hosc/term.hpp"

namespace hosc {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t pos, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

TypeTerm parse_type(std::string_view text, const BaseOrder& base = BaseOrder::standard());
ContractTerm parse_contract(std::string_view text, const BaseOrder& base = BaseOrder::standard());

// Canonical form: sums list their labels in lexicographic order.
std::string print(const TypeTerm& t);
std::string print(const ContractTerm& c);

nlohmann::json to_json(const TypeTerm& t);
nlohmann::json to_json(const ContractTerm& c);
// Throws ParseError (position 0) on a malformed document.
TypeTerm type_from_json(const nlohmann::json& j);
ContractTerm contract_from_json(const nlohmann::json& j);

}  // namespace hosc
