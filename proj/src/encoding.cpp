#include "hosc/encoding.hpp"

#include <cctype>
#include <unordered_map>

namespace hosc {
namespace {

std::string flip_first(std::string x) {
  if (!x.empty()) {
    auto c = static_cast<unsigned char>(x[0]);
    x[0] = static_cast<char>(std::isupper(c) ? std::tolower(c) : std::toupper(c));
  }
  return x;
}

template <class To, class From>
Term<To> translate_node(const Term<From>& t, std::unordered_map<const detail::Node*, Term<To>>& memo);

template <class To, class From>
Term<To> translate(const Term<From>& t, std::unordered_map<const detail::Node*, Term<To>>& memo) {
  if (auto it = memo.find(t.node()); it != memo.end()) return it->second;
  Term<To> out = translate_node<To>(t, memo);
  memo.emplace(t.node(), out);
  return out;
}

template <class To, class From>
Term<To> translate_node(const Term<From>& t, std::unordered_map<const detail::Node*, Term<To>>& memo) {
  using R = Term<To>;
  switch (t.kind()) {
    case Kind::End:
      return R::end();
    case Kind::InBase:
      return R::in_base(t.name(), translate<To>(t.continuation(), memo));
    case Kind::OutBase:
      return R::out_base(t.name(), translate<To>(t.continuation(), memo));
    case Kind::InMsg:
      return R::in_msg(translate<To>(t.message(), memo), translate<To>(t.continuation(), memo));
    case Kind::OutMsg:
      return R::out_msg(translate<To>(t.message(), memo), translate<To>(t.continuation(), memo));
    case Kind::Branch:
    case Kind::Choice: {
      typename R::Entries entries;
      for (std::size_t i = 0; i < t.entry_count(); ++i)
        entries.emplace_back(t.label(i), translate<To>(t.entry(i), memo));
      return t.kind() == Kind::Branch ? R::branch(entries) : R::choice(entries);
    }
    case Kind::Rec:
      return R::rec(flip_first(t.name()), translate<To>(t.body(), memo));
    case Kind::Var:
      return R::var(flip_first(t.name()));
  }
  return R::end();
}

}  // namespace

ContractTerm encode(const TypeTerm& s) {
  std::unordered_map<const detail::Node*, ContractTerm> memo;
  return translate<ContractLang>(s, memo);
}

TypeTerm decode(const ContractTerm& c) {
  std::unordered_map<const detail::Node*, TypeTerm> memo;
  return translate<TypeLang>(c, memo);
}

std::string encode_var(const std::string& type_var) { return flip_first(type_var); }
std::string decode_var(const std::string& contract_var) { return flip_first(contract_var); }

}  // namespace hosc
