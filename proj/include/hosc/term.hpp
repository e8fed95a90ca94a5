#pragma once

// Hash-consed abstract syntax shared by session types and session contracts.
//
// Both languages have the same shape: a terminated term, first-order and
// higher-order prefixes, label-keyed external/internal sums, recursion and
// variables. Nodes are interned, so two terms are structurally equal exactly
// when they share a node, and nodes live for the lifetime of the process.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hosc {

enum class Kind : std::uint8_t {
  End,      // `end` for types, `1` for contracts
  InBase,   // ?t.S
  OutBase,  // !t.S
  InMsg,    // ?(M).S
  OutMsg,   // !(M).S
  Branch,   // &{...} / external sum
  Choice,   // +{...} / internal sum
  Rec,
  Var,
};

// Raised when a decision procedure receives an open or unguarded term.
class InvalidTerm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

struct Node;
using Entry = std::pair<std::string, const Node*>;

struct Node {
  Kind kind = Kind::End;
  std::string name;              // base type, recursion/variable name
  const Node* msg = nullptr;     // InMsg / OutMsg
  const Node* next = nullptr;    // continuation, or body of Rec
  std::vector<Entry> entries;    // Branch / Choice, sorted by label

  std::size_t hash = 0;
  std::vector<std::string> free_vars;  // sorted
  std::vector<std::string> unguarded;  // free vars reachable through Rec only
  bool guarded = true;
  bool m_closed = true;
  std::size_t size = 1;

  mutable std::atomic<const Node*> unfolded{nullptr};
  mutable std::atomic<const Node*> unfolded_once{nullptr};

  bool has_free(std::string_view x) const;
};

const Node* make_end();
const Node* make_base(Kind k, std::string t, const Node* cont);
const Node* make_msg(Kind k, const Node* msg, const Node* cont);
const Node* make_sum(Kind k, std::vector<Entry> entries);
const Node* make_rec(std::string x, const Node* body);
const Node* make_var(std::string x);

const Node* substitute(const Node* n, std::string_view x, const Node* r);
const Node* unfold_once(const Node* n);
const Node* unfold(const Node* n);

}  // namespace detail

struct TypeLang {};
struct ContractLang {};

template <class Lang>
class Term {
 public:
  using Entries = std::vector<std::pair<std::string, Term>>;

  Term() : node_(detail::make_end()) {}
  explicit Term(const detail::Node* n) : node_(n) {}

  static Term end() { return Term(detail::make_end()); }
  static Term unit() { return end(); }
  static Term in_base(std::string t, Term cont) {
    return Term(detail::make_base(Kind::InBase, std::move(t), cont.node_));
  }
  static Term out_base(std::string t, Term cont) {
    return Term(detail::make_base(Kind::OutBase, std::move(t), cont.node_));
  }
  static Term in_msg(Term msg, Term cont) {
    return Term(detail::make_msg(Kind::InMsg, msg.node_, cont.node_));
  }
  static Term out_msg(Term msg, Term cont) {
    return Term(detail::make_msg(Kind::OutMsg, msg.node_, cont.node_));
  }
  // Throws std::invalid_argument on an empty entry list or a repeated label.
  static Term branch(const Entries& entries) { return sum(Kind::Branch, entries); }
  static Term choice(const Entries& entries) { return sum(Kind::Choice, entries); }
  static Term ext_sum(const Entries& entries) { return branch(entries); }
  static Term int_sum(const Entries& entries) { return choice(entries); }
  static Term rec(std::string x, Term body) {
    return Term(detail::make_rec(std::move(x), body.node_));
  }
  static Term var(std::string x) { return Term(detail::make_var(std::move(x))); }

  Kind kind() const { return node_->kind; }
  // Variable name, recursion binder, or base-type name depending on kind.
  const std::string& name() const { return node_->name; }
  Term message() const { return Term(node_->msg); }
  Term continuation() const { return Term(node_->next); }
  Term body() const { return Term(node_->next); }

  std::size_t entry_count() const { return node_->entries.size(); }
  const std::string& label(std::size_t i) const { return node_->entries[i].first; }
  Term entry(std::size_t i) const { return Term(node_->entries[i].second); }
  Entries entries() const {
    Entries out;
    out.reserve(node_->entries.size());
    for (const auto& [l, n] : node_->entries) out.emplace_back(l, Term(n));
    return out;
  }
  std::optional<Term> find(std::string_view label) const {
    for (const auto& [l, n] : node_->entries)
      if (l == label) return Term(n);
    return std::nullopt;
  }

  bool is_closed() const { return node_->free_vars.empty(); }
  bool is_guarded() const { return node_->guarded; }
  bool is_m_closed() const { return node_->m_closed; }
  const std::vector<std::string>& free_vars() const { return node_->free_vars; }
  std::size_t size() const { return node_->size; }

  const detail::Node* node() const { return node_; }

  friend bool operator==(const Term& a, const Term& b) { return a.node_ == b.node_; }
  friend bool operator!=(const Term& a, const Term& b) { return a.node_ != b.node_; }

 private:
  static Term sum(Kind k, const Entries& entries) {
    std::vector<detail::Entry> raw;
    raw.reserve(entries.size());
    for (const auto& [l, t] : entries) raw.emplace_back(l, t.node_);
    return Term(detail::make_sum(k, std::move(raw)));
  }

  const detail::Node* node_;
};

using TypeTerm = Term<TypeLang>;
using ContractTerm = Term<ContractLang>;

template <class Lang>
bool struct_eq(const Term<Lang>& a, const Term<Lang>& b) {
  return a == b;
}

template <class Lang>
bool is_closed(const Term<Lang>& t) { return t.is_closed(); }

template <class Lang>
bool is_guarded(const Term<Lang>& t) { return t.is_guarded(); }

template <class Lang>
std::set<std::string> free_vars(const Term<Lang>& t) {
  return {t.free_vars().begin(), t.free_vars().end()};
}

inline bool is_m_closed(const ContractTerm& t) { return t.is_m_closed(); }

// Throws InvalidTerm unless t is closed and guarded.
template <class Lang>
void require_closed_guarded(const Term<Lang>& t, std::string_view what = "term") {
  if (!t.is_closed())
    throw InvalidTerm(std::string(what) + " is not closed");
  if (!t.is_guarded())
    throw InvalidTerm(std::string(what) + " is not guarded");
}

// Finite map from variables to closed terms.
template <class Lang>
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const std::string, Term<Lang>>> init) {
    for (const auto& [x, t] : init) bind(x, t);
  }

  // Throws InvalidTerm if t is open.
  void bind(const std::string& x, Term<Lang> t) {
    if (!t.is_closed())
      throw InvalidTerm("substitution range must be closed: " + x);
    map_.insert_or_assign(x, t);
  }

  bool contains(std::string_view x) const { return map_.find(std::string(x)) != map_.end(); }
  std::optional<Term<Lang>> lookup(std::string_view x) const {
    auto it = map_.find(std::string(x));
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<std::string, Term<Lang>>& bindings() const { return map_; }

  // s \ x
  Substitution without(std::string_view x) const {
    Substitution out = *this;
    out.map_.erase(std::string(x));
    return out;
  }

  // (s1 . s2)(x) is s1(x) when x is in dom(s1), s2(x) otherwise.
  friend Substitution compose(const Substitution& s1, const Substitution& s2) {
    Substitution out = s2;
    for (const auto& [x, t] : s1.map_) out.map_.insert_or_assign(x, t);
    return out;
  }

  friend bool operator==(const Substitution& a, const Substitution& b) { return a.map_ == b.map_; }

 private:
  std::map<std::string, Term<Lang>> map_;
};

namespace detail {
const Node* apply(const Node* n, const std::map<std::string, const Node*>& s);
}

template <class Lang>
Term<Lang> apply_subst(const Term<Lang>& t, const Substitution<Lang>& s) {
  if (s.empty() || t.is_closed()) return t;
  std::map<std::string, const detail::Node*> raw;
  for (const auto& [x, r] : s.bindings()) raw.emplace(x, r.node());
  return Term<Lang>(detail::apply(t.node(), raw));
}

// t[r/x]
template <class Lang>
Term<Lang> subst(const Term<Lang>& t, std::string_view x, const Term<Lang>& r) {
  return Term<Lang>(detail::substitute(t.node(), x, r.node()));
}

// Repeatedly replaces a top-level rec by its body with the recursive term
// substituted for the bound variable. Throws InvalidTerm on open or unguarded
// input, on which the unfolding is undefined.
template <class Lang>
Term<Lang> unfold(const Term<Lang>& t) {
  require_closed_guarded(t);
  return Term<Lang>(detail::unfold(t.node()));
}

// One application of the unfolding rule; identity on non-rec terms.
template <class Lang>
Term<Lang> unfold_once(const Term<Lang>& t) {
  return Term<Lang>(detail::unfold_once(t.node()));
}

// Set of subterms, messages included.
template <class Lang>
std::vector<Term<Lang>> subterms(const Term<Lang>& t) {
  std::vector<Term<Lang>> out;
  std::set<const detail::Node*> seen;
  std::vector<const detail::Node*> stack{t.node()};
  while (!stack.empty()) {
    const detail::Node* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    out.emplace_back(n);
    if (n->msg) stack.push_back(n->msg);
    if (n->next) stack.push_back(n->next);
    for (const auto& e : n->entries) stack.push_back(e.second);
  }
  return out;
}

// Total order on terms that does not depend on allocation addresses.
template <class Lang>
struct TermLess {
  bool operator()(const Term<Lang>& a, const Term<Lang>& b) const;
};

int compare_nodes(const detail::Node* a, const detail::Node* b);

template <class Lang>
bool TermLess<Lang>::operator()(const Term<Lang>& a, const Term<Lang>& b) const {
  return compare_nodes(a.node(), b.node()) < 0;
}

// Base types with a reflexive, transitive subtyping preorder.
class BaseOrder {
 public:
  BaseOrder() = default;

  // int, real, bool with int <= real.
  static BaseOrder standard();
  // Lines of the form `a <= b` or a lone base-type name; `#` starts a comment.
  static BaseOrder parse(std::string_view text);
  static BaseOrder load(const std::string& path);

  void add_type(const std::string& t);
  void add_leq(const std::string& lo, const std::string& hi);

  bool contains(std::string_view t) const { return types_.count(std::string(t)) != 0; }
  bool leq(std::string_view lo, std::string_view hi) const;
  const std::set<std::string>& types() const { return types_; }

 private:
  void close();

  std::set<std::string> types_;
  std::set<std::pair<std::string, std::string>> leq_;
};

}  // namespace hosc

template <class Lang>
struct std::hash<hosc::Term<Lang>> {
  std::size_t operator()(const hosc::Term<Lang>& t) const noexcept {
    return std::hash<const void*>{}(t.node());
  }
};
