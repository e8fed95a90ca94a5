#include "hosc/duality.hpp"

#include <map>

#include "hosc/encoding.hpp"
#include "hosc/lts.hpp"
#include "hosc/subtyping.hpp"

namespace hosc {

namespace {

Kind flip(Kind k) {
  switch (k) {
    case Kind::InBase: return Kind::OutBase;
    case Kind::OutBase: return Kind::InBase;
    case Kind::InMsg: return Kind::OutMsg;
    case Kind::OutMsg: return Kind::InMsg;
    case Kind::Branch: return Kind::Choice;
    case Kind::Choice: return Kind::Branch;
    default: return k;
  }
}

// Rebuilds n with the polarity of its top constructor given by `kind`, the
// message replaced by `msg` and every continuation mapped through f.
template <class F>
const detail::Node* rebuild(const detail::Node* n, Kind kind, const detail::Node* msg, F&& f) {
  switch (n->kind) {
    case Kind::End:
    case Kind::Var:
      return n;
    case Kind::InBase:
    case Kind::OutBase:
      return detail::make_base(kind, n->name, f(n->next));
    case Kind::InMsg:
    case Kind::OutMsg:
      return detail::make_msg(kind, msg, f(n->next));
    case Kind::Branch:
    case Kind::Choice: {
      std::vector<detail::Entry> entries;
      for (const auto& [l, c] : n->entries) entries.emplace_back(l, f(c));
      return detail::make_sum(kind, std::move(entries));
    }
    case Kind::Rec:
      return detail::make_rec(n->name, f(n->next));
  }
  return n;
}

const detail::Node* stdual_node(const detail::Node* n) {
  return rebuild(n, flip(n->kind), n->msg, stdual_node);
}

const detail::Node* inner_node(const detail::Node* n, std::string_view x, const detail::Node* r) {
  if (!n->has_free(x)) return n;
  if (n->kind == Kind::Var) return n;
  const detail::Node* msg = n->msg ? detail::substitute(n->msg, x, r) : nullptr;
  return rebuild(n, n->kind, msg, [&](const detail::Node* c) { return inner_node(c, x, r); });
}

using RawSubst = std::map<std::string, const detail::Node*>;

const detail::Node* mclo_node(const detail::Node* n, const RawSubst& s) {
  if (n->kind == Kind::Rec) {
    // The binding for the new x replaces any outer binding of the same name.
    RawSubst inner = s;
    inner.insert_or_assign(n->name, detail::apply(n, s));
    return detail::make_rec(n->name, mclo_node(n->next, inner));
  }
  const detail::Node* msg = n->msg ? detail::apply(n->msg, s) : nullptr;
  return rebuild(n, n->kind, msg, [&](const detail::Node* c) { return mclo_node(c, s); });
}

const detail::Node* cplmt_node(const detail::Node* n) {
  if (n->kind == Kind::Rec)
    return detail::make_rec(n->name, cplmt_node(inner_node(n->next, n->name, n)));
  return rebuild(n, flip(n->kind), n->msg, cplmt_node);
}

}  // namespace

TypeTerm stdual(const TypeTerm& t) { return TypeTerm(stdual_node(t.node())); }
ContractTerm stdual(const ContractTerm& c) { return ContractTerm(stdual_node(c.node())); }
ContractTerm stdual_via_types(const ContractTerm& c) { return encode(stdual(decode(c))); }

ContractTerm inner_subst(const ContractTerm& t, std::string_view x, const ContractTerm& r) {
  return ContractTerm(inner_node(t.node(), x, r.node()));
}

ContractTerm mclo(const ContractTerm& c, const Substitution<ContractLang>& s) {
  for (const auto& v : c.free_vars())
    if (!s.contains(v)) throw InvalidTerm("mclo: free variable " + v + " not bound");
  RawSubst raw;
  for (const auto& [x, t] : s.bindings()) raw.emplace(x, t.node());
  return ContractTerm(mclo_node(c.node(), raw));
}

ContractTerm mcl(const ContractTerm& c) { return mclo(c, {}); }

ContractTerm dual(const ContractTerm& c) {
  require_closed_guarded(c, "contract");
  return stdual(mcl(c));
}

ContractTerm cplmt(const ContractTerm& c) { return ContractTerm(cplmt_node(c.node())); }

std::string_view to_string(DualOp d) {
  switch (d) {
    case DualOp::StDual: return "stdual";
    case DualOp::Dual: return "dual";
    case DualOp::Cplmt: return "cplmt";
  }
  return "?";
}

DualOp dual_op_from_string(std::string_view name) {
  if (name == "stdual") return DualOp::StDual;
  if (name == "dual") return DualOp::Dual;
  if (name == "cplmt") return DualOp::Cplmt;
  throw std::invalid_argument("unknown duality '" + std::string(name) +
                              "' (expected stdual, dual or cplmt)");
}

ContractTerm apply_dual(DualOp d, const ContractTerm& c) {
  switch (d) {
    case DualOp::StDual: return stdual(c);
    case DualOp::Dual: return dual(c);
    case DualOp::Cplmt: return cplmt(c);
  }
  return c;
}

bool endpoints_dual(const TypeTerm& plus, const TypeTerm& minus, DualOp d, const BaseOrder& base) {
  require_closed_guarded(plus, "positive endpoint type");
  require_closed_guarded(minus, "negative endpoint type");
  return type_equiv(decode(apply_dual(d, encode(plus))), minus, base);
}

namespace {

bool is_input(ActionKind k) {
  return k == ActionKind::InLabel || k == ActionKind::InBase || k == ActionKind::InCtr;
}

}  // namespace

std::optional<ReasonablenessViolation> is_reasonable_refutation(
    const BOracle& b, const std::vector<ContractTerm>& samples) {
  for (const auto& x : samples)
    for (const auto& y : samples) {
      if (!b(x, y)) continue;
      if (!b(unfold(x), unfold(y))) return ReasonablenessViolation{x, y, "unfolding"};
      auto sx = step(x);
      auto sy = step(y);
      for (const auto& tx : sx) {
        if (!tx.action.visible()) continue;
        for (const auto& ty : sy) {
          if (!ty.action.visible()) continue;
          if (is_input(tx.action.kind) != is_input(ty.action.kind))
            return ReasonablenessViolation{x, y, "polarity"};
          if (tx.action.kind == ActionKind::InCtr && ty.action.kind == ActionKind::InCtr &&
              !(b(tx.action.msg, ty.action.msg) && b(*tx.target, *ty.target)))
            return ReasonablenessViolation{x, y, "input messages"};
        }
      }
    }
  return std::nullopt;
}

}  // namespace hosc
