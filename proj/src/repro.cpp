#include "hosc/repro.hpp"

#include "hosc/duality.hpp"
#include "hosc/encoding.hpp"
#include "hosc/preorders.hpp"
#include "hosc/subtyping.hpp"
#include "hosc/syntax.hpp"

namespace hosc {

namespace {

TypeTerm ty(std::string_view s) { return parse_type(s); }
ContractTerm ct(std::string_view s) { return parse_contract(s); }

std::string yn(bool b) { return b ? "true" : "false"; }

ReproCase bartender() {
  auto bar = ty("&{espresso:end}");
  auto fancy = ty("&{espresso:end, deka:end, double-espresso:end}");
  bool fwd = subtype(bar, fancy), back = subtype(fancy, bar);
  return {"bartender", fwd && !back,
          "BarTender <= FancyBarTender: " + yn(fwd) + ", converse: " + yn(back)};
}

ReproCase italian_customer() {
  auto italian = ty("+{espresso:end, deka:end, double-espresso:end}");
  auto customer = ty("+{espresso:end}");
  bool fwd = subtype(italian, customer), back = subtype(customer, italian);
  return {"italian-customer", fwd && !back,
          "ItalianCustomer <= Customer: " + yn(fwd) + ", converse: " + yn(back)};
}

ReproCase recursive_inputs() {
  auto s = ty("rec X.?X.X");
  auto t = ty("rec Y.?Y.?Y.Y");
  bool fwd = subtype(s, t), back = subtype(t, s);
  std::vector<TypePair> rel{{s, t},
                            {ty("?(rec X.?X.X).rec X.?X.X"),
                             ty("?(rec Y.?Y.?Y.Y).?(rec Y.?Y.?Y.Y).rec Y.?Y.?Y.Y")},
                            {ty("?(rec X.?X.X).rec X.?X.X"),
                             ty("?(rec Y.?Y.?Y.Y).rec Y.?Y.?Y.Y")},
                            {s, ty("?(rec Y.?Y.?Y.Y).rec Y.?Y.?Y.Y")}};
  bool sim = check_type_simulation(rel);
  return {"recursive-inputs", fwd && back && sim,
          "S <= T: " + yn(fwd) + ", T <= S: " + yn(back) + ", four-pair relation is a simulation: " +
              yn(sim)};
}

ReproCase empty_oracle_irreflexive() {
  auto s = ct("!(1).1");
  bool v = syn_peer_leq(s, s, empty_oracle());
  return {"empty-oracle-irreflexive", !v, "!(1).1 syntactically below itself: " + yn(v)};
}

ReproCase non_transitive_table() {
  auto b = parse_table_oracle("1 <= !l.!l.1\n!l.!l.1 <= !l.1\n");
  auto s1 = ct("!(!l.!l.1).1");
  auto s2 = ct("!(1).1");
  auto rho = ct("?(!l.1).1");
  bool syn = syn_peer_leq(s1, s2, b);
  auto w = falsify_set_leq(s1, s2, b, BaseOrder::standard(), 3);
  bool rho_separates = compliant(rho, s1, b) && !compliant(rho, s2, b);
  bool ok = syn && w && *w == rho && rho_separates && !b.props().transitive;
  return {"non-transitive-table", ok,
          "syntactic: " + yn(syn) + ", witness: " + (w ? print(*w) : std::string("none"))};
}

ReproCase empty_oracle_vacuity() {
  auto s = ct("!(1).1");
  auto b = empty_oracle();
  bool syn = syn_peer_leq(s, s, b);
  auto w = falsify_set_leq(s, s, b, BaseOrder::standard(), 3);
  bool any = compliant(ct("?(1).1"), s, b) || compliant(dual(s), s, b);
  return {"empty-oracle-vacuity", !syn && !w && !any,
          "syntactic: " + yn(syn) + ", witness: " + (w ? print(*w) : std::string("none")) +
              ", some peer complies: " + yn(any)};
}

ReproCase issues_stdual() {
  auto s = ct("rec x.?(x).1");
  auto sd = stdual(s);
  auto b = peer_oracle();
  bool with_stdual = compliant(s, sd, b);
  bool with_dual = compliant(s, dual(s), b);
  bool ok = sd == ct("rec x.!(x).1") && !is_m_closed(s) && !with_stdual && with_dual;
  return {"issues-stdual", ok,
          "stdual = " + print(sd) + ", complies with stdual: " + yn(with_stdual) +
              ", complies with dual: " + yn(with_dual)};
}

ReproCase applications_mcl() {
  auto rho = ct("rec x.?(x).1");
  auto sigma = ct("rec x.rec y.?(y).x");
  auto m1 = mcl(rho);
  auto m2 = mcl(sigma);
  auto e1 = ContractTerm::rec("x", ContractTerm::in_msg(rho, ContractTerm::unit()));
  auto inner = ContractTerm::rec("y", ContractTerm::in_msg(ContractTerm::var("y"), sigma));
  auto e2 = ContractTerm::rec(
      "x", ContractTerm::rec("y", ContractTerm::in_msg(inner, ContractTerm::var("x"))));
  bool ok = m1 == e1 && m2 == e2 && is_m_closed(m1) && is_m_closed(m2);
  return {"applications-mcl", ok, "mcl(rho) = " + print(m1) + ", mcl(sigma) = " + print(m2)};
}

ReproCase comp_not_mclosed() {
  auto sigma = ct("rec x.rec y.?(y).x");
  auto c = cplmt(sigma);
  bool ok = c == ct("rec x.rec y.!(rec y.?(y).x).x") && !is_m_closed(c);
  return {"comp-not-mclosed", ok, "cplmt = " + print(c) + ", m-closed: " + yn(is_m_closed(c))};
}

ReproCase comp_broken() {
  auto sigma = ct("rec x.rec y.?(y).x");
  bool v = compliant(sigma, cplmt(sigma), peer_oracle());
  bool d = compliant(sigma, dual(sigma), peer_oracle());
  return {"comp-broken", !v && d,
          "complies with cplmt: " + yn(v) + ", complies with dual: " + yn(d)};
}

ReproCase endpoint_p() {
  auto plus = ty("rec X.!X.end");
  auto minus = ty("?(rec X.!X.end).end");
  bool d = endpoints_dual(plus, minus, DualOp::Dual);
  bool s = endpoints_dual(plus, minus, DualOp::StDual);
  return {"endpoint-P", d && !s, "dual: " + yn(d) + ", stdual: " + yn(s)};
}

ReproCase endpoint_q() {
  auto tx = ty("rec X.!X.end");
  auto tyy = ty("?(rec X.!X.end).end");
  bool c = endpoints_dual(tx, tyy, DualOp::Cplmt);
  bool s = endpoints_dual(tx, tyy, DualOp::StDual);
  return {"endpoint-Q", c && !s, "cplmt: " + yn(c) + ", stdual: " + yn(s)};
}

}  // namespace

std::vector<ReproCase> run_repro() {
  std::vector<ReproCase (*)()> cases{bartender,           italian_customer,   recursive_inputs,
                                     empty_oracle_irreflexive, non_transitive_table,
                                     empty_oracle_vacuity, issues_stdual,     applications_mcl,
                                     comp_not_mclosed,    comp_broken,        endpoint_p,
                                     endpoint_q};
  std::vector<ReproCase> out;
  for (auto c : cases) {
    try {
      out.push_back(c());
    } catch (const std::exception& e) {
      out.push_back({"?", false, e.what()});
    }
  }
  return out;
}

}  // namespace hosc
