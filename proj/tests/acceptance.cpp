// Acceptance suite: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hosc/duality.hpp"
#include "hosc/encoding.hpp"
#include "hosc/generator.hpp"
#include "hosc/interaction.hpp"
#include "hosc/lts.hpp"
#include "hosc/preorders.hpp"
#include "hosc/subtyping.hpp"
#include "hosc/syntax.hpp"

using namespace hosc;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (pass) note << what;
      pass = false;
    }
  }
};

TypeTerm ty(std::string_view s) { return parse_type(s); }
ContractTerm ct(std::string_view s) { return parse_contract(s); }

void full_abstraction(Outcome& o) {
  GenConfig cfg;
  cfg.max_depth = 4;
  cfg.labels = {"a", "b", "c"};
  cfg.base_types = {"int", "real"};
  cfg.seed = 2024;
  auto rep = fullabs_check(cfg, 500);
  o.note << rep.n_agree << "/" << rep.n_pairs << " agree, " << rep.n_positive << " positive";
  o.require(rep.n_pairs == 500 && rep.n_agree == 500 && rep.disagreements.empty(), "");
  for (const auto& d : rep.disagreements)
    o.note << "\n    " << print(d.left) << " vs " << print(d.right) << ": subtype=" << d.subtype_verdict
           << " peer=" << d.peer_verdict << " decoded=" << d.decoded_verdict;
}

void subtyping_examples(Outcome& o) {
  auto bar = ty("&{espresso:end}");
  auto fancy = ty("&{espresso:end, deka:end, double-espresso:end}");
  o.require(subtype(bar, fancy), "BarTender <= FancyBarTender");
  o.require(!subtype(fancy, bar), "FancyBarTender </= BarTender");

  auto s = ty("rec X.?X.X");
  auto t = ty("rec Y.?Y.?Y.Y");
  o.require(subtype(s, t), "S <= T");
  o.require(subtype(t, s), "T <= S");
  auto w = subtype_witness(s, t);
  o.require(w && check_type_simulation(*w), "witness of S <= T is a simulation");
  std::vector<TypePair> flipped;
  if (w)
    for (const auto& p : *w) flipped.push_back({p.second, p.first});
  o.require(check_type_simulation(flipped), "inverse witness is a simulation");

  auto italian = ty("+{espresso:end, deka:end, double-espresso:end}");
  auto customer = ty("+{espresso:end}");
  o.require(subtype(italian, customer), "ItalianCustomer <= Customer");
  o.require(!subtype(customer, italian), "Customer </= ItalianCustomer");
  if (o.pass) o.note << "all seven verdicts as expected";
}

void duality_theorems(Outcome& o) {
  auto peer = peer_oracle();
  GenConfig cfg;
  cfg.seed = 77;
  auto cs = generate_contracts(cfg, 500);
  int dual_ok = 0, mcl_ok = 0;
  for (const auto& c : cs) {
    if (compliant(c, dual(c), peer)) ++dual_ok;
    if (bisimilar(c, mcl(c))) ++mcl_ok;
  }
  GenConfig mc = cfg;
  mc.closed_messages = true;
  mc.seed = 78;
  auto ms = generate_contracts(mc, 500);
  int std_ok = 0, mclosed = 0;
  for (const auto& c : ms) {
    if (is_m_closed(c)) ++mclosed;
    if (compliant(c, stdual(c), peer)) ++std_ok;
  }
  o.note << "dual " << dual_ok << "/500, stdual on m-closed " << std_ok << "/500 (" << mclosed
         << " m-closed), mcl bisimilar " << mcl_ok << "/500";
  o.require(dual_ok == 500 && std_ok == 500 && mclosed == 500 && mcl_ok == 500, "");
}

void counterexamples(Outcome& o) {
  auto peer = peer_oracle();
  auto a = ct("rec x.?(x).1");
  o.require(!compliant(a, stdual(a), peer), "rec x.?(x).1 complies with its stdual");
  auto s = ct("rec x.rec y.?(y).x");
  o.require(!compliant(s, cplmt(s), peer), "rec x.rec y.?(y).x complies with its cplmt");

  auto m1 = mcl(a);
  o.require(m1 == ContractTerm::rec("x", ContractTerm::in_msg(a, ContractTerm::unit())),
            "mcl(rec x.?(x).1) = " + print(m1));
  auto m2 = mcl(s);
  auto inner = ContractTerm::rec("y", ContractTerm::in_msg(ContractTerm::var("y"), s));
  auto expect2 = ContractTerm::rec(
      "x", ContractTerm::rec("y", ContractTerm::in_msg(inner, ContractTerm::var("x"))));
  o.require(m2 == expect2, "mcl(rec x.rec y.?(y).x) = " + print(m2));

  auto c = cplmt(s);
  auto expect_c = ContractTerm::rec(
      "x", ContractTerm::rec("y", ContractTerm::out_msg(
                                      ContractTerm::rec("y", ContractTerm::in_msg(
                                                                 ContractTerm::var("y"),
                                                                 ContractTerm::var("x"))),
                                      ContractTerm::var("x"))));
  o.require(c == expect_c && !is_m_closed(c), "cplmt(rec x.rec y.?(y).x) = " + print(c));
  if (o.pass) o.note << "stdual and cplmt counterexamples, mcl and cplmt outputs reproduced";
}

void pathologies(Outcome& o) {
  auto base = BaseOrder::standard();
  auto s = ct("!(1).1");
  o.require(!syn_peer_leq(s, s, empty_oracle()), "empty oracle: !(1).1 below itself");

  auto b = parse_table_oracle("1 <= !l.!l.1\n!l.!l.1 <= !l.1\n");
  auto s1 = ct("!(!l.!l.1).1");
  auto s2 = ct("!(1).1");
  o.require(syn_peer_leq(s1, s2, b), "table oracle: syntactic verdict false");
  auto w = falsify_set_leq(s1, s2, b, base, 3);
  o.require(w && *w == ct("?(!l.1).1"),
            "table oracle: witness " + (w ? print(*w) : std::string("none")));
  if (w) o.require(compliant(*w, s1, b) && !compliant(*w, s2, b), "table oracle: witness does not separate");

  auto e = empty_oracle();
  o.require(!syn_peer_leq(s, s, e), "vacuity: syntactic verdict true");
  o.require(!falsify_set_leq(s, s, e, base, 3), "vacuity: falsifier found a peer");
  o.require(!compliant(ct("?(1).1"), s, e) && !compliant(dual(s), s, e),
            "vacuity: a peer complies with !(1).1");
  if (o.pass) o.note << "empty-oracle irreflexivity, table-oracle witness " << print(*w) << ", vacuity reproduced";
}

void soundness_sampling(Outcome& o) {
  auto base = BaseOrder::standard();
  auto peer = peer_oracle(base);
  GenConfig cfg;
  cfg.max_depth = 3;
  cfg.seed = 311;
  auto pairs = generate_type_pairs(cfg, 300);
  int positive = 0, witnesses = 0, violations = 0;
  for (const auto& [s, t] : pairs) {
    auto a = encode(s), b = encode(t);
    bool syn = syn_peer_leq(a, b, peer, base);
    auto w = falsify_set_leq(a, b, peer, base, 3);
    positive += syn;
    if (w) {
      ++witnesses;
      bool certified = compliant(*w, a, peer, base) && !compliant(*w, b, peer, base);
      if (syn || !certified) {
        ++violations;
        o.note << "\n    " << print(a) << " vs " << print(b) << ": syn=" << syn
               << " witness=" << print(*w);
      }
    }
  }
  std::ostringstream head;
  head << positive << " syntactically related, " << witnesses << " refuted by witness, "
       << violations << " violations";
  o.note.str(head.str() + o.note.str());
  o.require(violations == 0, "");
}

void endpoint_checks(Outcome& o) {
  auto plus = ty("rec X.!X.end");
  auto minus = ty("?(rec X.!X.end).end");
  o.require(endpoints_dual(plus, minus, DualOp::Dual), "P with dual");
  o.require(!endpoints_dual(plus, minus, DualOp::StDual), "P with stdual");
  o.require(endpoints_dual(plus, minus, DualOp::Cplmt), "Q with cplmt");
  if (o.pass) o.note << "P: dual true, stdual false; Q: cplmt true, stdual false";
}

void algebraic_invariants(Outcome& o) {
  GenConfig cfg;
  cfg.seed = 9001;
  auto ts = generate_types(cfg, 1000);
  cfg.seed = 9002;
  auto extra = generate_types(cfg, 1000);
  int fails = 0;
  auto check = [&](bool ok, const std::string& what, const TypeTerm& t) {
    if (!ok) {
      if (fails < 5) o.note << "\n    " << what << ": " << print(t);
      ++fails;
    }
  };
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& t = ts[i];
    auto c = encode(t);
    check(stdual(stdual(t)) == t, "type stdual involution", t);
    check(stdual(stdual(c)) == c, "contract stdual involution", t);
    check(decode(c) == t && encode(decode(c)) == c, "encode/decode bijection", t);
    check(unfold(unfold(t)) == unfold(t) && unfold(unfold(c)) == unfold(c), "unfold idempotence", t);
    check(unfold(c) == encode(unfold(t)), "unfold commutes with encode", t);
    // Substitution commutes with encode on every rec body of t.
    for (const auto& sub : subterms(t)) {
      if (sub.kind() != Kind::Rec) continue;
      const auto& x = sub.name();
      auto body = sub.body();
      const auto& r = extra[i];
      check(encode(subst(body, x, r)) == subst(encode(body), encode_var(x), encode(r)),
            "encode(S[T/X]) = encode(S)[encode T/x]", t);
      check(encode(subst(body, x, sub)) == subst(encode(body), encode_var(x), encode(sub)),
            "encode commutes with unfolding step", t);
    }
  }
  o.note << "1000 terms, " << fails << " failures";
  o.require(fails == 0, "");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Outcome&)> run;
  };
  std::vector<Criterion> criteria{
      {"1 full abstraction on 500 random pairs", full_abstraction},
      {"2 worked subtyping examples", subtyping_examples},
      {"3 duality theorems on 500 random contracts", duality_theorems},
      {"4 duality counterexamples", counterexamples},
      {"5 oracle parametrisation pathologies", pathologies},
      {"6 syntactic vs set-based sampling on 300 pairs", soundness_sampling},
      {"7 endpoint duality checks", endpoint_checks},
      {"8 algebraic invariants on 1000 terms", algebraic_invariants},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << " exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  %s [%.2fs]: %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.note.str().c_str());
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
