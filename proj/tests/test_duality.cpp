#include <doctest.h>

#include "hosc/duality.hpp"
#include "hosc/encoding.hpp"
#include "hosc/generator.hpp"
#include "hosc/interaction.hpp"
#include "hosc/lts.hpp"
#include "hosc/subtyping.hpp"
#include "hosc/syntax.hpp"

using namespace hosc;

namespace {

ContractTerm ct(std::string_view s) { return parse_contract(s); }
TypeTerm ty(std::string_view s) { return parse_type(s); }

std::vector<ContractTerm> contracts(std::uint64_t seed, std::size_t n, bool closed_messages = false) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.closed_messages = closed_messages;
  return generate_contracts(cfg, n);
}

}  // namespace

TEST_CASE("standard dual") {
  CHECK(stdual(ct("rec x.?(x).1")) == ct("rec x.!(x).1"));
  CHECK(stdual(ct("1")) == ct("1"));
  CHECK(stdual(ct("&[?l:1]")) == ct("(+)[!l:1]"));
  CHECK(stdual(ct("?(?int.1).!real.1")) == ct("!(?int.1).?real.1"));
  CHECK(stdual(ty("&{a:?int.end}")) == ty("+{a:!int.end}"));
}

TEST_CASE("standard dual is an involution and commutes with encode") {
  for (const auto& c : contracts(81, 1000)) {
    CHECK(stdual(stdual(c)) == c);
    CHECK(stdual(c) == stdual_via_types(c));
    CHECK(stdual(c) == encode(stdual(decode(c))));
  }
}

TEST_CASE("inner substitution acts only on messages") {
  auto s = ct("!int.1");
  CHECK(inner_subst(ct("?(y).y"), "y", s) == ct("?(!int.1).y"));
  CHECK(inner_subst(ct("?(y).x"), "x", s) == ct("?(y).x"));
  CHECK(inner_subst(ct("rec y.?(y).x"), "y", s) == ct("rec y.?(y).x"));
  CHECK(inner_subst(ct("?(?(y).y).y"), "y", s) == ct("?(?(!int.1).!int.1).y"));
}

TEST_CASE("m-closure examples") {
  auto a = ct("rec x.?(x).1");
  CHECK(mcl(a) == ContractTerm::rec("x", ContractTerm::in_msg(a, ContractTerm::unit())));
  auto s = ct("rec x.rec y.?(y).x");
  auto inner = ContractTerm::rec("y", ContractTerm::in_msg(ContractTerm::var("y"), s));
  CHECK(mcl(s) ==
        ContractTerm::rec("x", ContractTerm::rec("y", ContractTerm::in_msg(inner, ContractTerm::var("x")))));
  CHECK(mcl(ct("1")) == ct("1"));
  CHECK_THROWS_AS(mclo(ct("?(x).1"), {}), InvalidTerm);
  Substitution<ContractLang> sub{{"x", ct("1")}};
  CHECK(mclo(ct("?(x).1"), sub) == ct("?(1).1"));
}

TEST_CASE("m-closure properties") {
  for (const auto& c : contracts(82, 500)) {
    auto m = mcl(c);
    CHECK(is_m_closed(m));
    CHECK(m.is_closed());
    CHECK(m.is_guarded());
    CHECK(bisimilar(c, m));
    CHECK(mcl(m) == m);
  }
  for (const auto& c : contracts(83, 300, true)) CHECK(mcl(c) == c);
}

TEST_CASE("dual") {
  CHECK(dual(ct("rec x.?(x).1")) == ct("rec x.!(rec x.?(x).1).1"));
  CHECK(dual(ct("1")) == ct("1"));
  CHECK(dual(ct("?int.1")) == ct("!int.1"));
  CHECK_THROWS_AS(dual(ct("?(x).1")), InvalidTerm);
  CHECK_THROWS_AS(dual(ct("rec x.x")), InvalidTerm);
}

TEST_CASE("dual is a compliant partner") {
  auto peer = peer_oracle();
  for (const auto& c : contracts(84, 500)) {
    CHECK(compliant(c, dual(c), peer));
    CHECK(is_m_closed(dual(c)));
  }
  for (const auto& c : contracts(85, 300, true)) CHECK(compliant(c, stdual(c), peer));
}

TEST_CASE("complement") {
  auto s = ct("rec x.rec y.?(y).x");
  auto c = cplmt(s);
  CHECK(c == ct("rec x.rec y.!(rec y.?(y).x).x"));
  CHECK_FALSE(is_m_closed(c));
  CHECK_FALSE(compliant(s, c, peer_oracle()));
  CHECK(cplmt(ct("1")) == ct("1"));
  CHECK(cplmt(ct("?(y).1")) == ct("!(y).1"));
  CHECK(cplmt(ct("rec x.!(x).1")) == ct("rec x.?(rec x.!(x).1).1"));
}

TEST_CASE("operator names") {
  for (auto d : {DualOp::StDual, DualOp::Dual, DualOp::Cplmt})
    CHECK(dual_op_from_string(to_string(d)) == d);
  CHECK_THROWS(dual_op_from_string("bogus"));
  auto s = ct("?int.1");
  CHECK(apply_dual(DualOp::StDual, s) == stdual(s));
  CHECK(apply_dual(DualOp::Dual, s) == dual(s));
  CHECK(apply_dual(DualOp::Cplmt, s) == cplmt(s));
}

TEST_CASE("endpoint checks") {
  auto plus = ty("rec X.!X.end");
  auto minus = ty("?(rec X.!X.end).end");
  CHECK(endpoints_dual(plus, minus, DualOp::Dual));
  CHECK_FALSE(endpoints_dual(plus, minus, DualOp::StDual));
  CHECK(endpoints_dual(plus, minus, DualOp::Cplmt));
  CHECK(endpoints_dual(ty("end"), ty("end"), DualOp::StDual));
  CHECK(endpoints_dual(ty("?int.end"), ty("!int.end"), DualOp::StDual));
  CHECK_FALSE(endpoints_dual(ty("?int.end"), ty("!real.end"), DualOp::StDual));
}

TEST_CASE("endpoint check agrees with subtyping of the decoded dual") {
  GenConfig cfg;
  cfg.seed = 86;
  for (const auto& t : generate_types(cfg, 300)) {
    auto d = decode(dual(encode(t)));
    CHECK(endpoints_dual(t, d, DualOp::Dual));
    CHECK(endpoints_dual(t, unfold(d), DualOp::Dual));
    CHECK(endpoints_dual(t, stdual(t), DualOp::StDual));
  }
}

TEST_CASE("reasonable oracles") {
  auto bad = parse_table_oracle("!(1).1 <= ?(1).1\n");
  auto v = is_reasonable_refutation(bad, {ct("!(1).1"), ct("?(1).1")});
  REQUIRE(v);
  CHECK(v->clause == "polarity");
  CHECK_FALSE(is_reasonable_refutation(empty_oracle(), contracts(87, 30)));
  auto peer_samples = contracts(88, 200);
  peer_samples.resize(200);
  // Pairs of related samples are rare at random, so add unfoldings and duals.
  std::vector<ContractTerm> xs;
  for (std::size_t i = 0; i < 60; ++i) {
    xs.push_back(peer_samples[i]);
    xs.push_back(unfold(peer_samples[i]));
    xs.push_back(mcl(peer_samples[i]));
  }
  CHECK_FALSE(is_reasonable_refutation(peer_oracle(), xs));
  CHECK_FALSE(is_reasonable_refutation(peer_oracle(), peer_samples));
}
