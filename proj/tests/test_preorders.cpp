#include <doctest.h>

#include "hosc/encoding.hpp"
#include "hosc/generator.hpp"
#include "hosc/preorders.hpp"
#include "hosc/subtyping.hpp"
#include "hosc/syntax.hpp"

using namespace hosc;

namespace {

ContractTerm ct(std::string_view s) { return parse_contract(s); }
TypeTerm ty(std::string_view s) { return parse_type(s); }

const char* kTable39 = "1 <= !l.!l.1\n!l.!l.1 <= !l.1\n";

std::vector<std::pair<ContractTerm, ContractTerm>> contract_pairs(std::uint64_t seed, std::size_t n,
                                                                  int depth) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.max_depth = depth;
  std::vector<std::pair<ContractTerm, ContractTerm>> out;
  for (const auto& [s, t] : generate_type_pairs(cfg, n)) out.emplace_back(encode(s), encode(t));
  return out;
}

}  // namespace

TEST_CASE("syntactic preorder examples") {
  auto t = parse_table_oracle(kTable39);
  CHECK(syn_peer_leq(ct("!(!l.!l.1).1"), ct("!(1).1"), t));
  CHECK_FALSE(syn_peer_leq(ct("!(1).1"), ct("!(1).1"), empty_oracle()));
  CHECK(syn_peer_leq(ct("&[?a:1]"), ct("&[?a:1, ?b:1]"), identity_oracle()));
  CHECK_FALSE(syn_peer_leq(ct("&[?a:1, ?b:1]"), ct("&[?a:1]"), identity_oracle()));
  CHECK(syn_peer_leq(ct("(+)[!a:1, !b:1]"), ct("!a.1"), identity_oracle()));
  // Rec-free terms without messages never consult the oracle.
  CHECK(syn_peer_leq(ct("?int.1"), ct("?real.1"), empty_oracle()));
  CHECK(syn_peer_leq(ct("!real.1"), ct("!int.1"), empty_oracle()));
  CHECK_FALSE(syn_peer_leq(ct("!int.1"), ct("!real.1"), empty_oracle()));
}

TEST_CASE("peer preorder examples") {
  CHECK(peer_leq(encode(ty("rec X.?X.X")), encode(ty("rec Y.?Y.?Y.Y"))));
  CHECK_FALSE(peer_leq(ct("?(1).1"), ct("!(1).1")));
  CHECK(peer_equiv(ct("rec x.?(x).1"), unfold(ct("rec x.?(x).1"))));
  CHECK_FALSE(peer_equiv(ct("1"), ct("!l.1")));
  CHECK(peer_leq(ct("?(?int.1).1"), ct("?(?real.1).1")));
  CHECK(peer_leq(ct("!(?real.1).1"), ct("!(?int.1).1")));
  CHECK_FALSE(peer_leq(ct("!(?int.1).1"), ct("!(?real.1).1")));
}

TEST_CASE("peer preorder is a fixed point of the syntactic functional") {
  auto peer = peer_oracle();
  for (const auto& [a, b] : contract_pairs(71, 400, 4)) {
    bool v = peer_leq(a, b);
    CHECK(v == syn_peer_leq(a, b, peer));
    CHECK(v == peer_leq_via_subtyping(a, b));
  }
}

TEST_CASE("peer equivalence matches type equivalence") {
  GenConfig cfg;
  cfg.seed = 72;
  for (const auto& [s, t] : generate_type_pairs(cfg, 300)) {
    CHECK(peer_equiv(encode(s), encode(t)) == type_equiv(s, t));
    CHECK(peer_equiv(encode(s), encode(unfold(s))));
  }
}

TEST_CASE("syntactic preorder is monotone in the oracle") {
  auto e = empty_oracle(), id = identity_oracle(), peer = peer_oracle();
  int grew = 0;
  for (const auto& [a, b] : contract_pairs(73, 300, 4)) {
    bool ve = syn_peer_leq(a, b, e), vi = syn_peer_leq(a, b, id), vp = syn_peer_leq(a, b, peer);
    if (ve) CHECK(vi);
    if (vi) CHECK(vp);
    grew += vp && !ve;
  }
  CHECK(grew > 0);
}

TEST_CASE("falsifier on the worked examples") {
  auto base = BaseOrder::standard();
  auto t = parse_table_oracle(kTable39);
  auto w = falsify_set_leq(ct("!(!l.!l.1).1"), ct("!(1).1"), t, base, 3);
  REQUIRE(w);
  CHECK(*w == ct("?(!l.1).1"));
  CHECK_FALSE(falsify_set_leq(ct("!(1).1"), ct("!(1).1"), empty_oracle(), base, 3));
  CHECK_FALSE(falsify_set_leq(ct("1"), ct("1"), identity_oracle(), base, 3));
  CHECK(falsify_set_leq(ct("1"), ct("!l.1"), identity_oracle(), base, 1));
  CHECK_THROWS_AS(falsify_set_leq(ct("1"), ct("1"), identity_oracle(), base, 0),
                  std::invalid_argument);
}

TEST_CASE("syntactic and set-based preorders agree on transitive oracles") {
  auto base = BaseOrder::standard();
  for (const auto* name : {"identity", "peer"}) {
    auto b = oracle_from_spec(name);
    REQUIRE(b.props().transitive);
    int refuted = 0;
    for (const auto& [x, y] : contract_pairs(74, 150, 3)) {
      bool syn = syn_peer_leq(x, y, b, base);
      auto w = falsify_set_leq(x, y, b, base, 3);
      if (syn) CHECK_FALSE(w);
      if (w) {
        ++refuted;
        CHECK(compliant(*w, x, b, base));
        CHECK_FALSE(compliant(*w, y, b, base));
      }
    }
    CHECK(refuted > 0);
  }
}
