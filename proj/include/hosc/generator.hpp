#pragma once

// Seeded random terms and the corpus-level agreement check between type
// subtyping and the peer preorder on encoded types.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hosc/term.hpp"

namespace hosc {

struct GenConfig {
  int max_depth = 4;
  std::vector<std::string> labels{"a", "b", "c"};
  std::vector<std::string> base_types{"int", "real"};
  double p_higher_order = 0.3;
  double p_rec = 0.3;
  std::uint64_t seed = 1;
  // Only closed messages, so generated contracts are m-closed.
  bool closed_messages = false;
};

// Closed, guarded terms; the same configuration always yields the same list.
std::vector<TypeTerm> generate_types(const GenConfig& cfg, std::size_t n);
std::vector<ContractTerm> generate_contracts(const GenConfig& cfg, std::size_t n);

// Pairs mixing independent draws with (S, T) where T is obtained from S by
// widening/narrowing steps that keep S <= T, and the reverse of such pairs.
std::vector<std::pair<TypeTerm, TypeTerm>> generate_type_pairs(const GenConfig& cfg,
                                                               std::size_t n);

struct Disagreement {
  TypeTerm left;
  TypeTerm right;
  bool subtype_verdict;
  bool peer_verdict;
  bool decoded_verdict;
};

struct AgreementReport {
  std::size_t n_pairs = 0;
  std::size_t n_agree = 0;
  std::size_t n_positive = 0;  // pairs on which every decider answered true
  std::vector<Disagreement> disagreements;
};

// For each pair: subtype(S, T), peer_leq(encode S, encode T), and
// peer_leq_via_subtyping(encode S, encode T) must coincide.
AgreementReport fullabs_check(const GenConfig& cfg, std::size_t n_pairs, unsigned jobs = 1);

}  // namespace hosc
