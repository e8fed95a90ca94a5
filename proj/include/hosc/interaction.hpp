#pragma once

// Two-party interaction parametrised by a relation B on contracts, and the
// B-peer compliance check.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hosc/lts.hpp"
#include "hosc/term.hpp"

namespace hosc {

struct OracleProps {
  bool reflexive = false;
  bool transitive = false;
  bool symmetric = false;
  bool preorder() const { return reflexive && transitive; }
};

// A decision procedure for B. Answers are memoised per pair; copies share
// the cache, which is safe to use from several threads.
class BOracle {
 public:
  using Decide = std::function<bool(const ContractTerm&, const ContractTerm&)>;

  BOracle(std::string name, Decide decide, OracleProps props);

  bool operator()(const ContractTerm& a, const ContractTerm& b) const;
  const std::string& name() const { return name_; }
  const OracleProps& props() const { return props_; }

 private:
  struct Cache;
  std::string name_;
  Decide decide_;
  OracleProps props_;
  std::shared_ptr<Cache> cache_;
};

using ContractPair = std::pair<ContractTerm, ContractTerm>;

BOracle empty_oracle();
BOracle identity_oracle();
// The relation given by an explicit finite list of pairs.
BOracle table_oracle(std::vector<ContractPair> pairs);
// One pair per line, `lhs <= rhs`, in contract syntax; `#` starts a comment.
// Throws ParseError on malformed lines.
BOracle parse_table_oracle(std::string_view text, const BaseOrder& base = BaseOrder::standard());
BOracle load_table_oracle(const std::string& path, const BaseOrder& base = BaseOrder::standard());
BOracle peer_oracle(const BaseOrder& base = BaseOrder::standard());
BOracle union_oracle(const std::vector<BOracle>& parts);

// `empty`, `identity`, `peer` or `table:<path>`. Throws std::invalid_argument.
BOracle oracle_from_spec(std::string_view spec, const BaseOrder& base = BaseOrder::standard());
std::vector<std::string> builtin_oracle_names();

// Looks for a violation of the declared flags among the given contracts.
// Returns a description of the first violation found.
std::optional<std::string> refute_oracle_props(const BOracle& b,
                                               const std::vector<ContractTerm>& samples);

bool interacts(const Action& a1, const Action& a2, const BOracle& b,
               const BaseOrder& base = BaseOrder::standard());

struct Config {
  ContractTerm left;
  ContractTerm right;
  friend bool operator==(const Config& x, const Config& y) {
    return x.left == y.left && x.right == y.right;
  }
};

// Successors by independent internal moves of either side or a synchronisation.
std::vector<Config> config_step(const Config& c, const BOracle& b,
                                const BaseOrder& base = BaseOrder::standard());

// Every stable configuration reachable from (rho, sigma) has both sides able
// to perform `ok`. Divergent interactions are accepted.
bool compliant(const ContractTerm& rho, const ContractTerm& sigma, const BOracle& b,
               const BaseOrder& base = BaseOrder::standard(), std::size_t cap = kDefaultStateCap);

}  // namespace hosc
